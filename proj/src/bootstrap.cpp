#include "rcgen/bootstrap.hpp"

#include <algorithm>
#include <atomic>
#include <istream>
#include <ostream>

#include "rcgen/errors.hpp"
#include "rcgen/json_codec.hpp"
#include "rcgen/json_stream.hpp"
#include "rcgen/parallel.hpp"
#include "rcgen/taskgen.hpp"

namespace rcgen {

using nlohmann::json;

std::string describe_prompt(const TemplateBank& bank, const std::string& coord_text) {
    return instantiate_template(bank.bank(Task::ground_caption).front(),
                                {{"object", coord_text}});
}

std::string ground_prompt(const TemplateBank& bank, const std::string& description) {
    return instantiate_template(bank.bank(Task::grounding).front(), {{"category", description}});
}

std::string PromptModelClient::describe(const ImageRecord& image, const std::string& coord_text) {
    return complete(image, describe_prompt(*bank_, coord_text));
}

std::string PromptModelClient::ground(const ImageRecord& image, const std::string& description) {
    return complete(image, ground_prompt(*bank_, description));
}

std::string TranscriptClient::key(const std::string& image_id, const std::string& prompt) {
    return image_id + '\x1f' + prompt;
}

std::shared_ptr<const TranscriptClient::Script> TranscriptClient::load(std::istream& in) {
    auto script = std::make_shared<Script>();
    for_each_record(in, [&](json record, size_t offset) {
        try {
            Entry entry;
            entry.response = record.value("response", "");
            entry.fail = record.value("fail", false);
            (*script)[key(record.at("image_id").get<std::string>(),
                          record.at("prompt").get<std::string>())] = std::move(entry);
        } catch (const json::exception& ex) {
            throw ParseError(std::string("transcript record: ") + ex.what(), offset);
        }
    });
    return script;
}

std::string TranscriptClient::complete(const ImageRecord& image, const std::string& prompt) {
    auto it = script_->find(key(image.image_id, prompt));
    if (it == script_->end())
        throw ClientError("no transcript entry for image " + image.image_id + ", prompt: " + prompt);
    if (it->second.fail) throw ClientError("scripted failure for image " + image.image_id);
    return it->second.response;
}

namespace {

template <typename Fn>
auto with_retries(Fn&& fn, int retry_limit) {
    for (int attempt = 0;; ++attempt) {
        try {
            return fn();
        } catch (const ClientError&) {
            if (attempt >= retry_limit) throw;
        }
    }
}

}  // namespace

std::string describe_object(ModelClient& client, const ImageRecord& image, const ObjectAnn& obj,
                            int retry_limit) {
    auto ct = coord_text(obj.box, image);
    if (!ct) throw ClientError("object box not renderable: " + obj.object_id);
    std::string raw =
        with_retries([&] { return client.describe(image, *ct); }, retry_limit);
    return strip_coords(raw);
}

std::optional<NormBox> ground_description(ModelClient& client, const ImageRecord& image,
                                          const std::string& description, int retry_limit) {
    std::string raw =
        with_retries([&] { return client.ground(image, description); }, retry_limit);
    auto scan = parse_coords(raw);
    if (scan.boxes.empty()) return std::nullopt;
    return scan.boxes.front();  // a degenerate point answer scores IoU 0 downstream
}

bool self_consistent_filter(const NormBox& gt, const std::optional<NormBox>& predicted,
                            double lambda) {
    return predicted.has_value() && iou(gt, *predicted) >= lambda;
}

BootstrapOutput run_bootstrap(const ClientFactory& make_client, const BootstrapFilterResult& input,
                              const BootstrapConfig& config) {
    struct Item {
        const ImageBundle* bundle;
        const ObjectAnn* obj;
    };
    std::vector<Item> items;
    for (size_t i = 0; i < input.bundles.size(); ++i) {
        const ImageBundle& bundle = input.bundles[i];
        for (const std::string& id : input.candidates[i])
            for (const ObjectAnn& obj : bundle.objects)
                if (obj.object_id == id) items.push_back({&bundle, &obj});
    }
    // canonical (image_id, object_id) order; the emitted sequence follows it
    // no matter how many workers ran
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
        if (a.bundle->image.image_id != b.bundle->image.image_id)
            return a.bundle->image.image_id < b.bundle->image.image_id;
        return a.obj->object_id < b.obj->object_id;
    });

    int threads = effective_threads(std::max(1, config.max_inflight_requests));
    std::vector<std::unique_ptr<ModelClient>> clients;
    clients.reserve(threads);
    for (int i = 0; i < threads; ++i) clients.push_back(make_client());

    std::vector<std::optional<ReferringExpression>> slots(items.size());
    std::atomic<int64_t> failures{0};
    std::atomic<int64_t> processed{0};
    std::atomic<bool> abort_flag{false};

    parallel_for(items.size(), threads, [&](size_t i) {
        if (abort_flag.load(std::memory_order_relaxed)) return;
        const Item& item = items[i];
        ModelClient& client = *clients[static_cast<size_t>(worker_index()) % clients.size()];

        auto fail = [&] {
            int64_t f = failures.fetch_add(1) + 1;
            int64_t done = processed.fetch_add(1) + 1;
            if (done >= 20 && static_cast<double>(f) > config.abort_failure_rate * done)
                abort_flag.store(true);
        };

        std::string description;
        try {
            description = describe_object(client, item.bundle->image, *item.obj,
                                          config.retry_limit);
        } catch (const ClientError&) {
            fail();
            return;
        }

        ReferringExpression rec;
        rec.image_id = item.bundle->image.image_id;
        rec.box = item.obj->box;
        rec.text = description;
        rec.source = ExprSource::bootstrapped;

        if (description.empty()) {
            slots[i] = std::move(rec);  // counted as filtered; nothing to re-ground
            processed.fetch_add(1);
            return;
        }

        std::optional<NormBox> predicted;
        try {
            predicted =
                ground_description(client, item.bundle->image, description, config.retry_limit);
        } catch (const ClientError&) {
            fail();
            return;
        }

        if (predicted) {
            auto gt = normalize(item.obj->box, item.bundle->image.width, item.bundle->image.height);
            double v = gt ? iou(*gt, *predicted) : 0.0;
            rec.predicted_box =
                PixelBox{predicted->x_min * item.bundle->image.width,
                         predicted->y_min * item.bundle->image.height,
                         predicted->x_max * item.bundle->image.width,
                         predicted->y_max * item.bundle->image.height};
            rec.iou = v;
            rec.retained = v >= config.lambda;
        }
        slots[i] = std::move(rec);
        processed.fetch_add(1);
    });

    BootstrapOutput out;
    int64_t done = processed.load(), failed = failures.load();
    out.aborted = abort_flag.load() ||
                  (done > 0 && static_cast<double>(failed) > config.abort_failure_rate * done);
    for (auto& slot : slots)
        if (slot) out.expressions.push_back(std::move(*slot));
    out.report = report_from_records(out.expressions, config.lambda);
    out.report.request_failures = failed;
    return out;
}

BootstrapReport report_from_records(std::span<const ReferringExpression> records, double lambda) {
    BootstrapReport report;
    double iou_sum = 0;
    for (const ReferringExpression& rec : records) {
        report.generated += 1;
        if (rec.iou && *rec.iou >= lambda && !rec.text.empty()) {
            report.retained += 1;
            iou_sum += *rec.iou;
        } else if (!rec.iou && !rec.text.empty()) {
            report.no_box_parsed += 1;
        } else {
            report.filtered += 1;
        }
    }
    if (report.retained > 0) report.mean_iou_retained = iou_sum / report.retained;
    return report;
}

BootstrapReport refilter(std::vector<ReferringExpression>& records, double lambda) {
    for (ReferringExpression& rec : records)
        rec.retained = rec.iou.has_value() && !rec.text.empty() && *rec.iou >= lambda;
    return report_from_records(records, lambda);
}

void write_expressions(std::ostream& out, std::span<const ReferringExpression> records) {
    for (const ReferringExpression& rec : records) out << json(rec).dump() << '\n';
}

std::vector<ReferringExpression> read_expressions(std::istream& in) {
    std::vector<ReferringExpression> out;
    for_each_record(in, [&](json record, size_t offset) {
        try {
            out.push_back(record.get<ReferringExpression>());
        } catch (const json::exception& ex) {
            throw ParseError(std::string("expression record: ") + ex.what(), offset);
        }
    });
    return out;
}

}  // namespace rcgen
