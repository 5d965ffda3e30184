#include "rcgen/eval.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <istream>
#include <sstream>
#include <unordered_map>

#include "rcgen/errors.hpp"
#include "rcgen/json_codec.hpp"
#include "rcgen/json_stream.hpp"
#include "rcgen/parallel.hpp"

namespace rcgen {

using nlohmann::json;

const char* to_string(EvalTask t) {
    switch (t) {
        case EvalTask::grounding: return "grounding";
        case EvalTask::vqa: return "vqa";
        case EvalTask::counting: return "counting";
    }
    return "?";
}

std::optional<EvalTask> eval_task_from_string(std::string_view s) {
    if (s == "grounding") return EvalTask::grounding;
    if (s == "vqa") return EvalTask::vqa;
    if (s == "counting") return EvalTask::counting;
    return std::nullopt;
}

std::string normalize_answer(std::string_view raw) {
    std::string spaced;
    spaced.reserve(raw.size());
    for (char c : raw) {
        unsigned char uc = static_cast<unsigned char>(c);
        if (std::isalnum(uc))
            spaced += static_cast<char>(std::tolower(uc));
        else
            spaced += ' ';
    }
    std::istringstream in(spaced);
    std::string word, out;
    while (in >> word) {
        if (word == "a" || word == "an" || word == "the") continue;
        if (!out.empty()) out += ' ';
        out += word;
    }
    return out;
}

std::optional<int64_t> first_integer(std::string_view text) {
    size_t i = 0;
    while (i < text.size() && !std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == text.size()) return std::nullopt;
    int64_t value = 0;
    size_t digits = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])) && digits < 18) {
        value = value * 10 + (text[i] - '0');
        ++i;
        ++digits;
    }
    return value;
}

namespace {

EvalResult score_items(std::span<const EvalItem> items, std::string metric_name, int threads,
                       const std::function<double(const EvalItem&)>& score) {
    EvalResult result;
    result.metric_name = std::move(metric_name);
    result.item_count = static_cast<int64_t>(items.size());
    result.per_item.resize(items.size());
    parallel_for(items.size(), effective_threads(threads), [&](size_t i) {
        result.per_item[i] = {items[i].item_id, score(items[i])};
    });
    double sum = 0;
    for (const auto& [id, s] : result.per_item) sum += s;
    result.value = items.empty() ? 0.0 : sum / static_cast<double>(items.size()) * 100.0;
    return result;
}

}  // namespace

EvalResult eval_grounding(std::span<const EvalItem> items, double iou_threshold, int threads) {
    return score_items(items, "Accuracy", threads, [iou_threshold](const EvalItem& item) {
        auto scan = parse_coords(item.prediction);
        if (scan.boxes.empty()) return 0.0;
        return iou(item.gt_box, scan.boxes.front()) >= iou_threshold ? 1.0 : 0.0;
    });
}

EvalResult eval_vqa(std::span<const EvalItem> items, int threads) {
    return score_items(items, "VQA Score", threads, [](const EvalItem& item) {
        std::string pred = normalize_answer(item.prediction);
        int matches = 0;
        for (const std::string& ref : item.gt_answers)
            if (normalize_answer(ref) == pred) ++matches;
        return std::min(1.0, matches / 3.0);
    });
}

EvalResult eval_counting(std::span<const EvalItem> items, int threads) {
    return score_items(items, "Accuracy", threads, [](const EvalItem& item) {
        auto n = first_integer(item.prediction);
        return n && *n == item.gt_count ? 1.0 : 0.0;
    });
}

std::vector<EvalItem> read_eval_items(std::istream& in) {
    std::vector<EvalItem> items;
    size_t record_no = 0;
    for_each_record(in, [&](json record, size_t offset) {
        ++record_no;
        try {
            EvalItem item;
            item.item_id = record.at("item_id").get<std::string>();
            auto task = eval_task_from_string(record.at("task").get<std::string>());
            if (!task) throw ParseError("unknown eval task", offset, record_no);
            item.task = *task;
            const json& gt = record.at("ground_truth");
            switch (item.task) {
                case EvalTask::grounding: item.gt_box = gt.get<NormBox>(); break;
                case EvalTask::vqa: item.gt_answers = gt.get<std::vector<std::string>>(); break;
                case EvalTask::counting: item.gt_count = gt.get<int64_t>(); break;
            }
            item.prediction = record.value("prediction", "");
            items.push_back(std::move(item));
        } catch (const json::exception& ex) {
            throw ParseError(std::string("eval item: ") + ex.what(), offset, record_no);
        }
    });
    return items;
}

void apply_predictions(std::vector<EvalItem>& items, std::istream& in) {
    std::unordered_map<std::string, std::string> by_id;
    for_each_record(in, [&](json record, size_t offset) {
        try {
            by_id[record.at("item_id").get<std::string>()] =
                record.at("prediction").get<std::string>();
        } catch (const json::exception& ex) {
            throw ParseError(std::string("prediction record: ") + ex.what(), offset);
        }
    });
    for (EvalItem& item : items) {
        auto it = by_id.find(item.item_id);
        if (it != by_id.end()) item.prediction = it->second;
    }
}

}  // namespace rcgen
