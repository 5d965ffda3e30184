// rcgen: converts scene-graph and detection annotations into
// referential-comprehension instruction-tuning dialogues, runs the
// describe/re-ground bootstrap filter, mixes corpora, and scores transcripts.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rcgen/assemble.hpp"
#include "rcgen/bootstrap.hpp"
#include "rcgen/errors.hpp"
#include "rcgen/eval.hpp"
#include "rcgen/ingest.hpp"
#include "rcgen/json_codec.hpp"
#include "rcgen/json_stream.hpp"
#include "rcgen/parallel.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace rcgen;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitInput = 3;
constexpr int kExitClient = 4;

std::ifstream open_input(const std::string& path) {
    if (!fs::exists(path)) throw ConfigError("input path does not exist: " + path);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open input: " + path);
    return in;
}

std::ofstream open_output(const std::string& path) {
    if (auto parent = fs::path(path).parent_path(); !parent.empty()) fs::create_directories(parent);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output for writing: " + path);
    return out;
}

void write_json_doc(const std::string& path, const json& doc) {
    auto out = open_output(path);
    out << doc.dump(2) << '\n';
}

json stats_doc(const CorpusStats& s) {
    return json{{"image_count", s.image_count},
                {"object_count", s.object_count},
                {"relation_count", s.relation_count},
                {"region_count", s.region_count},
                {"images_dropped_by_object_cap", s.images_dropped_by_object_cap},
                {"objects_dropped_by_area", s.objects_dropped_by_area},
                {"images_dropped_invalid", s.images_dropped_invalid},
                {"objects_dropped_invalid", s.objects_dropped_invalid},
                {"relations_dropped_invalid", s.relations_dropped_invalid},
                {"regions_dropped_invalid", s.regions_dropped_invalid}};
}

json report_doc(const BootstrapReport& r, double lambda) {
    return json{{"generated", r.generated},
                {"retained", r.retained},
                {"filtered", r.filtered},
                {"no_box_parsed", r.no_box_parsed},
                {"request_failures", r.request_failures},
                {"mean_iou_retained", r.mean_iou_retained},
                {"lambda", lambda}};
}

const TemplateBank& bank_for(const std::string& override_path, TemplateBank& storage) {
    if (override_path.empty()) return TemplateBank::builtin();
    storage = TemplateBank::load_file(override_path);
    return storage;
}

std::vector<Task> parse_task_list(const std::string& csv) {
    std::vector<Task> tasks;
    if (csv.empty()) {
        tasks = {Task::relation_qa, Task::relation_detect, Task::spatial,  Task::counting,
                 Task::detection,   Task::grounding,       Task::ground_caption};
        return tasks;
    }
    std::string token;
    std::istringstream in(csv);
    while (std::getline(in, token, ',')) {
        auto t = task_from_string(trim(token));
        if (!t) throw ConfigError("unknown task name: " + token);
        tasks.push_back(*t);
    }
    return tasks;
}

// --- subcommand configs ------------------------------------------------

struct IngestArgs {
    std::string objects, relations, regions, detection;
    std::string out_bundles, out_stats;
};

int cmd_ingest(const IngestArgs& a) {
    if (a.detection.empty() == a.objects.empty())
        throw ConfigError("ingest needs exactly one of --objects or --detection");
    // check every referenced path before any write
    for (const std::string* p : {&a.objects, &a.relations, &a.regions, &a.detection})
        if (!p->empty() && !fs::exists(*p)) throw ConfigError("input path does not exist: " + *p);

    LoadResult result;
    if (!a.detection.empty()) {
        auto in = open_input(a.detection);
        result = load_detection(in);
    } else {
        auto objects = open_input(a.objects);
        std::optional<std::ifstream> relations, regions;
        if (!a.relations.empty()) relations.emplace(open_input(a.relations));
        if (!a.regions.empty()) regions.emplace(open_input(a.regions));
        result = load_scene_graph(objects, relations ? &*relations : nullptr,
                                  regions ? &*regions : nullptr);
    }
    {
        auto out = open_output(a.out_bundles);
        write_bundles(out, result.bundles);
    }
    write_json_doc(a.out_stats, stats_doc(result.stats));
    std::cout << "ingested " << result.stats.image_count << " images, "
              << result.stats.object_count << " objects\n";
    return 0;
}

struct BootstrapArgs {
    std::string bundles, out, report;
    std::string transcript, endpoint;
    BootstrapConfig config;
    std::string templates;
    int threads = 0;  // 0: use max_inflight
};

int cmd_bootstrap(const BootstrapArgs& a) {
    if (a.transcript.empty() == a.endpoint.empty())
        throw ConfigError("bootstrap needs exactly one of --transcript or --endpoint");
    for (const std::string* p : {&a.bundles, &a.transcript, &a.templates})
        if (!p->empty() && !fs::exists(*p)) throw ConfigError("input path does not exist: " + *p);
    TemplateBank storage;
    const TemplateBank& bank = bank_for(a.templates, storage);

    auto in = open_input(a.bundles);
    auto bundles = read_bundles(in);
    auto filtered =
        filter_for_bootstrap(std::move(bundles), a.config.max_objects_per_image,
                             a.config.min_object_area);

    ClientFactory factory;
    if (!a.transcript.empty()) {
        auto tin = open_input(a.transcript);
        auto script = TranscriptClient::load(tin);
        factory = [&bank, script] { return std::make_unique<TranscriptClient>(bank, script); };
    } else {
        std::string token;
        if (const char* env = std::getenv("RCGEN_API_TOKEN")) token = env;
        std::string endpoint = a.endpoint;
        double timeout = a.config.request_timeout_s;
        factory = [&bank, endpoint, timeout, token] {
            return std::make_unique<HttpModelClient>(bank, endpoint, timeout, token);
        };
    }

    BootstrapConfig config = a.config;
    if (a.threads > 0) config.max_inflight_requests = a.threads;
    auto output = run_bootstrap(factory, filtered, config);
    if (output.aborted) {
        std::cerr << "bootstrap aborted: failure rate exceeded "
                  << config.abort_failure_rate << " (" << output.report.request_failures
                  << " failures)\n";
        return kExitClient;
    }
    {
        auto out = open_output(a.out);
        write_expressions(out, output.expressions);
    }
    write_json_doc(a.report, report_doc(output.report, config.lambda));
    std::cout << "generated " << output.report.generated << ", retained "
              << output.report.retained << "\n";
    return 0;
}

struct RefilterArgs {
    std::string in, out, report;
    double lambda = 0.5;
};

int cmd_refilter(const RefilterArgs& a) {
    auto in = open_input(a.in);
    auto records = read_expressions(in);
    auto report = refilter(records, a.lambda);
    {
        auto out = open_output(a.out);
        write_expressions(out, records);
    }
    if (!a.report.empty()) write_json_doc(a.report, report_doc(report, a.lambda));
    std::cout << "retained " << report.retained << " of " << report.generated << "\n";
    return 0;
}

struct GenerateArgs {
    std::vector<std::string> sources;      // name=path of bundle stores
    std::vector<std::string> vqa_sources;  // name=path of multichoice QA records
    std::vector<std::string> weights;      // name=weight
    std::string refexps;
    std::string tasks_csv;
    std::string templates;
    std::string out, manifest;
    int64_t epoch_size = 0;
    uint64_t seed = 0;
    int threads = 1;
    int max_objects = 15;
};

std::pair<std::string, std::string> split_kv(const std::string& arg, const char* what) {
    auto eq = arg.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == arg.size())
        throw ConfigError(std::string(what) + " must look like name=value, got: " + arg);
    std::string name = arg.substr(0, eq);
    if (name.find(':') != std::string::npos)
        throw ConfigError("source names must not contain ':': " + name);
    return {name, arg.substr(eq + 1)};
}

int cmd_generate(const GenerateArgs& a) {
    if (a.sources.empty() && a.vqa_sources.empty())
        throw ConfigError("generate needs at least one --source or --vqa");
    for (const std::vector<std::string>* list : {&a.sources, &a.vqa_sources})
        for (const std::string& s : *list)
            if (auto path = split_kv(s, "--source").second; !fs::exists(path))
                throw ConfigError("input path does not exist: " + path);
    if (!a.refexps.empty() && !fs::exists(a.refexps))
        throw ConfigError("input path does not exist: " + a.refexps);
    TemplateBank storage;
    const TemplateBank& bank = bank_for(a.templates, storage);
    std::vector<Task> allowed = parse_task_list(a.tasks_csv);

    std::map<std::string, double> weight_of;
    for (const std::string& w : a.weights) {
        auto [name, value] = split_kv(w, "--weight");
        weight_of[name] = std::stod(value);
    }

    // retained expressions, grouped by image
    std::map<std::string, std::vector<ReferringExpression>> expr_by_image;
    if (!a.refexps.empty()) {
        auto in = open_input(a.refexps);
        for (auto& e : read_expressions(in))
            if (e.retained) expr_by_image[e.image_id].push_back(std::move(e));
    }

    std::vector<SourceStream> streams;
    MixSpec spec;
    spec.seed = a.seed;
    spec.epoch_size = a.epoch_size;

    for (const std::string& s : a.sources) {
        auto [name, path] = split_kv(s, "--source");
        auto in = open_input(path);
        auto bundles = read_bundles(in);
        auto filtered = filter_for_bootstrap(std::move(bundles), a.max_objects, 0.0);
        for (auto& bundle : filtered.bundles) {
            auto it = expr_by_image.find(bundle.image.image_id);
            if (it != expr_by_image.end())
                bundle.expressions.insert(bundle.expressions.end(), it->second.begin(),
                                          it->second.end());
        }
        auto samples = materialize_source(filtered.bundles, allowed, bank, a.seed, name,
                                          effective_threads(a.threads));
        if (samples.empty()) throw ConfigError("source produced no samples: " + name);
        streams.push_back({name, std::move(samples)});
        double w = weight_of.count(name) ? weight_of[name] : 1.0;
        spec.entries.push_back({name, w});
    }

    for (const std::string& s : a.vqa_sources) {
        auto [name, path] = split_kv(s, "--vqa");
        auto in = open_input(path);
        std::vector<DialogueSample> samples;
        size_t record_no = 0;
        for_each_record(in, [&](json record, size_t offset) {
            ++record_no;
            try {
                std::string image_id = record.value("image_id", "qa" + std::to_string(record_no));
                TaskSpec ts{Task::multichoice_vqa, 1, derive_seed(a.seed, "taskgen", name)};
                auto sample = gen_multichoice(record.at("question").get<std::string>(),
                                              record.at("options").get<std::vector<std::string>>(),
                                              record.at("correct_index").get<int>(), ts, bank,
                                              image_id);
                sample.provenance = name + ":" + generator_version();
                samples.push_back(std::move(sample));
            } catch (const json::exception& ex) {
                throw ParseError(std::string("vqa record: ") + ex.what(), offset, record_no);
            } catch (const std::invalid_argument& ex) {
                throw ParseError(std::string("vqa record: ") + ex.what(), offset, record_no);
            }
        });
        if (samples.empty()) throw ConfigError("vqa source produced no samples: " + name);
        streams.push_back({name, std::move(samples)});
        double w = weight_of.count(name) ? weight_of[name] : 1.0;
        spec.entries.push_back({name, w});
    }

    auto mixed = mix(streams, spec);
    {
        auto out = open_output(a.out);
        write_corpus(out, mixed.samples);
    }

    json manifest{{"generator", generator_version()},
                  {"seed", a.seed},
                  {"epoch_size", static_cast<int64_t>(mixed.samples.size())},
                  {"max_objects", a.max_objects},
                  {"entries", json::array()},
                  {"per_source_draws", json::object()},
                  {"task_counts", json::object()}};
    for (const auto& e : spec.entries)
        manifest["entries"].push_back(json{{"source", e.source}, {"weight", e.weight}});
    for (const auto& [name, count] : mixed.draws) manifest["per_source_draws"][name] = count;
    std::map<std::string, int64_t> task_counts;
    for (const auto& s : mixed.samples) task_counts[to_string(s.task)] += 1;
    for (const auto& [name, count] : task_counts) manifest["task_counts"][name] = count;
    if (!a.manifest.empty()) write_json_doc(a.manifest, manifest);

    std::cout << "wrote " << mixed.samples.size() << " samples\n";
    return 0;
}

struct EvalArgs {
    std::string items, predictions, out, per_item;
    double iou_threshold = 0.5;
    int threads = 1;
};

int cmd_eval(const EvalArgs& a) {
    auto in = open_input(a.items);
    auto items = read_eval_items(in);
    if (!a.predictions.empty()) {
        auto pin = open_input(a.predictions);
        apply_predictions(items, pin);
    }

    std::vector<EvalItem> grounding, vqa, counting;
    for (auto& item : items) {
        switch (item.task) {
            case EvalTask::grounding: grounding.push_back(std::move(item)); break;
            case EvalTask::vqa: vqa.push_back(std::move(item)); break;
            case EvalTask::counting: counting.push_back(std::move(item)); break;
        }
    }

    json results = json::array();
    std::vector<std::pair<std::string, EvalResult>> all;
    int threads = effective_threads(a.threads);
    if (!grounding.empty())
        all.emplace_back("grounding", eval_grounding(grounding, a.iou_threshold, threads));
    if (!vqa.empty()) all.emplace_back("vqa", eval_vqa(vqa, threads));
    if (!counting.empty()) all.emplace_back("counting", eval_counting(counting, threads));

    std::optional<std::ofstream> detail;
    if (!a.per_item.empty()) detail.emplace(open_output(a.per_item));
    for (const auto& [task, result] : all) {
        results.push_back(json{{"task", task},
                               {"metric", result.metric_name},
                               {"value", result.value},
                               {"item_count", result.item_count}});
        std::cout << task << " " << result.metric_name << " = " << result.value << " ("
                  << result.item_count << " items)\n";
        if (detail)
            for (const auto& [id, score] : result.per_item)
                *detail << json{{"item_id", id}, {"task", task}, {"score", score}}.dump() << '\n';
    }

    json doc{{"note", "VQA Score uses the consensus formula min(matches/3, 1); "
                      "grounding accuracy counts the first parsed box at the configured "
                      "IoU threshold"},
             {"config", {{"iou_threshold", a.iou_threshold}}},
             {"results", results}};
    if (!a.out.empty()) write_json_doc(a.out, doc);
    return 0;
}

struct StatsArgs {
    std::string bundles, corpus, refexps;
};

int cmd_stats(const StatsArgs& a) {
    if (!a.bundles.empty()) {
        auto in = open_input(a.bundles);
        auto bundles = read_bundles(in);
        CorpusStats s;
        for (const auto& b : bundles) {
            s.image_count += 1;
            s.object_count += static_cast<int64_t>(b.objects.size());
            s.relation_count += static_cast<int64_t>(b.relations.size());
            s.region_count += static_cast<int64_t>(b.regions.size());
        }
        std::cout << stats_doc(s).dump(2) << "\n";
    } else if (!a.corpus.empty()) {
        auto in = open_input(a.corpus);
        auto samples = read_corpus(in);
        std::map<std::string, int64_t> by_task, by_source;
        for (const auto& s : samples) {
            by_task[to_string(s.task)] += 1;
            by_source[s.provenance.substr(0, s.provenance.find(':'))] += 1;
        }
        json doc{{"samples", static_cast<int64_t>(samples.size())},
                 {"by_task", by_task},
                 {"by_source", by_source}};
        std::cout << doc.dump(2) << "\n";
    } else if (!a.refexps.empty()) {
        auto in = open_input(a.refexps);
        auto records = read_expressions(in);
        int64_t retained = 0;
        for (const auto& r : records) retained += r.retained ? 1 : 0;
        json doc{{"records", static_cast<int64_t>(records.size())}, {"retained", retained}};
        std::cout << doc.dump(2) << "\n";
    } else {
        throw ConfigError("stats needs one of --bundles, --corpus, --refexps");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"referential-comprehension instruction data toolkit"};
    app.set_config("--config", "", "config file (INI; command line wins)");
    app.require_subcommand(1);

    IngestArgs ingest_args;
    auto* ingest = app.add_subcommand("ingest", "parse annotations into the bundle store");
    ingest->add_option("--objects", ingest_args.objects, "scene-graph objects source");
    ingest->add_option("--relations", ingest_args.relations, "scene-graph relationships source");
    ingest->add_option("--regions", ingest_args.regions, "scene-graph region descriptions source");
    ingest->add_option("--detection", ingest_args.detection, "COCO-style detection document");
    ingest->add_option("--out-bundles", ingest_args.out_bundles, "bundle store output")->required();
    ingest->add_option("--out-stats", ingest_args.out_stats, "stats document output")->required();

    BootstrapArgs bootstrap_args;
    auto* bootstrap = app.add_subcommand("bootstrap", "describe and re-ground objects, filter by IoU");
    bootstrap->add_option("--bundles", bootstrap_args.bundles, "bundle store")->required();
    bootstrap->add_option("--out", bootstrap_args.out, "expression records output")->required();
    bootstrap->add_option("--report", bootstrap_args.report, "report document output")->required();
    bootstrap->add_option("--transcript", bootstrap_args.transcript, "scripted client transcript");
    bootstrap->add_option("--endpoint", bootstrap_args.endpoint, "model HTTP endpoint URL");
    bootstrap->add_option("--lambda", bootstrap_args.config.lambda, "retention IoU threshold");
    bootstrap->add_option("--max-objects", bootstrap_args.config.max_objects_per_image,
                          "drop images with more objects");
    bootstrap->add_option("--min-area", bootstrap_args.config.min_object_area,
                          "candidate area floor, px^2 (strict)");
    bootstrap->add_option("--max-inflight", bootstrap_args.config.max_inflight_requests,
                          "concurrent model requests");
    bootstrap->add_option("--retry-limit", bootstrap_args.config.retry_limit,
                          "retries per request");
    bootstrap->add_option("--timeout", bootstrap_args.config.request_timeout_s,
                          "request timeout, seconds");
    bootstrap->add_option("--abort-failure-rate", bootstrap_args.config.abort_failure_rate,
                          "abort when failures exceed this fraction");
    bootstrap->add_option("--templates", bootstrap_args.templates, "template bank override file");
    bootstrap->add_option("--threads", bootstrap_args.threads, "worker threads (overrides --max-inflight)");

    RefilterArgs refilter_args;
    auto* refilter_cmd = app.add_subcommand("refilter", "recompute retention at a new lambda");
    refilter_cmd->add_option("--in", refilter_args.in, "expression records")->required();
    refilter_cmd->add_option("--lambda", refilter_args.lambda, "new IoU threshold")->required();
    refilter_cmd->add_option("--out", refilter_args.out, "expression records output")->required();
    refilter_cmd->add_option("--report", refilter_args.report, "report document output");

    GenerateArgs generate_args;
    auto* generate = app.add_subcommand("generate", "materialize, mix and serialize the corpus");
    generate->add_option("--source", generate_args.sources, "bundle source as name=path");
    generate->add_option("--vqa", generate_args.vqa_sources, "multichoice QA source as name=path");
    generate->add_option("--weight", generate_args.weights, "mix weight as name=value (default 1)");
    generate->add_option("--refexps", generate_args.refexps, "retained expression records to merge");
    generate->add_option("--tasks", generate_args.tasks_csv, "allowed tasks, comma separated");
    generate->add_option("--templates", generate_args.templates, "template bank override file");
    generate->add_option("--epoch-size", generate_args.epoch_size, "output sample count");
    generate->add_option("--seed", generate_args.seed, "root random seed");
    generate->add_option("--threads", generate_args.threads, "worker threads");
    generate->add_option("--max-objects", generate_args.max_objects,
                         "drop images with more objects (0 disables)");
    generate->add_option("--out", generate_args.out, "corpus output")->required();
    generate->add_option("--manifest", generate_args.manifest, "manifest document output");

    EvalArgs eval_args;
    auto* eval_cmd = app.add_subcommand("eval", "score model transcripts");
    eval_cmd->add_option("--items", eval_args.items, "eval item records")->required();
    eval_cmd->add_option("--predictions", eval_args.predictions,
                         "prediction records merged by item_id");
    eval_cmd->add_option("--iou-threshold", eval_args.iou_threshold, "grounding IoU threshold");
    eval_cmd->add_option("--out", eval_args.out, "result document output");
    eval_cmd->add_option("--per-item", eval_args.per_item, "per-item score records output");
    eval_cmd->add_option("--threads", eval_args.threads, "worker threads");

    StatsArgs stats_args;
    auto* stats = app.add_subcommand("stats", "summarize pipeline artifacts");
    stats->add_option("--bundles", stats_args.bundles, "bundle store");
    stats->add_option("--corpus", stats_args.corpus, "corpus file");
    stats->add_option("--refexps", stats_args.refexps, "expression records");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*ingest) return cmd_ingest(ingest_args);
        if (*bootstrap) return cmd_bootstrap(bootstrap_args);
        if (*refilter_cmd) return cmd_refilter(refilter_args);
        if (*generate) return cmd_generate(generate_args);
        if (*eval_cmd) return cmd_eval(eval_args);
        if (*stats) return cmd_stats(stats_args);
    } catch (const ConfigError& ex) {
        std::cerr << "config error: " << ex.what() << "\n";
        return kExitConfig;
    } catch (const ParseError& ex) {
        std::cerr << "input error: " << ex.what();
        if (ex.line > 0) std::cerr << " (line " << ex.line << ")";
        std::cerr << " (byte " << ex.byte_offset << ")\n";
        return kExitInput;
    } catch (const ClientError& ex) {
        std::cerr << "client error: " << ex.what() << "\n";
        return kExitClient;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
