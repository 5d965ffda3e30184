#include "rcgen/assemble.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include "rcgen/errors.hpp"
#include "rcgen/json_codec.hpp"
#include "rcgen/parallel.hpp"

namespace rcgen {

using nlohmann::json;

const char* generator_version() { return "rcgen-0.1.0"; }

namespace {

bool task_allowed(Task t, std::span<const Task> allowed) {
    return std::find(allowed.begin(), allowed.end(), t) != allowed.end();
}

bool spatial_feasible(const ImageBundle& b) {
    if (b.objects.size() < 2) return false;
    // needs at least two objects with distinct boxes, or every quadrant is empty
    for (size_t i = 1; i < b.objects.size(); ++i)
        if (!(b.objects[i].box == b.objects[0].box)) return true;
    return false;
}

bool phrase_feasible(const ImageBundle& b) {
    if (!b.regions.empty()) return true;
    for (const auto& e : b.expressions)
        if (e.retained && !e.text.empty()) return true;
    return false;
}

}  // namespace

std::vector<std::pair<Task, int>> feasible_pairs(const ImageBundle& bundle,
                                                 std::span<const Task> allowed) {
    std::vector<std::pair<Task, int>> out;
    auto add = [&](Task t, bool feasible) {
        if (!feasible || !task_allowed(t, allowed)) return;
        for (int v : variants_for(t)) out.emplace_back(t, v);
    };
    add(Task::relation_qa, !bundle.relations.empty());
    add(Task::relation_detect, !bundle.relations.empty());
    add(Task::spatial, spatial_feasible(bundle));
    add(Task::counting, !bundle.objects.empty());
    add(Task::detection, !bundle.objects.empty());
    add(Task::grounding, phrase_feasible(bundle));
    add(Task::ground_caption, phrase_feasible(bundle));
    return out;
}

std::optional<TaskSpec> select_task(const ImageBundle& bundle, std::span<const Task> allowed,
                                    Rng& rng) {
    auto pairs = feasible_pairs(bundle, allowed);
    if (pairs.empty()) return std::nullopt;
    auto [task, variant] = pairs[rng.below(pairs.size())];
    return TaskSpec{task, variant, 0};
}

std::vector<DialogueSample> materialize_source(const std::vector<ImageBundle>& bundles,
                                               std::span<const Task> allowed,
                                               const TemplateBank& bank, uint64_t seed,
                                               const std::string& source_name, int threads) {
    uint64_t gen_seed = derive_seed(seed, "taskgen", source_name);
    std::vector<std::optional<DialogueSample>> slots(bundles.size());
    parallel_for(bundles.size(), effective_threads(threads), [&](size_t i) {
        const ImageBundle& bundle = bundles[i];
        Rng rng(derive_seed(seed, "select", source_name, bundle.image.image_id));
        auto spec = select_task(bundle, allowed, rng);
        if (!spec) return;
        spec->rng_seed = gen_seed;
        auto sample = generate(bundle, *spec, bank);
        if (!sample) return;
        sample->provenance = source_name + ":" + generator_version();
        slots[i] = std::move(*sample);
    });
    std::vector<DialogueSample> out;
    out.reserve(bundles.size());
    for (auto& slot : slots)
        if (slot) out.push_back(std::move(*slot));
    return out;
}

MixResult mix(const std::vector<SourceStream>& sources, const MixSpec& spec) {
    if (spec.entries.empty()) throw ConfigError("mix spec has no entries");

    struct Cycle {
        const SourceStream* stream;
        std::vector<size_t> order;
        size_t cursor = 0;
    };
    std::vector<Cycle> cycles;
    std::vector<double> cumulative;
    double total_weight = 0;
    int64_t total_samples = 0;

    for (const MixEntry& entry : spec.entries) {
        if (entry.weight <= 0)
            throw ConfigError("source weight must be positive: " + entry.source);
        auto it = std::find_if(sources.begin(), sources.end(),
                               [&](const SourceStream& s) { return s.name == entry.source; });
        if (it == sources.end()) throw ConfigError("unknown mix source: " + entry.source);
        if (it->samples.empty()) throw ConfigError("source stream is empty: " + entry.source);

        Cycle cycle;
        cycle.stream = &*it;
        cycle.order.resize(it->samples.size());
        for (size_t i = 0; i < cycle.order.size(); ++i) cycle.order[i] = i;
        Rng shuffle_rng(derive_seed(spec.seed, "mix.shuffle", entry.source));
        shuffle_rng.shuffle(cycle.order);
        cycles.push_back(std::move(cycle));

        total_weight += entry.weight;
        cumulative.push_back(total_weight);
        total_samples += static_cast<int64_t>(it->samples.size());
    }

    int64_t epoch = spec.epoch_size > 0 ? spec.epoch_size : total_samples;
    MixResult out;
    out.samples.reserve(epoch);
    for (const MixEntry& entry : spec.entries) out.draws[entry.source] = 0;
    Rng rng(derive_seed(spec.seed, "mix.draw"));
    for (int64_t slot = 0; slot < epoch; ++slot) {
        double r = rng.unit() * total_weight;
        size_t pick = 0;
        while (pick + 1 < cumulative.size() && r >= cumulative[pick]) ++pick;
        Cycle& cycle = cycles[pick];
        const DialogueSample& sample = cycle.stream->samples[cycle.order[cycle.cursor]];
        cycle.cursor = (cycle.cursor + 1) % cycle.order.size();
        out.samples.push_back(sample);
        out.draws[spec.entries[pick].source] += 1;
    }
    return out;
}

std::string serialize_sample(const DialogueSample& sample) { return json(sample).dump(); }

DialogueSample parse_sample(std::string_view line) {
    try {
        return json::parse(line).get<DialogueSample>();
    } catch (const json::exception& ex) {
        throw ParseError(std::string("corpus record: ") + ex.what(), 0);
    }
}

void write_corpus(std::ostream& out, std::span<const DialogueSample> samples) {
    for (const DialogueSample& s : samples) out << serialize_sample(s) << '\n';
}

std::vector<DialogueSample> read_corpus(std::istream& in) {
    std::vector<DialogueSample> out;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        try {
            out.push_back(parse_sample(line));
        } catch (const ParseError& ex) {
            throw ParseError(std::string(ex.what()) + " (line " + std::to_string(line_no) + ")", 0,
                             line_no);
        }
    }
    return out;
}

}  // namespace rcgen
