#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rcgen/annotation.hpp"
#include "rcgen/rng.hpp"
#include "rcgen/taskgen.hpp"

namespace rcgen {

struct MixEntry {
    std::string source;
    double weight = 1.0;
};

struct MixSpec {
    std::vector<MixEntry> entries;
    int64_t epoch_size = 0;  // 0: total sample count across sources
    uint64_t seed = 0;
};

// (task, variant) pairs whose generator preconditions hold for this bundle.
// Enumeration order is fixed: relation_qa, relation_detect#1..3, spatial#1..3,
// counting#1..2, detection#1..2, grounding, ground_caption.
std::vector<std::pair<Task, int>> feasible_pairs(const ImageBundle& bundle,
                                                 std::span<const Task> allowed);

// Uniform draw over the feasible pairs; absent when none is feasible.
std::optional<TaskSpec> select_task(const ImageBundle& bundle, std::span<const Task> allowed,
                                    Rng& rng);

// One sample per image: select a task, run its generator, stamp provenance
// "<source>:<generator version>". Images with no feasible task or a skipped
// draw contribute nothing. Parallel over images; output independent of the
// worker count.
std::vector<DialogueSample> materialize_source(const std::vector<ImageBundle>& bundles,
                                               std::span<const Task> allowed,
                                               const TemplateBank& bank, uint64_t seed,
                                               const std::string& source_name, int threads = 1);

struct SourceStream {
    std::string name;
    std::vector<DialogueSample> samples;
};

struct MixResult {
    std::vector<DialogueSample> samples;
    std::map<std::string, int64_t> draws;  // per-source slot counts
};

// Each output slot draws a source with probability weight/sum(weights), then
// takes the next sample from that source's seeded shuffled cycle. Fully
// determined by spec.seed. Throws ConfigError for an empty source stream.
MixResult mix(const std::vector<SourceStream>& sources, const MixSpec& spec);

std::string serialize_sample(const DialogueSample& sample);
DialogueSample parse_sample(std::string_view line);  // ParseError on bad input

void write_corpus(std::ostream& out, std::span<const DialogueSample> samples);
std::vector<DialogueSample> read_corpus(std::istream& in);  // ParseError carries the line number

const char* generator_version();

}  // namespace rcgen
