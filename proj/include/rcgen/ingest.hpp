#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rcgen/annotation.hpp"

namespace rcgen {

struct CorpusStats {
    int64_t image_count = 0;
    int64_t object_count = 0;
    int64_t relation_count = 0;
    int64_t region_count = 0;
    int64_t images_dropped_by_object_cap = 0;
    int64_t objects_dropped_by_area = 0;
    // conservation counters: input = emitted + dropped for every record class
    int64_t images_dropped_invalid = 0;
    int64_t objects_dropped_invalid = 0;
    int64_t relations_dropped_invalid = 0;
    int64_t regions_dropped_invalid = 0;

    CorpusStats& operator+=(const CorpusStats& o);
    bool operator==(const CorpusStats&) const = default;
};

struct LoadResult {
    std::vector<ImageBundle> bundles;
    CorpusStats stats;
};

// Scene-graph records: { image_id, width, height, objects: [{object_id, x, y,
// w, h, names}], relationships: [...], regions: [...] }. The three sources
// are joined by image_id, so objects / relationships / regions may live in
// separate files or in one combined file. Boxes are clamped to the image and
// records failing validation are dropped and counted. NDJSON or a single
// JSON array, auto-detected.
LoadResult load_scene_graph(std::istream& objects_source, std::istream* relations_source = nullptr,
                            std::istream* regions_source = nullptr);

// COCO-style detection document: { images, annotations, categories }. Emits
// object-only bundles in images-array order.
LoadResult load_detection(std::istream& source);

struct BootstrapFilterResult {
    std::vector<ImageBundle> bundles;                 // images that survived the cap
    std::vector<std::vector<std::string>> candidates; // per-bundle object ids eligible for bootstrap
    CorpusStats stats;
};

// Drops images with more than max_objects objects. Within kept images,
// objects are bootstrap candidates only when their pixel area is strictly
// greater than min_area and their box renders at wire precision; they stay in
// the bundle for task generation either way.
BootstrapFilterResult filter_for_bootstrap(std::vector<ImageBundle> bundles, int max_objects = 15,
                                           double min_area = 2000.0);

// Intermediate bundle store, one JSON record per line; exact round-trip.
void write_bundles(std::ostream& out, std::span<const ImageBundle> bundles);
std::vector<ImageBundle> read_bundles(std::istream& in);

}  // namespace rcgen
