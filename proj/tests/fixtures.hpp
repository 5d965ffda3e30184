#pragma once

#include <string>
#include <vector>

#include "rcgen/annotation.hpp"
#include "rcgen/rng.hpp"

namespace rcgen::testing {

inline ObjectAnn obj(const std::string& id, const std::string& image_id, double x0, double y0,
                     double x1, double y1, const std::string& category) {
    return {id, image_id, {x0, y0, x1, y1}, category};
}

// 1000x1000 image with a handful of objects placed on a grid.
inline ImageBundle basic_bundle(const std::string& image_id = "img1") {
    ImageBundle b;
    b.image = {image_id, "", 1000, 1000};
    b.objects = {
        obj("o1", image_id, 100, 100, 300, 300, "dog"),
        obj("o2", image_id, 600, 100, 800, 300, "dog"),
        obj("o3", image_id, 100, 600, 300, 800, "cat"),
        obj("o4", image_id, 600, 600, 800, 800, "hat"),
    };
    b.relations = {{"o1", "chasing", "o3"}, {"o1", "wearing", "o4"}};
    b.regions = {{image_id, {100, 100, 300, 300}, "a brown dog"}};
    return b;
}

// Bundle where every generator precondition holds.
inline ImageBundle fully_feasible_bundle() {
    ImageBundle b = basic_bundle("feasible");
    b.expressions.push_back({"feasible",
                             {600, 600, 800, 800},
                             "the small hat",
                             ExprSource::bootstrapped,
                             PixelBox{600, 600, 800, 800},
                             1.0,
                             true});
    return b;
}

// Independent IoU used by oracle checks; intentionally a separate
// implementation from rcgen::iou.
inline double ref_iou(const NormBox& a, const NormBox& b) {
    double x0 = a.x_min > b.x_min ? a.x_min : b.x_min;
    double y0 = a.y_min > b.y_min ? a.y_min : b.y_min;
    double x1 = a.x_max < b.x_max ? a.x_max : b.x_max;
    double y1 = a.y_max < b.y_max ? a.y_max : b.y_max;
    double inter = (x1 > x0 && y1 > y0) ? (x1 - x0) * (y1 - y0) : 0.0;
    double area_a = (a.x_max - a.x_min) * (a.y_max - a.y_min);
    double area_b = (b.x_max - b.x_min) * (b.y_max - b.y_min);
    double uni = area_a + area_b - inter;
    return uni > 0 ? inter / uni : 0.0;
}

// Random valid box whose corners stay at least 0.002 apart per axis, so the
// 3-decimal rendering can never collapse it.
inline NormBox random_box(Rng& rng) {
    auto span = [&](double& lo, double& hi) {
        double a = rng.unit(), b = rng.unit();
        lo = a < b ? a : b;
        hi = a < b ? b : a;
        if (hi - lo < 0.002) {
            hi = lo + 0.002 > 1.0 ? 1.0 : lo + 0.002;
            lo = hi - 0.002;
        }
    };
    NormBox box;
    span(box.x_min, box.x_max);
    span(box.y_min, box.y_max);
    return box;
}

// Random annotation bundle for fuzzing the generators.
inline ImageBundle random_bundle(Rng& rng, const std::string& image_id) {
    const char* categories[] = {"person", "dog", "car", "tree", "hat"};
    ImageBundle b;
    int width = 200 + static_cast<int>(rng.below(1800));
    int height = 200 + static_cast<int>(rng.below(1800));
    b.image = {image_id, "", width, height};
    size_t objects = 1 + rng.below(8);
    for (size_t i = 0; i < objects; ++i) {
        double x0 = rng.unit() * (width - 20);
        double y0 = rng.unit() * (height - 20);
        double w = 10 + rng.unit() * (width - x0 - 10);
        double h = 10 + rng.unit() * (height - y0 - 10);
        b.objects.push_back(obj("o" + std::to_string(i), image_id, x0, y0, x0 + w, y0 + h,
                                categories[rng.below(5)]));
    }
    size_t relations = rng.below(4);
    for (size_t i = 0; i < relations && b.objects.size() >= 2; ++i) {
        size_t s = rng.below(b.objects.size());
        size_t o = rng.below(b.objects.size());
        if (s == o) continue;
        b.relations.push_back(
            {b.objects[s].object_id, i % 2 ? "near" : "on", b.objects[o].object_id});
    }
    if (rng.below(2) == 0)
        b.regions.push_back({image_id, b.objects[0].box, "an object of interest"});
    return b;
}

}  // namespace rcgen::testing
