#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rcgen/annotation.hpp"
#include "rcgen/templates.hpp"

namespace rcgen {

// Identifies one generation draw. Output is fully determined by
// (bundle.image.image_id, task, variant, rng_seed).
struct TaskSpec {
    Task task = Task::grounding;
    int variant = 1;
    uint64_t rng_seed = 0;
};

bool variant_valid(Task task, int variant);
std::vector<int> variants_for(Task task);

// normalize + quantize against the owning image; absent when the box cannot
// be rendered at wire precision.
std::optional<std::string> coord_text(const PixelBox& box, const ImageRecord& image);

// Objects in reading order: (y_min, x_min, object_id).
std::vector<const ObjectAnn*> reading_order(std::vector<const ObjectAnn*> objects);

// Objects whose center falls in `position` relative to the object at
// ref_index, in reading order. Objects sharing the reference's exact box are
// never candidates.
std::vector<const ObjectAnn*> spatial_candidates(const ImageBundle& bundle, size_t ref_index,
                                                 CoarsePosition position);

// Generators return nullopt when the bundle cannot support the draw (missing
// annotations, empty answer set, box not renderable). Each samples content
// first, then the template, from an rng derived from (spec, image_id).
std::optional<DialogueSample> gen_relation_qa(const ImageBundle&, const TaskSpec&,
                                              const TemplateBank&);
std::optional<DialogueSample> gen_relation_detect(const ImageBundle&, const TaskSpec&,
                                                  const TemplateBank&);
std::optional<DialogueSample> gen_spatial(const ImageBundle&, const TaskSpec&,
                                          const TemplateBank&);
std::optional<DialogueSample> gen_counting(const ImageBundle&, const TaskSpec&,
                                           const TemplateBank&);
std::optional<DialogueSample> gen_detection(const ImageBundle&, const TaskSpec&,
                                            const TemplateBank&);
std::optional<DialogueSample> gen_grounding(const ImageBundle&, const TaskSpec&,
                                            const TemplateBank&);
std::optional<DialogueSample> gen_ground_caption(const ImageBundle&, const TaskSpec&,
                                                 const TemplateBank&);

// Multi-choice VQA from an external QA record. Options render as "A. ..."
// lines; the answer is "<letter>. <option text>". Throws std::invalid_argument
// for fewer than 2 or more than 26 options or an out-of-range index.
DialogueSample gen_multichoice(const std::string& question,
                               const std::vector<std::string>& options, int correct_index,
                               const TaskSpec& spec, const TemplateBank& bank,
                               const std::string& image_id = {});

// Dispatch on spec.task (multichoice_vqa is not bundle-driven and not
// reachable here).
std::optional<DialogueSample> generate(const ImageBundle&, const TaskSpec&, const TemplateBank&);

}  // namespace rcgen
