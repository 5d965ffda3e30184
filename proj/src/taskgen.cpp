#include "rcgen/taskgen.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "rcgen/rng.hpp"

namespace rcgen {

bool variant_valid(Task task, int variant) {
    switch (task) {
        case Task::relation_detect:
        case Task::spatial: return variant >= 1 && variant <= 3;
        case Task::counting:
        case Task::detection: return variant >= 1 && variant <= 2;
        default: return variant == 1;
    }
}

std::vector<int> variants_for(Task task) {
    switch (task) {
        case Task::relation_detect:
        case Task::spatial: return {1, 2, 3};
        case Task::counting:
        case Task::detection: return {1, 2};
        default: return {1};
    }
}

std::optional<std::string> coord_text(const PixelBox& box, const ImageRecord& image) {
    auto n = normalize(box, image.width, image.height);
    if (!n) return std::nullopt;
    return quantize(*n);
}

std::vector<const ObjectAnn*> reading_order(std::vector<const ObjectAnn*> objects) {
    std::sort(objects.begin(), objects.end(), [](const ObjectAnn* a, const ObjectAnn* b) {
        if (a->box.y_min != b->box.y_min) return a->box.y_min < b->box.y_min;
        if (a->box.x_min != b->box.x_min) return a->box.x_min < b->box.x_min;
        return a->object_id < b->object_id;
    });
    return objects;
}

std::vector<const ObjectAnn*> spatial_candidates(const ImageBundle& bundle, size_t ref_index,
                                                 CoarsePosition position) {
    std::vector<const ObjectAnn*> out;
    auto ref = normalize(bundle.objects[ref_index].box, bundle.image.width, bundle.image.height);
    if (!ref) return out;
    for (size_t i = 0; i < bundle.objects.size(); ++i) {
        if (i == ref_index) continue;
        auto cand = normalize(bundle.objects[i].box, bundle.image.width, bundle.image.height);
        if (!cand) continue;
        if (quadrant(*ref, *cand) == position) out.push_back(&bundle.objects[i]);
    }
    return reading_order(std::move(out));
}

namespace {

uint64_t sample_seed(const TaskSpec& spec, const std::string& image_id) {
    return derive_seed(spec.rng_seed, image_id, static_cast<uint64_t>(spec.task),
                       static_cast<uint64_t>(spec.variant));
}

const ObjectAnn* find_object(const ImageBundle& b, const std::string& id) {
    for (const auto& obj : b.objects)
        if (obj.object_id == id) return &obj;
    return nullptr;
}

DialogueSample make_sample(const ImageBundle& b, Task task, std::string user, std::string answer) {
    DialogueSample s;
    s.image_id = b.image.image_id;
    s.task = task;
    s.turns = {{Role::user, std::move(user)}, {Role::assistant, std::move(answer)}};
    return s;
}

const std::string& pick(const std::vector<std::string>& bank, Rng& rng) {
    return bank[rng.below(bank.size())];
}

// Answer text for the detect-style tasks: coordinates, categories, or
// space-separated "coords category" pairs.
enum class AnswerShape { coords, categories, pairs };

std::optional<std::string> render_answer(const std::vector<const ObjectAnn*>& objs,
                                         const ImageRecord& image, AnswerShape shape) {
    std::string out;
    for (const ObjectAnn* obj : objs) {
        std::string token;
        if (shape != AnswerShape::categories) {
            auto ct = coord_text(obj->box, image);
            if (!ct) return std::nullopt;
            token = *ct;
        }
        if (shape == AnswerShape::categories) token = obj->category;
        if (shape == AnswerShape::pairs) token += " " + obj->category;
        if (!out.empty()) out += ' ';
        out += token;
    }
    return out;
}

AnswerShape relation_detect_shape(int variant) {
    // bank #1 asks for coordinates, #2 for categories, #3 for both
    return variant == 1 ? AnswerShape::coords
                        : (variant == 2 ? AnswerShape::categories : AnswerShape::pairs);
}

AnswerShape spatial_shape(int variant) {
    // bank #1 asks for both, #2 for categories, #3 for coordinates
    return variant == 1 ? AnswerShape::pairs
                        : (variant == 2 ? AnswerShape::categories : AnswerShape::coords);
}

}  // namespace

std::optional<DialogueSample> gen_relation_qa(const ImageBundle& b, const TaskSpec& spec,
                                              const TemplateBank& bank) {
    if (b.relations.empty()) return std::nullopt;
    Rng rng(sample_seed(spec, b.image.image_id));
    const auto& triplet = b.relations[rng.below(b.relations.size())];
    const ObjectAnn* subject = find_object(b, triplet.subject_id);
    const ObjectAnn* object = find_object(b, triplet.object_id);
    if (!subject || !object) return std::nullopt;
    auto subj_ct = coord_text(subject->box, b.image);
    auto obj_ct = coord_text(object->box, b.image);
    if (!subj_ct || !obj_ct) return std::nullopt;
    std::string user = instantiate_template(pick(bank.bank(Task::relation_qa), rng),
                                            {{"subject", *subj_ct}, {"object", *obj_ct}});
    return make_sample(b, Task::relation_qa, std::move(user), triplet.predicate);
}

std::optional<DialogueSample> gen_relation_detect(const ImageBundle& b, const TaskSpec& spec,
                                                  const TemplateBank& bank) {
    if (b.relations.empty() || !variant_valid(Task::relation_detect, spec.variant))
        return std::nullopt;
    Rng rng(sample_seed(spec, b.image.image_id));
    const auto& triplet = b.relations[rng.below(b.relations.size())];
    const ObjectAnn* subject = find_object(b, triplet.subject_id);
    if (!subject) return std::nullopt;
    auto subj_ct = coord_text(subject->box, b.image);
    if (!subj_ct) return std::nullopt;

    std::vector<const ObjectAnn*> answers;
    std::unordered_set<std::string> seen;
    for (const auto& rel : b.relations) {
        if (rel.subject_id != triplet.subject_id || rel.predicate != triplet.predicate) continue;
        if (!seen.insert(rel.object_id).second) continue;
        if (const ObjectAnn* obj = find_object(b, rel.object_id)) answers.push_back(obj);
    }
    if (answers.empty()) return std::nullopt;
    auto answer = render_answer(reading_order(std::move(answers)), b.image,
                                relation_detect_shape(spec.variant));
    if (!answer) return std::nullopt;
    std::string user =
        instantiate_template(pick(bank.bank(Task::relation_detect, spec.variant), rng),
                             {{"relation", triplet.predicate}, {"subject", *subj_ct}});
    return make_sample(b, Task::relation_detect, std::move(user), std::move(*answer));
}

std::optional<DialogueSample> gen_spatial(const ImageBundle& b, const TaskSpec& spec,
                                          const TemplateBank& bank) {
    if (b.objects.size() < 2 || !variant_valid(Task::spatial, spec.variant)) return std::nullopt;
    Rng rng(sample_seed(spec, b.image.image_id));
    size_t ref_index = rng.below(b.objects.size());
    auto ref_ct = coord_text(b.objects[ref_index].box, b.image);
    if (!ref_ct) return std::nullopt;

    std::vector<CoarsePosition> positions = {CoarsePosition::top_left, CoarsePosition::top_right,
                                             CoarsePosition::bottom_left,
                                             CoarsePosition::bottom_right};
    rng.shuffle(positions);
    for (CoarsePosition pos : positions) {
        auto candidates = spatial_candidates(b, ref_index, pos);
        if (candidates.empty()) continue;
        auto answer = render_answer(candidates, b.image, spatial_shape(spec.variant));
        if (!answer) return std::nullopt;
        std::string user = instantiate_template(pick(bank.bank(Task::spatial, spec.variant), rng),
                                                {{"loc", to_string(pos)}, {"object", *ref_ct}});
        return make_sample(b, Task::spatial, std::move(user), std::move(*answer));
    }
    return std::nullopt;
}

std::optional<DialogueSample> gen_counting(const ImageBundle& b, const TaskSpec& spec,
                                           const TemplateBank& bank) {
    if (b.objects.empty() || !variant_valid(Task::counting, spec.variant)) return std::nullopt;
    Rng rng(sample_seed(spec, b.image.image_id));
    const ObjectAnn& exemplar = b.objects[rng.below(b.objects.size())];
    int64_t count = std::count_if(b.objects.begin(), b.objects.end(), [&](const ObjectAnn& o) {
        return o.category == exemplar.category;
    });

    std::map<std::string, std::string> bindings;
    if (spec.variant == 1) {
        bindings["category"] = exemplar.category;
    } else {
        auto ct = coord_text(exemplar.box, b.image);
        if (!ct) return std::nullopt;
        bindings["object"] = *ct;
    }
    std::string user =
        instantiate_template(pick(bank.bank(Task::counting, spec.variant), rng), bindings);
    return make_sample(b, Task::counting, std::move(user), std::to_string(count));
}

std::optional<DialogueSample> gen_detection(const ImageBundle& b, const TaskSpec& spec,
                                            const TemplateBank& bank) {
    if (b.objects.empty() || !variant_valid(Task::detection, spec.variant)) return std::nullopt;
    Rng rng(sample_seed(spec, b.image.image_id));
    const ObjectAnn& exemplar = b.objects[rng.below(b.objects.size())];

    std::vector<const ObjectAnn*> matches;
    for (const auto& obj : b.objects)
        if (obj.category == exemplar.category) matches.push_back(&obj);
    auto answer = render_answer(reading_order(std::move(matches)), b.image, AnswerShape::coords);
    if (!answer) return std::nullopt;

    std::map<std::string, std::string> bindings;
    if (spec.variant == 1) {
        bindings["category"] = exemplar.category;
    } else {
        auto ct = coord_text(exemplar.box, b.image);
        if (!ct) return std::nullopt;
        bindings["object"] = *ct;
    }
    std::string user =
        instantiate_template(pick(bank.bank(Task::detection, spec.variant), rng), bindings);
    return make_sample(b, Task::detection, std::move(user), std::move(*answer));
}

namespace {

struct PhrasePick {
    const PixelBox* box;
    const std::string* phrase;
};

// Pool for grounding tasks: region descriptions plus retained referring
// expressions.
std::vector<PhrasePick> phrase_pool(const ImageBundle& b) {
    std::vector<PhrasePick> pool;
    for (const auto& region : b.regions) pool.push_back({&region.box, &region.phrase});
    for (const auto& expr : b.expressions)
        if (expr.retained && !expr.text.empty()) pool.push_back({&expr.box, &expr.text});
    return pool;
}

}  // namespace

std::optional<DialogueSample> gen_grounding(const ImageBundle& b, const TaskSpec& spec,
                                            const TemplateBank& bank) {
    auto pool = phrase_pool(b);
    if (pool.empty()) return std::nullopt;
    Rng rng(sample_seed(spec, b.image.image_id));
    const auto& picked = pool[rng.below(pool.size())];
    auto ct = coord_text(*picked.box, b.image);
    if (!ct) return std::nullopt;
    std::string user = instantiate_template(pick(bank.bank(Task::grounding), rng),
                                            {{"category", *picked.phrase}});
    return make_sample(b, Task::grounding, std::move(user), *ct);
}

std::optional<DialogueSample> gen_ground_caption(const ImageBundle& b, const TaskSpec& spec,
                                                 const TemplateBank& bank) {
    auto pool = phrase_pool(b);
    if (pool.empty()) return std::nullopt;
    Rng rng(sample_seed(spec, b.image.image_id));
    const auto& picked = pool[rng.below(pool.size())];
    auto ct = coord_text(*picked.box, b.image);
    if (!ct) return std::nullopt;
    std::string user =
        instantiate_template(pick(bank.bank(Task::ground_caption), rng), {{"object", *ct}});
    return make_sample(b, Task::ground_caption, std::move(user), *picked.phrase);
}

DialogueSample gen_multichoice(const std::string& question,
                               const std::vector<std::string>& options, int correct_index,
                               const TaskSpec& spec, const TemplateBank& bank,
                               const std::string& image_id) {
    if (options.size() < 2 || options.size() > 26)
        throw std::invalid_argument("multichoice needs 2..26 options, got " +
                                    std::to_string(options.size()));
    if (correct_index < 0 || static_cast<size_t>(correct_index) >= options.size())
        throw std::invalid_argument("correct_index out of range: " +
                                    std::to_string(correct_index));

    std::string block;
    for (size_t i = 0; i < options.size(); ++i) {
        if (i > 0) block += '\n';
        block += static_cast<char>('A' + i);
        block += ". ";
        block += options[i];
    }
    Rng rng(derive_seed(spec.rng_seed, image_id, static_cast<uint64_t>(Task::multichoice_vqa),
                        static_cast<uint64_t>(question.size())));
    std::string user = instantiate_template(pick(bank.bank(Task::multichoice_vqa), rng),
                                            {{"question", question}, {"options", block}});
    user = render_newline_escapes(user);
    std::string answer;
    answer += static_cast<char>('A' + correct_index);
    answer += ". ";
    answer += options[correct_index];

    DialogueSample s;
    s.image_id = image_id;
    s.task = Task::multichoice_vqa;
    s.turns = {{Role::user, std::move(user)}, {Role::assistant, std::move(answer)}};
    return s;
}

std::optional<DialogueSample> generate(const ImageBundle& b, const TaskSpec& spec,
                                       const TemplateBank& bank) {
    switch (spec.task) {
        case Task::relation_qa: return gen_relation_qa(b, spec, bank);
        case Task::relation_detect: return gen_relation_detect(b, spec, bank);
        case Task::spatial: return gen_spatial(b, spec, bank);
        case Task::counting: return gen_counting(b, spec, bank);
        case Task::detection: return gen_detection(b, spec, bank);
        case Task::grounding: return gen_grounding(b, spec, bank);
        case Task::ground_caption: return gen_ground_caption(b, spec, bank);
        case Task::multichoice_vqa: return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace rcgen
