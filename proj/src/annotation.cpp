#include "rcgen/annotation.hpp"

#include <cctype>
#include <unordered_map>
#include <unordered_set>

namespace rcgen {

std::string trim(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::string canonical_category(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    bool pending_space = false;
    for (char c : raw) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out += ' ';
            pending_space = false;
        }
        out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return out;
}

bool contains_placeholder(std::string_view text) {
    for (size_t i = 0; i < text.size(); ++i) {
        if (text[i] != '<') continue;
        size_t j = i + 1;
        while (j < text.size() && (std::islower(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
        if (j > i + 1 && j < text.size() && text[j] == '>') return true;
    }
    return false;
}

namespace {

void check_box(const PixelBox& box, const ImageRecord& img, const std::string& id,
               std::vector<Violation>& out) {
    if (!(box.x_min < box.x_max)) out.push_back({id, "x_min < x_max"});
    if (!(box.y_min < box.y_max)) out.push_back({id, "y_min < y_max"});
    if (box.x_min < 0 || box.y_min < 0) out.push_back({id, "coordinates non-negative"});
    if (box.x_max > img.width || box.y_max > img.height) out.push_back({id, "box within image"});
}

}  // namespace

std::vector<Violation> validate_image_bundle(const ImageRecord& record,
                                             std::span<const ObjectAnn> objects,
                                             std::span<const RelationTriplet> relations,
                                             std::span<const RegionDesc> regions) {
    std::vector<Violation> out;
    if (record.image_id.empty()) out.push_back({record.image_id, "image_id non-empty"});
    if (record.width < 1) out.push_back({record.image_id, "width >= 1"});
    if (record.height < 1) out.push_back({record.image_id, "height >= 1"});

    std::unordered_set<std::string> ids;
    for (const auto& obj : objects) {
        if (!ids.insert(obj.object_id).second) out.push_back({obj.object_id, "object_id unique"});
        if (obj.category.empty()) out.push_back({obj.object_id, "category non-empty"});
        if (obj.image_id != record.image_id) out.push_back({obj.object_id, "object image_id matches"});
        check_box(obj.box, record, obj.object_id, out);
    }
    for (const auto& rel : relations) {
        std::string id = rel.subject_id + "-" + rel.predicate + "-" + rel.object_id;
        if (rel.subject_id == rel.object_id) out.push_back({id, "subject != object"});
        if (!ids.contains(rel.subject_id)) out.push_back({id, "subject resolves"});
        if (!ids.contains(rel.object_id)) out.push_back({id, "object resolves"});
    }
    for (size_t i = 0; i < regions.size(); ++i) {
        std::string id = record.image_id + "/region" + std::to_string(i);
        if (trim(regions[i].phrase).empty()) out.push_back({id, "phrase non-empty"});
        check_box(regions[i].box, record, id, out);
    }
    return out;
}

std::vector<Violation> validate_image_bundle(const ImageBundle& bundle) {
    auto out = validate_image_bundle(bundle.image, bundle.objects, bundle.relations, bundle.regions);
    for (size_t i = 0; i < bundle.expressions.size(); ++i) {
        const auto& e = bundle.expressions[i];
        std::string id = bundle.image.image_id + "/expr" + std::to_string(i);
        check_box(e.box, bundle.image, id, out);
        if (e.iou && (*e.iou < 0 || *e.iou > 1)) out.push_back({id, "iou in [0,1]"});
        if (e.retained && e.source == ExprSource::bootstrapped && (!e.predicted_box || !e.iou))
            out.push_back({id, "retained bootstrapped has prediction"});
    }
    return out;
}

std::vector<Violation> validate_dialogue(const DialogueSample& sample) {
    std::vector<Violation> out;
    const std::string& id = sample.image_id;
    if (sample.turns.empty()) {
        out.push_back({id, "turns non-empty"});
        return out;
    }
    if (sample.turns.front().role != Role::user) out.push_back({id, "first role user"});
    if (sample.turns.back().role != Role::assistant) out.push_back({id, "last role assistant"});
    for (size_t i = 1; i < sample.turns.size(); ++i)
        if (sample.turns[i].role == sample.turns[i - 1].role) {
            out.push_back({id, "roles alternate"});
            break;
        }
    for (const auto& turn : sample.turns)
        if (contains_placeholder(turn.text)) {
            out.push_back({id, "no unsubstituted placeholder"});
            break;
        }
    return out;
}

const char* to_string(Task t) {
    switch (t) {
        case Task::relation_qa: return "relation_qa";
        case Task::relation_detect: return "relation_detect";
        case Task::spatial: return "spatial";
        case Task::counting: return "counting";
        case Task::detection: return "detection";
        case Task::grounding: return "grounding";
        case Task::ground_caption: return "ground_caption";
        case Task::multichoice_vqa: return "multichoice_vqa";
    }
    return "?";
}

const char* to_string(Role r) { return r == Role::user ? "user" : "assistant"; }

const char* to_string(ExprSource s) {
    return s == ExprSource::annotated ? "annotated" : "bootstrapped";
}

std::optional<Task> task_from_string(std::string_view s) {
    static const std::unordered_map<std::string_view, Task> map = {
        {"relation_qa", Task::relation_qa},   {"relation_detect", Task::relation_detect},
        {"spatial", Task::spatial},           {"counting", Task::counting},
        {"detection", Task::detection},       {"grounding", Task::grounding},
        {"ground_caption", Task::ground_caption}, {"multichoice_vqa", Task::multichoice_vqa},
    };
    auto it = map.find(s);
    if (it == map.end()) return std::nullopt;
    return it->second;
}

std::optional<Role> role_from_string(std::string_view s) {
    if (s == "user") return Role::user;
    if (s == "assistant") return Role::assistant;
    return std::nullopt;
}

std::optional<ExprSource> expr_source_from_string(std::string_view s) {
    if (s == "annotated") return ExprSource::annotated;
    if (s == "bootstrapped") return ExprSource::bootstrapped;
    return std::nullopt;
}

}  // namespace rcgen
