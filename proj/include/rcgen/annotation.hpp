#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rcgen/geometry.hpp"

namespace rcgen {

struct ImageRecord {
    std::string image_id;
    std::string uri;  // file path or URL; never opened by this pipeline
    int width = 0;
    int height = 0;
    bool operator==(const ImageRecord&) const = default;
};

struct ObjectAnn {
    std::string object_id;
    std::string image_id;
    PixelBox box;
    std::string category;  // lowercase canonical form
    bool operator==(const ObjectAnn&) const = default;
};

struct RelationTriplet {
    std::string subject_id;
    std::string predicate;
    std::string object_id;
    bool operator==(const RelationTriplet&) const = default;
};

struct RegionDesc {
    std::string image_id;
    PixelBox box;
    std::string phrase;
    bool operator==(const RegionDesc&) const = default;
};

enum class ExprSource { annotated, bootstrapped };

// An (image, box, text) pair, possibly produced by the bootstrap stage.
// Bootstrapped records whose grounding produced no parseable box keep
// predicted_box/iou absent and are never retained.
struct ReferringExpression {
    std::string image_id;
    PixelBox box;
    std::string text;
    ExprSource source = ExprSource::annotated;
    std::optional<PixelBox> predicted_box;
    std::optional<double> iou;
    bool retained = false;
    bool operator==(const ReferringExpression&) const = default;
};

enum class Task {
    relation_qa,
    relation_detect,
    spatial,
    counting,
    detection,
    grounding,
    ground_caption,
    multichoice_vqa,
};

enum class Role { user, assistant };

struct Turn {
    Role role = Role::user;
    std::string text;
    bool operator==(const Turn&) const = default;
};

// One instruction-tuning conversation.
struct DialogueSample {
    std::string image_id;
    Task task = Task::grounding;
    std::vector<Turn> turns;
    std::string provenance;  // "<source>:<generator version>"
    bool operator==(const DialogueSample&) const = default;
};

// All annotations of one image; the unit of work for every generator.
struct ImageBundle {
    ImageRecord image;
    std::vector<ObjectAnn> objects;
    std::vector<RelationTriplet> relations;
    std::vector<RegionDesc> regions;
    std::vector<ReferringExpression> expressions;
    bool operator==(const ImageBundle&) const = default;
};

struct Violation {
    std::string id;    // offending image/object/relation id
    std::string rule;  // stable rule name, e.g. "x_min < x_max"
    bool operator==(const Violation&) const = default;
};

// Checks every structural invariant of a bundle. Violations are data, not
// failures; an empty report means the bundle is clean.
std::vector<Violation> validate_image_bundle(const ImageRecord& record,
                                             std::span<const ObjectAnn> objects,
                                             std::span<const RelationTriplet> relations,
                                             std::span<const RegionDesc> regions);
std::vector<Violation> validate_image_bundle(const ImageBundle& bundle);

// Turn alternation, roles, and the no-residual-placeholder rule.
std::vector<Violation> validate_dialogue(const DialogueSample& sample);

// Lowercase, trimmed, internal whitespace collapsed to single spaces.
std::string canonical_category(std::string_view raw);

std::string trim(std::string_view s);

// True when the text still contains a template placeholder token "<word>".
bool contains_placeholder(std::string_view text);

const char* to_string(Task t);
const char* to_string(Role r);
const char* to_string(ExprSource s);
std::optional<Task> task_from_string(std::string_view s);
std::optional<Role> role_from_string(std::string_view s);
std::optional<ExprSource> expr_source_from_string(std::string_view s);

}  // namespace rcgen
