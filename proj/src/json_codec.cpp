#include "rcgen/json_codec.hpp"

#include "rcgen/errors.hpp"

namespace rcgen {

using nlohmann::json;

namespace {

json box_array(double a, double b, double c, double d) { return json::array({a, b, c, d}); }

void read_box(const json& j, double& a, double& b, double& c, double& d) {
    if (!j.is_array() || j.size() != 4) throw json::type_error::create(302, "box must be [x0,y0,x1,y1]", &j);
    a = j[0].get<double>();
    b = j[1].get<double>();
    c = j[2].get<double>();
    d = j[3].get<double>();
}

}  // namespace

void to_json(json& j, const PixelBox& b) { j = box_array(b.x_min, b.y_min, b.x_max, b.y_max); }
void from_json(const json& j, PixelBox& b) { read_box(j, b.x_min, b.y_min, b.x_max, b.y_max); }

void to_json(json& j, const NormBox& b) { j = box_array(b.x_min, b.y_min, b.x_max, b.y_max); }
void from_json(const json& j, NormBox& b) { read_box(j, b.x_min, b.y_min, b.x_max, b.y_max); }

void to_json(json& j, const ImageRecord& r) {
    j = json{{"image_id", r.image_id}, {"uri", r.uri}, {"width", r.width}, {"height", r.height}};
}

void from_json(const json& j, ImageRecord& r) {
    j.at("image_id").get_to(r.image_id);
    r.uri = j.value("uri", "");
    j.at("width").get_to(r.width);
    j.at("height").get_to(r.height);
}

void to_json(json& j, const ObjectAnn& o) {
    j = json{{"object_id", o.object_id},
             {"image_id", o.image_id},
             {"box", o.box},
             {"category", o.category}};
}

void from_json(const json& j, ObjectAnn& o) {
    j.at("object_id").get_to(o.object_id);
    j.at("image_id").get_to(o.image_id);
    j.at("box").get_to(o.box);
    j.at("category").get_to(o.category);
}

void to_json(json& j, const RelationTriplet& t) {
    j = json{{"subject_id", t.subject_id}, {"predicate", t.predicate}, {"object_id", t.object_id}};
}

void from_json(const json& j, RelationTriplet& t) {
    j.at("subject_id").get_to(t.subject_id);
    j.at("predicate").get_to(t.predicate);
    j.at("object_id").get_to(t.object_id);
}

void to_json(json& j, const RegionDesc& r) {
    j = json{{"image_id", r.image_id}, {"box", r.box}, {"phrase", r.phrase}};
}

void from_json(const json& j, RegionDesc& r) {
    j.at("image_id").get_to(r.image_id);
    j.at("box").get_to(r.box);
    j.at("phrase").get_to(r.phrase);
}

void to_json(json& j, const ReferringExpression& e) {
    j = json{{"image_id", e.image_id}, {"box", e.box},           {"text", e.text},
             {"source", to_string(e.source)},                    {"retained", e.retained},
             {"predicted_box", nullptr},                         {"iou", nullptr}};
    if (e.predicted_box) j["predicted_box"] = *e.predicted_box;
    if (e.iou) j["iou"] = *e.iou;
}

void from_json(const json& j, ReferringExpression& e) {
    j.at("image_id").get_to(e.image_id);
    j.at("box").get_to(e.box);
    j.at("text").get_to(e.text);
    auto src = expr_source_from_string(j.at("source").get<std::string>());
    if (!src) throw json::type_error::create(302, "unknown expression source", &j);
    e.source = *src;
    j.at("retained").get_to(e.retained);
    e.predicted_box.reset();
    e.iou.reset();
    if (auto it = j.find("predicted_box"); it != j.end() && !it->is_null())
        e.predicted_box = it->get<PixelBox>();
    if (auto it = j.find("iou"); it != j.end() && !it->is_null()) e.iou = it->get<double>();
}

void to_json(json& j, const ImageBundle& b) {
    j = json{{"image", b.image},
             {"objects", b.objects},
             {"relations", b.relations},
             {"regions", b.regions}};
    if (!b.expressions.empty()) j["expressions"] = b.expressions;
}

void from_json(const json& j, ImageBundle& b) {
    j.at("image").get_to(b.image);
    b.objects = j.value("objects", std::vector<ObjectAnn>{});
    b.relations = j.value("relations", std::vector<RelationTriplet>{});
    b.regions = j.value("regions", std::vector<RegionDesc>{});
    b.expressions = j.value("expressions", std::vector<ReferringExpression>{});
}

void to_json(json& j, const DialogueSample& s) {
    json conversations = json::array();
    for (const auto& turn : s.turns)
        conversations.push_back(json{{"from", to_string(turn.role)}, {"value", turn.text}});
    j = json{{"image", s.image_id},
             {"conversations", std::move(conversations)},
             {"task", to_string(s.task)},
             {"provenance", s.provenance}};
}

void from_json(const json& j, DialogueSample& s) {
    j.at("image").get_to(s.image_id);
    auto task = task_from_string(j.at("task").get<std::string>());
    if (!task) throw json::type_error::create(302, "unknown task name", &j);
    s.task = *task;
    s.provenance = j.value("provenance", "");
    s.turns.clear();
    for (const auto& t : j.at("conversations")) {
        auto role = role_from_string(t.at("from").get<std::string>());
        if (!role) throw json::type_error::create(302, "unknown role name", &j);
        s.turns.push_back({*role, t.at("value").get<std::string>()});
    }
}

}  // namespace rcgen
