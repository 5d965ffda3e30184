#include "rcgen/ingest.hpp"

#include <istream>
#include <map>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include "rcgen/errors.hpp"
#include "rcgen/geometry.hpp"
#include "rcgen/json_codec.hpp"
#include "rcgen/json_stream.hpp"
#include "rcgen/taskgen.hpp"

namespace rcgen {

using nlohmann::json;

CorpusStats& CorpusStats::operator+=(const CorpusStats& o) {
    image_count += o.image_count;
    object_count += o.object_count;
    relation_count += o.relation_count;
    region_count += o.region_count;
    images_dropped_by_object_cap += o.images_dropped_by_object_cap;
    objects_dropped_by_area += o.objects_dropped_by_area;
    images_dropped_invalid += o.images_dropped_invalid;
    objects_dropped_invalid += o.objects_dropped_invalid;
    relations_dropped_invalid += o.relations_dropped_invalid;
    regions_dropped_invalid += o.regions_dropped_invalid;
    return *this;
}

namespace {

// VG-style files carry numeric ids; the model uses strings everywhere.
std::string id_to_string(const json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<int64_t>());
    if (j.is_number_unsigned()) return std::to_string(j.get<uint64_t>());
    throw json::type_error::create(302, "id must be a string or integer", &j);
}

struct RawObject {
    std::string object_id;
    double x = 0, y = 0, w = 0, h = 0;
    std::string category;
};

struct RawRegion {
    double x = 0, y = 0, w = 0, h = 0;
    std::string phrase;
};

struct PendingImage {
    ImageRecord rec;  // width/height zero until some record supplies them
    std::vector<RawObject> objects;
    std::vector<RelationTriplet> relations;
    std::vector<RawRegion> regions;
};

class SceneGraphAccumulator {
public:
    void consume(const json& record, size_t offset) {
        try {
            consume_checked(record, offset);
        } catch (const json::exception& ex) {
            throw ParseError(std::string("scene-graph record: ") + ex.what(), offset);
        }
    }

    void consume_checked(const json& record, size_t offset) {
        if (!record.is_object())
            throw ParseError("scene-graph record is not an object", offset);
        auto id_it = record.find("image_id");
        if (id_it == record.end())
            throw ParseError("scene-graph record missing image_id", offset);
        PendingImage& img = at(id_to_string(*id_it));

        if (record.contains("width") && record.contains("height") && img.rec.width == 0) {
            img.rec.width = record["width"].get<int>();
            img.rec.height = record["height"].get<int>();
        }
        if (record.contains("uri") && img.rec.uri.empty()) img.rec.uri = record["uri"];

        if (auto it = record.find("objects"); it != record.end()) {
            for (const auto& o : *it) {
                RawObject raw;
                raw.object_id = id_to_string(o.at("object_id"));
                raw.x = o.at("x").get<double>();
                raw.y = o.at("y").get<double>();
                raw.w = o.at("w").get<double>();
                raw.h = o.at("h").get<double>();
                if (auto names = o.find("names"); names != o.end() && !names->empty())
                    raw.category = canonical_category(names->front().get<std::string>());
                img.objects.push_back(std::move(raw));
            }
        }
        if (auto it = record.find("relationships"); it != record.end()) {
            for (const auto& r : *it)
                img.relations.push_back({id_to_string(r.at("subject_id")),
                                         r.at("predicate").get<std::string>(),
                                         id_to_string(r.at("object_id"))});
        }
        if (auto it = record.find("regions"); it != record.end()) {
            for (const auto& r : *it) {
                RawRegion raw;
                raw.x = r.at("x").get<double>();
                raw.y = r.at("y").get<double>();
                raw.w = r.at("w").get<double>();
                raw.h = r.at("h").get<double>();
                raw.phrase = r.at("phrase").get<std::string>();
                img.regions.push_back(std::move(raw));
            }
        }
    }

    LoadResult finalize() {
        LoadResult out;
        for (const std::string& id : order_) {
            PendingImage& img = images_.at(id);
            if (img.rec.width < 1 || img.rec.height < 1) {
                // no usable dimensions ever arrived for this image
                out.stats.images_dropped_invalid += 1;
                out.stats.objects_dropped_invalid += static_cast<int64_t>(img.objects.size());
                out.stats.relations_dropped_invalid += static_cast<int64_t>(img.relations.size());
                out.stats.regions_dropped_invalid += static_cast<int64_t>(img.regions.size());
                continue;
            }
            ImageBundle bundle;
            bundle.image = img.rec;

            std::unordered_set<std::string> ids;
            for (const RawObject& raw : img.objects) {
                PixelBox box = clamp_to_image({raw.x, raw.y, raw.x + raw.w, raw.y + raw.h},
                                              img.rec.width, img.rec.height);
                bool ok = box.x_min < box.x_max && box.y_min < box.y_max &&
                          !raw.category.empty() && ids.insert(raw.object_id).second;
                if (!ok) {
                    out.stats.objects_dropped_invalid += 1;
                    continue;
                }
                bundle.objects.push_back({raw.object_id, img.rec.image_id, box, raw.category});
            }
            for (const RelationTriplet& rel : img.relations) {
                bool ok = rel.subject_id != rel.object_id && ids.contains(rel.subject_id) &&
                          ids.contains(rel.object_id) && !rel.predicate.empty();
                if (!ok) {
                    out.stats.relations_dropped_invalid += 1;
                    continue;
                }
                bundle.relations.push_back(rel);
            }
            for (const RawRegion& raw : img.regions) {
                PixelBox box = clamp_to_image({raw.x, raw.y, raw.x + raw.w, raw.y + raw.h},
                                              img.rec.width, img.rec.height);
                std::string phrase = trim(raw.phrase);
                if (!(box.x_min < box.x_max) || !(box.y_min < box.y_max) || phrase.empty()) {
                    out.stats.regions_dropped_invalid += 1;
                    continue;
                }
                bundle.regions.push_back({img.rec.image_id, box, phrase});
            }

            out.stats.image_count += 1;
            out.stats.object_count += static_cast<int64_t>(bundle.objects.size());
            out.stats.relation_count += static_cast<int64_t>(bundle.relations.size());
            out.stats.region_count += static_cast<int64_t>(bundle.regions.size());
            out.bundles.push_back(std::move(bundle));
        }
        return out;
    }

private:
    PendingImage& at(const std::string& id) {
        auto [it, inserted] = images_.try_emplace(id);
        if (inserted) {
            it->second.rec.image_id = id;
            order_.push_back(id);
        }
        return it->second;
    }

    std::unordered_map<std::string, PendingImage> images_;
    std::vector<std::string> order_;  // first-seen order keeps output deterministic
};

}  // namespace

LoadResult load_scene_graph(std::istream& objects_source, std::istream* relations_source,
                            std::istream* regions_source) {
    SceneGraphAccumulator acc;
    auto consume = [&](json record, size_t offset) { acc.consume(record, offset); };
    for_each_record(objects_source, consume);
    if (relations_source) for_each_record(*relations_source, consume);
    if (regions_source) for_each_record(*regions_source, consume);
    return acc.finalize();
}

LoadResult load_detection(std::istream& source) {
    struct RawAnn {
        std::string object_id;
        int64_t category_id = 0;
        double x = 0, y = 0, w = 0, h = 0;
    };
    std::vector<ImageRecord> images;
    std::unordered_set<std::string> image_ids;
    std::unordered_map<std::string, std::vector<RawAnn>> anns;
    std::map<int64_t, std::string> categories;
    int64_t dup_images = 0;

    auto consume = [&](std::string_view section, const json& element) {
        if (section == "images") {
            ImageRecord rec;
            rec.image_id = id_to_string(element.at("id"));
            rec.uri = element.value("file_name", "");
            rec.width = element.value("width", 0);
            rec.height = element.value("height", 0);
            if (!image_ids.insert(rec.image_id).second) {
                ++dup_images;
                return;
            }
            images.push_back(std::move(rec));
        } else if (section == "annotations") {
            RawAnn ann;
            ann.object_id = id_to_string(element.at("id"));
            ann.category_id = element.at("category_id").get<int64_t>();
            const auto& bbox = element.at("bbox");
            if (!bbox.is_array() || bbox.size() != 4)
                throw ParseError("annotation bbox must be [x,y,w,h]", 0);
            ann.x = bbox[0].get<double>();
            ann.y = bbox[1].get<double>();
            ann.w = bbox[2].get<double>();
            ann.h = bbox[3].get<double>();
            anns[id_to_string(element.at("image_id"))].push_back(std::move(ann));
        } else if (section == "categories") {
            categories[element.at("id").get<int64_t>()] =
                canonical_category(element.at("name").get<std::string>());
        }
    };
    for_each_coco_element(source, [&](std::string_view section, json element) {
        try {
            consume(section, element);
        } catch (const json::exception& ex) {
            throw ParseError(std::string("detection record: ") + ex.what(), 0);
        }
    });

    LoadResult out;
    out.stats.images_dropped_invalid += dup_images;
    for (const ImageRecord& rec : images) {
        auto it = anns.find(rec.image_id);
        size_t ann_count = it == anns.end() ? 0 : it->second.size();
        if (rec.width < 1 || rec.height < 1) {
            out.stats.images_dropped_invalid += 1;
            out.stats.objects_dropped_invalid += static_cast<int64_t>(ann_count);
            continue;
        }
        ImageBundle bundle;
        bundle.image = rec;
        std::unordered_set<std::string> ids;
        if (it != anns.end()) {
            for (const RawAnn& ann : it->second) {
                PixelBox box = clamp_to_image({ann.x, ann.y, ann.x + ann.w, ann.y + ann.h},
                                              rec.width, rec.height);
                auto cat = categories.find(ann.category_id);
                bool ok = box.x_min < box.x_max && box.y_min < box.y_max &&
                          cat != categories.end() && !cat->second.empty() &&
                          ids.insert(ann.object_id).second;
                if (!ok) {
                    out.stats.objects_dropped_invalid += 1;
                    continue;
                }
                bundle.objects.push_back({ann.object_id, rec.image_id, box, cat->second});
            }
        }
        out.stats.image_count += 1;
        out.stats.object_count += static_cast<int64_t>(bundle.objects.size());
        out.bundles.push_back(std::move(bundle));
    }
    return out;
}

BootstrapFilterResult filter_for_bootstrap(std::vector<ImageBundle> bundles, int max_objects,
                                           double min_area) {
    BootstrapFilterResult out;
    for (auto& bundle : bundles) {
        if (max_objects > 0 && bundle.objects.size() > static_cast<size_t>(max_objects)) {
            out.stats.images_dropped_by_object_cap += 1;
            continue;
        }
        std::vector<std::string> candidates;
        for (const ObjectAnn& obj : bundle.objects) {
            // a candidate must also render at wire precision, or it cannot be
            // prompted at all
            if (area(obj.box) > min_area && coord_text(obj.box, bundle.image)) {
                candidates.push_back(obj.object_id);
            } else {
                out.stats.objects_dropped_by_area += 1;
            }
        }
        out.stats.image_count += 1;
        out.stats.object_count += static_cast<int64_t>(bundle.objects.size());
        out.stats.relation_count += static_cast<int64_t>(bundle.relations.size());
        out.stats.region_count += static_cast<int64_t>(bundle.regions.size());
        out.bundles.push_back(std::move(bundle));
        out.candidates.push_back(std::move(candidates));
    }
    return out;
}

void write_bundles(std::ostream& out, std::span<const ImageBundle> bundles) {
    for (const ImageBundle& b : bundles) out << json(b).dump() << '\n';
}

std::vector<ImageBundle> read_bundles(std::istream& in) {
    std::vector<ImageBundle> out;
    for_each_record(in, [&](json record, size_t offset) {
        try {
            out.push_back(record.get<ImageBundle>());
        } catch (const json::exception& ex) {
            throw ParseError(std::string("bundle record: ") + ex.what(), offset);
        }
    });
    return out;
}

}  // namespace rcgen
