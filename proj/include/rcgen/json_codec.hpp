#pragma once

#include <json.hpp>

#include "rcgen/annotation.hpp"

namespace rcgen {

// JSON shapes for the on-disk stores. Boxes serialize as 4-element arrays
// [x_min, y_min, x_max, y_max]; doubles round-trip exactly.

void to_json(nlohmann::json& j, const PixelBox& b);
void from_json(const nlohmann::json& j, PixelBox& b);

void to_json(nlohmann::json& j, const NormBox& b);
void from_json(const nlohmann::json& j, NormBox& b);

void to_json(nlohmann::json& j, const ImageRecord& r);
void from_json(const nlohmann::json& j, ImageRecord& r);

void to_json(nlohmann::json& j, const ObjectAnn& o);
void from_json(const nlohmann::json& j, ObjectAnn& o);

void to_json(nlohmann::json& j, const RelationTriplet& t);
void from_json(const nlohmann::json& j, RelationTriplet& t);

void to_json(nlohmann::json& j, const RegionDesc& r);
void from_json(const nlohmann::json& j, RegionDesc& r);

void to_json(nlohmann::json& j, const ReferringExpression& e);
void from_json(const nlohmann::json& j, ReferringExpression& e);

void to_json(nlohmann::json& j, const ImageBundle& b);
void from_json(const nlohmann::json& j, ImageBundle& b);

// Corpus record: {image, conversations: [{from, value}], task, provenance}.
void to_json(nlohmann::json& j, const DialogueSample& s);
void from_json(const nlohmann::json& j, DialogueSample& s);

}  // namespace rcgen
