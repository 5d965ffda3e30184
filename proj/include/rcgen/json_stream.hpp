#pragma once

#include <functional>
#include <istream>
#include <string_view>

#include <json.hpp>

namespace rcgen {

// Streams records from either NDJSON (one JSON object per line) or a single
// top-level JSON array, auto-detected from the first non-space byte. Each
// record is handed to the callback with the byte offset it starts at (exact
// for NDJSON, end-of-element position for array documents). Memory stays
// bounded by the largest single record. Throws ParseError on corruption.
void for_each_record(std::istream& in,
                     const std::function<void(nlohmann::json, size_t)>& on_record);

// Streams a COCO-style document: the elements of the top-level "images",
// "annotations" and "categories" arrays are dispatched one at a time as
// (section, element). Other top-level keys are skipped. Also accepts the
// newline-delimited form where each line is a complete document of that
// shape. Throws ParseError on corruption.
void for_each_coco_element(
    std::istream& in, const std::function<void(std::string_view, nlohmann::json)>& on_element);

}  // namespace rcgen
