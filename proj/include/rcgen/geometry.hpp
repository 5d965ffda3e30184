#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rcgen {

// Axis-aligned box in pixel coordinates, corners (x_min,y_min)-(x_max,y_max).
struct PixelBox {
    double x_min = 0, y_min = 0, x_max = 0, y_max = 0;
    bool operator==(const PixelBox&) const = default;
};

// Box normalized to [0,1] against the owning image size.
struct NormBox {
    double x_min = 0, y_min = 0, x_max = 0, y_max = 0;
    bool operator==(const NormBox&) const = default;
};

enum class CoarsePosition { top_left, top_right, bottom_left, bottom_right };

// Hyphenated lowercase name as used in instruction text ("top-left", ...).
const char* to_string(CoarsePosition pos);

double area(const PixelBox& b);
double area(const NormBox& b);
bool valid(const NormBox& b);  // strict corners, all components in [0,1]

// Clamps corners into [0,width] x [0,height]. May produce a degenerate box.
PixelBox clamp_to_image(const PixelBox& box, double width, double height);

// Clamp, then divide by image size. Rejects boxes that are degenerate after
// clamping or that would collapse at the 3-decimal wire precision.
std::optional<NormBox> normalize(const PixelBox& box, double width, double height);

// Canonical coordinate-as-text rendering: "[x_min,y_min,x_max,y_max]", each
// component rounded half-away-from-zero to exactly 3 decimals. Rejects boxes
// whose corners collapse under the rounding.
std::optional<std::string> quantize(const NormBox& b);

// Strict wire-grammar check for a whole string: '[' D ',' D ',' D ',' D ']'
// with D = ('0'|'1') '.' digit digit digit, values <= 1, corners ordered.
bool is_coord_text(std::string_view s);

struct CoordScan {
    std::vector<NormBox> boxes;  // well-formed tuples, in order of appearance
    int malformed = 0;           // closed tuples with bad arity/range/order
};

// Scans free-form text for bracketed coordinate tuples. Tolerates any number
// of fraction digits and internal spaces; 2-tuples "[x,y]" become degenerate
// point boxes. Only structurally closed numeric lists count as tuples.
CoordScan parse_coords(std::string_view text);

// Removes every bracketed numeric tuple from the text (well-formed or not),
// collapses whitespace runs and trims the ends.
std::string strip_coords(std::string_view text);

// Intersection over union; 0 when disjoint or degenerate.
double iou(const NormBox& a, const NormBox& b);

// Classifies the candidate's center against the reference's center. Ties
// break toward right/bottom. Absent when the boxes are identical.
std::optional<CoarsePosition> quadrant(const NormBox& reference, const NormBox& candidate);

}  // namespace rcgen
