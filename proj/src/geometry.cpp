#include "rcgen/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace rcgen {

const char* to_string(CoarsePosition pos) {
    switch (pos) {
        case CoarsePosition::top_left: return "top-left";
        case CoarsePosition::top_right: return "top-right";
        case CoarsePosition::bottom_left: return "bottom-left";
        case CoarsePosition::bottom_right: return "bottom-right";
    }
    return "?";
}

double area(const PixelBox& b) {
    return std::max(0.0, b.x_max - b.x_min) * std::max(0.0, b.y_max - b.y_min);
}

double area(const NormBox& b) {
    return std::max(0.0, b.x_max - b.x_min) * std::max(0.0, b.y_max - b.y_min);
}

bool valid(const NormBox& b) {
    return b.x_min >= 0 && b.y_min >= 0 && b.x_max <= 1 && b.y_max <= 1 &&
           b.x_min < b.x_max && b.y_min < b.y_max;
}

PixelBox clamp_to_image(const PixelBox& box, double width, double height) {
    auto clamp = [](double v, double hi) { return std::min(std::max(v, 0.0), hi); };
    return {clamp(box.x_min, width), clamp(box.y_min, height),
            clamp(box.x_max, width), clamp(box.y_max, height)};
}

namespace {

// Half-away-from-zero rounding to thousandths; all coordinates are >= 0 here.
long milli(double v) { return std::llround(v * 1000.0); }

void append_milli(std::string& out, long m) {
    if (m >= 1000) {
        out += "1.000";
        return;
    }
    char buf[16];
    std::snprintf(buf, sizeof(buf), "0.%03d", static_cast<int>(m));
    out += buf;
}

}  // namespace

std::optional<NormBox> normalize(const PixelBox& box, double width, double height) {
    if (width < 1 || height < 1) return std::nullopt;
    PixelBox c = clamp_to_image(box, width, height);
    if (!(c.x_min < c.x_max) || !(c.y_min < c.y_max)) return std::nullopt;
    NormBox n{c.x_min / width, c.y_min / height, c.x_max / width, c.y_max / height};
    if (milli(n.x_min) == milli(n.x_max) || milli(n.y_min) == milli(n.y_max)) return std::nullopt;
    return n;
}

std::optional<std::string> quantize(const NormBox& b) {
    long x0 = milli(b.x_min), y0 = milli(b.y_min), x1 = milli(b.x_max), y1 = milli(b.y_max);
    for (long m : {x0, y0, x1, y1})
        if (m < 0 || m > 1000) return std::nullopt;
    if (x0 == x1 || y0 == y1) return std::nullopt;
    std::string out;
    out.reserve(28);
    out += '[';
    append_milli(out, x0);
    out += ',';
    append_milli(out, y0);
    out += ',';
    append_milli(out, x1);
    out += ',';
    append_milli(out, y1);
    out += ']';
    return out;
}

bool is_coord_text(std::string_view s) {
    // '[' D ',' D ',' D ',' D ']' with D = ('0'|'1') '.' ddd
    if (s.size() != 25 || s.front() != '[' || s.back() != ']') return false;
    double vals[4];
    size_t pos = 1;
    for (int i = 0; i < 4; ++i) {
        if (i > 0) {
            if (s[pos] != ',') return false;
            ++pos;
        }
        if (s[pos] != '0' && s[pos] != '1') return false;
        if (s[pos + 1] != '.') return false;
        for (int d = 2; d < 5; ++d)
            if (s[pos + d] < '0' || s[pos + d] > '9') return false;
        long m = (s[pos] - '0') * 1000 + (s[pos + 2] - '0') * 100 + (s[pos + 3] - '0') * 10 +
                 (s[pos + 4] - '0');
        if (m > 1000) return false;
        vals[i] = static_cast<double>(m) / 1000.0;
        pos += 5;
    }
    return vals[0] < vals[2] && vals[1] < vals[3];
}

namespace {

bool lex_number(std::string_view s, size_t& i, double& out) {
    size_t start = i;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
    if (i == start) return false;
    if (i < s.size() && s[i] == '.') {
        ++i;
        size_t frac = i;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
        if (i == frac) {
            i = start;
            return false;
        }
    }
    out = std::stod(std::string(s.substr(start, i - start)));
    return true;
}

void skip_blank(std::string_view s, size_t& i) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
}

struct Tuple {
    size_t begin = 0, end = 0;
    std::vector<double> nums;
};

// Attempts to read a bracketed numeric list starting at s[at] == '['.
std::optional<Tuple> lex_tuple(std::string_view s, size_t at) {
    Tuple t;
    t.begin = at;
    size_t i = at + 1;
    while (true) {
        skip_blank(s, i);
        double v;
        if (!lex_number(s, i, v)) return std::nullopt;
        t.nums.push_back(v);
        skip_blank(s, i);
        if (i < s.size() && s[i] == ',') {
            ++i;
            continue;
        }
        if (i < s.size() && s[i] == ']') {
            t.end = i + 1;
            return t;
        }
        return std::nullopt;
    }
}

}  // namespace

CoordScan parse_coords(std::string_view text) {
    CoordScan scan;
    size_t i = 0;
    while (i < text.size()) {
        if (text[i] != '[') {
            ++i;
            continue;
        }
        auto t = lex_tuple(text, i);
        if (!t) {
            ++i;  // not a tuple; keep scanning inside the bracket
            continue;
        }
        bool in_range = true;
        for (double v : t->nums) in_range = in_range && v >= 0.0 && v <= 1.0;
        if (t->nums.size() == 4 && in_range && t->nums[0] < t->nums[2] && t->nums[1] < t->nums[3]) {
            scan.boxes.push_back({t->nums[0], t->nums[1], t->nums[2], t->nums[3]});
        } else if (t->nums.size() == 2 && in_range) {
            // point-style reference, represented as a degenerate box
            scan.boxes.push_back({t->nums[0], t->nums[1], t->nums[0], t->nums[1]});
        } else {
            ++scan.malformed;
        }
        i = t->end;
    }
    return scan;
}

std::string strip_coords(std::string_view text) {
    std::string kept;
    kept.reserve(text.size());
    size_t i = 0;
    while (i < text.size()) {
        if (text[i] == '[') {
            if (auto t = lex_tuple(text, i)) {
                i = t->end;
                continue;
            }
        }
        kept += text[i++];
    }
    // collapse whitespace runs and trim
    std::string out;
    out.reserve(kept.size());
    bool pending_space = false;
    for (char c : kept) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out += ' ';
            pending_space = false;
        }
        out += c;
    }
    return out;
}

double iou(const NormBox& a, const NormBox& b) {
    double iw = std::min(a.x_max, b.x_max) - std::max(a.x_min, b.x_min);
    double ih = std::min(a.y_max, b.y_max) - std::max(a.y_min, b.y_min);
    if (iw <= 0 || ih <= 0) return 0.0;
    double inter = iw * ih;
    double uni = area(a) + area(b) - inter;
    return uni > 0 ? inter / uni : 0.0;
}

std::optional<CoarsePosition> quadrant(const NormBox& reference, const NormBox& candidate) {
    if (reference == candidate) return std::nullopt;
    double rx = (reference.x_min + reference.x_max) / 2;
    double ry = (reference.y_min + reference.y_max) / 2;
    double cx = (candidate.x_min + candidate.x_max) / 2;
    double cy = (candidate.y_min + candidate.y_max) / 2;
    if (cy < ry) return cx < rx ? CoarsePosition::top_left : CoarsePosition::top_right;
    return cx < rx ? CoarsePosition::bottom_left : CoarsePosition::bottom_right;
}

}  // namespace rcgen
