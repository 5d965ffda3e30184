// Acceptance suite. Each criterion prints one line:
//   [n] name ................ PASS (detail)
// and the binary exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rcgen/assemble.hpp"
#include "rcgen/bootstrap.hpp"
#include "rcgen/eval.hpp"
#include "rcgen/ingest.hpp"
#include "rcgen/parallel.hpp"
#include "rcgen/rng.hpp"
#include "rcgen/taskgen.hpp"

using namespace rcgen;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Check {
    bool ok = true;
    std::string detail;

    void fail(const std::string& why) {
        ok = false;
        if (!detail.empty()) detail += "; ";
        detail += why;
    }
    void note(const std::string& info) {
        if (ok && detail.empty()) detail = info;
    }
    void require(bool cond, const std::string& why) {
        if (!cond) fail(why);
    }
};

NormBox random_box(Rng& rng, double min_span) {
    auto span = [&](double& lo, double& hi) {
        double a = rng.unit(), b = rng.unit();
        lo = std::min(a, b);
        hi = std::max(a, b);
        if (hi - lo < min_span) {
            hi = std::min(1.0, lo + min_span);
            lo = hi - min_span;
        }
    };
    NormBox box;
    span(box.x_min, box.x_max);
    span(box.y_min, box.y_max);
    return box;
}

// ---------------------------------------------------------------- criterion 1

Check codec_round_trip() {
    Check c;
    auto start = Clock::now();
    Rng rng(20240811);
    double max_err = 0;
    for (int i = 0; i < 10000; ++i) {
        NormBox box = random_box(rng, 0.002);
        auto text = quantize(box);
        if (!text) {
            c.fail("quantize rejected a valid box");
            break;
        }
        auto scan = parse_coords(*text);
        if (scan.boxes.size() != 1 || scan.malformed != 0) {
            c.fail("grammar rejected quantize output: " + *text);
            break;
        }
        const NormBox& parsed = scan.boxes.front();
        for (auto [got, want] : {std::pair{parsed.x_min, box.x_min},
                                 {parsed.y_min, box.y_min},
                                 {parsed.x_max, box.x_max},
                                 {parsed.y_max, box.y_max}}) {
            max_err = std::max(max_err, std::abs(got - want));
        }
    }
    c.require(max_err <= 5e-4 + 1e-12,
              "coordinate error above half step: " + std::to_string(max_err));
    double elapsed = seconds_since(start);
    c.require(elapsed < 1.0, "runtime over 1 s");
    char buf[128];
    std::snprintf(buf, sizeof(buf), "10000 boxes, max err %.2e, %.3f s", max_err, elapsed);
    c.note(buf);
    return c;
}

// ---------------------------------------------------------------- criterion 2

double raster_iou(const NormBox& a, const NormBox& b) {
    const int n = 1000;
    int64_t inter = 0, uni = 0;
    for (int y = 0; y < n; ++y) {
        double cy = (y + 0.5) / n;
        bool ay = cy > a.y_min && cy < a.y_max;
        bool by = cy > b.y_min && cy < b.y_max;
        if (!ay && !by) continue;
        for (int x = 0; x < n; ++x) {
            double cx = (x + 0.5) / n;
            bool in_a = ay && cx > a.x_min && cx < a.x_max;
            bool in_b = by && cx > b.x_min && cx < b.x_max;
            inter += (in_a && in_b) ? 1 : 0;
            uni += (in_a || in_b) ? 1 : 0;
        }
    }
    return uni > 0 ? static_cast<double>(inter) / static_cast<double>(uni) : 0.0;
}

Check iou_oracle() {
    Check c;
    auto start = Clock::now();
    Rng rng(7151);
    const int pairs = 1000;
    std::vector<std::pair<NormBox, NormBox>> fixture(pairs);
    for (auto& [a, b] : fixture) {
        a = random_box(rng, 0.05);
        b = random_box(rng, 0.05);
    }
    std::vector<double> deviation(pairs);
    parallel_for(pairs, effective_threads(0), [&](size_t i) {
        const auto& [a, b] = fixture[i];
        deviation[i] = std::abs(iou(a, b) - raster_iou(a, b));
    });
    double max_dev = *std::max_element(deviation.begin(), deviation.end());
    c.require(max_dev <= 0.02, "raster deviation " + std::to_string(max_dev));
    for (const auto& [a, b] : fixture) {
        if (iou(a, b) != iou(b, a)) c.fail("symmetry violated");
        if (iou(a, a) != 1.0 || iou(b, b) != 1.0) c.fail("identity violated");
    }
    double elapsed = seconds_since(start);
    c.require(elapsed < 30.0, "runtime over 30 s");
    char buf[128];
    std::snprintf(buf, sizeof(buf), "1000 pairs, max |analytic-raster| %.4f, %.1f s", max_dev,
                  elapsed);
    c.note(buf);
    return c;
}

// ---------------------------------------------------------------- criterion 3

Check filter_boundaries() {
    Check c;
    auto start = Clock::now();
    std::vector<ImageBundle> bundles;
    for (int n : {14, 15, 16}) {
        ImageBundle b;
        b.image = {"img" + std::to_string(n), "", 1000, 1000};
        for (int i = 0; i < n; ++i) {
            double x = 10.0 + 60.0 * (i % 10), y = 10.0 + 60.0 * (i / 10);
            b.objects.push_back(
                {"o" + std::to_string(i), b.image.image_id, {x, y, x + 50, y + 50}, "thing"});
        }
        bundles.push_back(std::move(b));
    }
    auto capped = filter_for_bootstrap(std::move(bundles), 15, 2000.0);
    c.require(capped.bundles.size() == 2, "cap dropped the wrong number of images");
    c.require(capped.stats.images_dropped_by_object_cap == 1, "cap counter wrong");
    for (const auto& b : capped.bundles)
        c.require(b.image.image_id != "img16", "16-object image survived");

    ImageBundle areas;
    areas.image = {"areas", "", 4000, 4000};
    areas.objects = {{"a1999", "areas", {0, 0, 1, 1999}, "x"},
                     {"a2000", "areas", {100, 0, 140, 50}, "x"},
                     {"a2001", "areas", {200, 0, 203, 667}, "x"}};
    auto filtered = filter_for_bootstrap({areas}, 15, 2000.0);
    c.require(filtered.candidates.size() == 1 &&
                  filtered.candidates[0] == std::vector<std::string>{"a2001"},
              "area boundary: only 2001 px^2 may be a candidate");
    c.require(filtered.bundles[0].objects.size() == 3,
              "non-candidates must stay for task generation");
    double elapsed = seconds_since(start);
    c.require(elapsed < 1.0, "runtime over 1 s");
    c.note("cap 14/15/16 and area 1999/2000/2001 behave exactly");
    return c;
}

// ---------------------------------------------------------------- criterion 4

class PerfectOracle : public ModelClient {
public:
    std::string describe(const ImageRecord&, const std::string& coord_text) override {
        std::string token = "item";
        for (char ch : coord_text)
            if (ch >= '0' && ch <= '9') token += ch;
        memory_[token] = coord_text;
        return "the " + token;
    }
    std::string ground(const ImageRecord&, const std::string& description) override {
        for (const auto& [token, coord] : memory_)
            if (description.find(token) != std::string::npos) return coord;
        return "lost";
    }

private:
    std::map<std::string, std::string> memory_;
};

class CornerOracle : public ModelClient {
public:
    std::string describe(const ImageRecord&, const std::string&) override { return "something"; }
    std::string ground(const ImageRecord&, const std::string&) override {
        return "[0.990,0.990,0.999,0.999]";
    }
};

class JitterOracle : public ModelClient {
public:
    explicit JitterOracle(double delta) : delta_(delta) {}

    std::string describe(const ImageRecord&, const std::string& coord_text) override {
        std::string token = "spot";
        for (char ch : coord_text)
            if (ch >= '0' && ch <= '9') token += ch;
        memory_[token] = parse_coords(coord_text).boxes.front();
        return token;
    }
    std::string ground(const ImageRecord&, const std::string& description) override {
        auto it = memory_.find(description);
        if (it == memory_.end()) return "lost";
        return shifted_text(it->second, delta_);
    }

    static std::string shifted_text(const NormBox& box, double delta) {
        NormBox s{std::min(1.0, box.x_min + delta), std::min(1.0, box.y_min + delta),
                  std::min(1.0, box.x_max + delta), std::min(1.0, box.y_max + delta)};
        auto text = quantize(s);
        return text ? *text : "nowhere";
    }

private:
    double delta_;
    std::map<std::string, NormBox> memory_;
};

double independent_iou(const NormBox& a, const NormBox& b) {
    double x0 = std::max(a.x_min, b.x_min), y0 = std::max(a.y_min, b.y_min);
    double x1 = std::min(a.x_max, b.x_max), y1 = std::min(a.y_max, b.y_max);
    double inter = (x1 > x0 && y1 > y0) ? (x1 - x0) * (y1 - y0) : 0.0;
    double uni = (a.x_max - a.x_min) * (a.y_max - a.y_min) +
                 (b.x_max - b.x_min) * (b.y_max - b.y_min) - inter;
    return uni > 0 ? inter / uni : 0.0;
}

BootstrapFilterResult bootstrap_fixture() {
    std::vector<ImageBundle> bundles;
    Rng rng(71);
    for (int i = 0; i < 40; ++i) {
        ImageBundle b;
        b.image = {"img" + std::to_string(100 + i), "", 1000, 1000};
        for (int o = 0; o < 5; ++o) {
            double x = 50 + rng.below(500), y = 50 + rng.below(500);
            double w = 60 + rng.below(80), h = 60 + rng.below(80);
            b.objects.push_back({"obj" + std::to_string(o), b.image.image_id,
                                 {x, y, x + w, y + h},
                                 "thing"});
        }
        bundles.push_back(std::move(b));
    }
    return filter_for_bootstrap(std::move(bundles), 15, 2000.0);
}

Check bootstrap_end_to_end() {
    Check c;
    auto start = Clock::now();
    auto input = bootstrap_fixture();
    BootstrapConfig config;

    auto perfect = run_bootstrap([] { return std::make_unique<PerfectOracle>(); }, input, config);
    c.require(perfect.report.generated == 200, "fixture should generate 200 records");
    c.require(perfect.report.retained == perfect.report.generated,
              "perfect oracle must retain 100%");

    auto corner = run_bootstrap([] { return std::make_unique<CornerOracle>(); }, input, config);
    c.require(corner.report.retained == 0, "corner oracle must retain 0%");

    for (double delta : {0.01, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3}) {
        auto out = run_bootstrap([delta] { return std::make_unique<JitterOracle>(delta); }, input, config);
        // independent pass: apply iou >= lambda directly to the oracle's answer
        size_t checked = 0;
        for (size_t bi = 0; bi < input.bundles.size(); ++bi) {
            const ImageBundle& b = input.bundles[bi];
            for (const auto& obj : b.objects) {
                bool is_candidate = false;
                for (const auto& id : input.candidates[bi])
                    is_candidate = is_candidate || id == obj.object_id;
                if (!is_candidate) continue;
                auto gt = normalize(obj.box, b.image.width, b.image.height);
                auto scan = parse_coords(JitterOracle::shifted_text(*gt, delta));
                bool expect = !scan.boxes.empty() &&
                              independent_iou(*gt, scan.boxes.front()) >= config.lambda;
                const ReferringExpression* rec = nullptr;
                for (const auto& e : out.expressions)
                    if (e.image_id == b.image.image_id && e.box == obj.box) rec = &e;
                if (!rec) {
                    c.fail("missing record for a candidate");
                    continue;
                }
                if (rec->retained != expect) {
                    c.fail("retained set deviates from brute force at delta " +
                           std::to_string(delta));
                }
                ++checked;
            }
        }
        c.require(checked == 200, "brute-force pass must cover every candidate");
        c.require(out.report.generated == out.report.retained + out.report.filtered +
                                              out.report.no_box_parsed,
                  "report conservation violated");
    }

    // retained count non-increasing as lambda sweeps 0 -> 1
    auto sweep_base = run_bootstrap([] { return std::make_unique<JitterOracle>(0.08); }, input, config);
    int64_t previous = sweep_base.report.generated + 1;
    for (double lambda = 0.0; lambda <= 1.0001; lambda += 0.05) {
        auto records = sweep_base.expressions;
        auto report = refilter(records, lambda);
        c.require(report.retained <= previous, "retention increased along the lambda sweep");
        previous = report.retained;
    }

    double elapsed = seconds_since(start);
    c.require(elapsed < 10.0, "runtime over 10 s");
    char buf[128];
    std::snprintf(buf, sizeof(buf), "200-object fixture, 3 oracles, lambda sweep, %.1f s",
                  elapsed);
    c.note(buf);
    return c;
}

// ---------------------------------------------------------------- criterion 5

std::vector<ImageBundle> taskgen_fixture() {
    const char* cats[] = {"zebra", "yak", "walrus"};
    const char* preds[] = {"wearing", "holding"};
    std::vector<ImageBundle> bundles;
    for (int i = 0; i < 10; ++i) {
        ImageBundle b;
        b.image = {"fix" + std::to_string(i), "", 1000, 1000};
        int k = 3 + (i % 4);
        for (int j = 0; j < k; ++j) {
            double x0 = 50.0 + 300.0 * (j % 3), y0 = 50.0 + 300.0 * (j / 3);
            double size = 150.0 + 10.0 * j;
            b.objects.push_back({"o" + std::to_string(j), b.image.image_id,
                                 {x0, y0, x0 + size, y0 + size},
                                 cats[j % 3]});
        }
        for (int j = 1; j < k && j <= 3; ++j)
            b.relations.push_back({"o0", preds[i % 2], "o" + std::to_string(j)});
        if (k >= 3) b.relations.push_back({"o1", "chasing", "o2"});
        bundles.push_back(std::move(b));
    }
    return bundles;
}

// independent center-quadrant classification, written out in full
int independent_quadrant(const PixelBox& ref, const PixelBox& cand) {
    double rx = (ref.x_min + ref.x_max) / 2, ry = (ref.y_min + ref.y_max) / 2;
    double cx = (cand.x_min + cand.x_max) / 2, cy = (cand.y_min + cand.y_max) / 2;
    if (cx < rx && cy < ry) return 0;   // top-left
    if (cx >= rx && cy < ry) return 1;  // top-right
    if (cx < rx && cy >= ry) return 2;  // bottom-left
    return 3;                           // bottom-right
}

std::vector<const ObjectAnn*> independent_reading_order(std::vector<const ObjectAnn*> v) {
    std::sort(v.begin(), v.end(), [](const ObjectAnn* a, const ObjectAnn* b) {
        if (a->box.y_min != b->box.y_min) return a->box.y_min < b->box.y_min;
        if (a->box.x_min != b->box.x_min) return a->box.x_min < b->box.x_min;
        return a->object_id < b->object_id;
    });
    return v;
}

const ObjectAnn* object_by_coord(const ImageBundle& b, const NormBox& parsed) {
    for (const auto& obj : b.objects) {
        auto n = normalize(obj.box, b.image.width, b.image.height);
        if (n && independent_iou(*n, parsed) > 0.999) return &obj;
    }
    return nullptr;
}

std::string render_expected(const std::vector<const ObjectAnn*>& objs, const ImageBundle& b,
                            int mode) {  // 0 coords, 1 categories, 2 pairs
    std::string out;
    for (const ObjectAnn* o : objs) {
        std::string token;
        if (mode != 1) token = *coord_text(o->box, b.image);
        if (mode == 1) token = o->category;
        if (mode == 2) token += " " + o->category;
        if (!out.empty()) out += ' ';
        out += token;
    }
    return out;
}

Check taskgen_oracles() {
    Check c;
    const TemplateBank& bank = TemplateBank::builtin();
    auto bundles = taskgen_fixture();
    static const char* position_names[] = {"top-left", "top-right", "bottom-left", "bottom-right"};
    int verified = 0;

    for (const auto& b : bundles) {
        for (uint64_t seed = 1; seed <= 5; ++seed) {
            // counting: answer equals a brute-force category count
            for (int variant : {1, 2}) {
                auto s = gen_counting(b, {Task::counting, variant, seed}, bank);
                if (!s) continue;
                std::string category;
                if (variant == 1) {
                    for (const char* cat : {"zebra", "yak", "walrus"})
                        if (s->turns[0].text.find(cat) != std::string::npos) category = cat;
                } else {
                    auto scan = parse_coords(s->turns[0].text);
                    const ObjectAnn* exemplar =
                        scan.boxes.empty() ? nullptr : object_by_coord(b, scan.boxes.front());
                    if (!exemplar) {
                        c.fail("counting exemplar not resolvable");
                        continue;
                    }
                    category = exemplar->category;
                }
                int64_t expected = 0;
                for (const auto& o : b.objects) expected += o.category == category ? 1 : 0;
                if (s->turns[1].text != std::to_string(expected))
                    c.fail("counting answer mismatch on " + b.image.image_id);
                ++verified;
            }

            // detection: all same-category boxes in reading order
            for (int variant : {1, 2}) {
                auto s = gen_detection(b, {Task::detection, variant, seed}, bank);
                if (!s) continue;
                std::string category;
                if (variant == 1) {
                    for (const char* cat : {"zebra", "yak", "walrus"})
                        if (s->turns[0].text.find(cat) != std::string::npos) category = cat;
                } else {
                    auto scan = parse_coords(s->turns[0].text);
                    const ObjectAnn* exemplar =
                        scan.boxes.empty() ? nullptr : object_by_coord(b, scan.boxes.front());
                    if (!exemplar) {
                        c.fail("detection exemplar not resolvable");
                        continue;
                    }
                    category = exemplar->category;
                }
                std::vector<const ObjectAnn*> expected;
                for (const auto& o : b.objects)
                    if (o.category == category) expected.push_back(&o);
                expected = independent_reading_order(std::move(expected));
                if (s->turns[1].text != render_expected(expected, b, 0))
                    c.fail("detection answer mismatch on " + b.image.image_id);
                ++verified;
            }

            // spatial: candidates of the named quadrant relative to the
            // reference box embedded in the instruction
            for (int variant : {1, 2, 3}) {
                auto s = gen_spatial(b, {Task::spatial, variant, seed}, bank);
                if (!s) continue;
                int position = -1;
                for (int p = 0; p < 4; ++p)
                    if (s->turns[0].text.find(position_names[p]) != std::string::npos)
                        position = p;
                auto scan = parse_coords(s->turns[0].text);
                const ObjectAnn* ref =
                    scan.boxes.empty() ? nullptr : object_by_coord(b, scan.boxes.front());
                if (position < 0 || !ref) {
                    c.fail("spatial instruction not parseable");
                    continue;
                }
                std::vector<const ObjectAnn*> expected;
                for (const auto& o : b.objects) {
                    if (&o == ref || o.box == ref->box) continue;
                    if (independent_quadrant(ref->box, o.box) == position) expected.push_back(&o);
                }
                expected = independent_reading_order(std::move(expected));
                int mode = variant == 1 ? 2 : (variant == 2 ? 1 : 0);
                if (expected.empty()) {
                    c.fail("generator emitted an empty quadrant");
                } else if (s->turns[1].text != render_expected(expected, b, mode)) {
                    c.fail("spatial answer mismatch on " + b.image.image_id);
                }
                ++verified;
            }

            // relation_qa: predicate of the (subject, object) pair in the turn
            {
                auto s = gen_relation_qa(b, {Task::relation_qa, 1, seed}, bank);
                if (s) {
                    auto scan = parse_coords(s->turns[0].text);
                    if (scan.boxes.size() != 2) {
                        c.fail("relation_qa must embed two boxes");
                    } else {
                        const ObjectAnn* subj = object_by_coord(b, scan.boxes[0]);
                        const ObjectAnn* obj = object_by_coord(b, scan.boxes[1]);
                        bool matched = false;
                        for (const auto& rel : b.relations)
                            if (subj && obj && rel.subject_id == subj->object_id &&
                                rel.object_id == obj->object_id)
                                matched = matched || s->turns[1].text == rel.predicate;
                        if (!matched) c.fail("relation_qa predicate mismatch");
                        ++verified;
                    }
                }
            }

            // relation_detect: all objects related to the subject via the
            // predicate named in the instruction
            for (int variant : {1, 2, 3}) {
                auto s = gen_relation_detect(b, {Task::relation_detect, variant, seed}, bank);
                if (!s) continue;
                std::string predicate;
                for (const char* p : {"wearing", "holding", "chasing"})
                    if (s->turns[0].text.find(p) != std::string::npos) predicate = p;
                auto scan = parse_coords(s->turns[0].text);
                const ObjectAnn* subj =
                    scan.boxes.empty() ? nullptr : object_by_coord(b, scan.boxes.front());
                if (predicate.empty() || !subj) {
                    c.fail("relation_detect instruction not parseable");
                    continue;
                }
                std::vector<const ObjectAnn*> expected;
                std::set<std::string> seen;
                for (const auto& rel : b.relations) {
                    if (rel.subject_id != subj->object_id || rel.predicate != predicate) continue;
                    if (!seen.insert(rel.object_id).second) continue;
                    for (const auto& o : b.objects)
                        if (o.object_id == rel.object_id) expected.push_back(&o);
                }
                expected = independent_reading_order(std::move(expected));
                int mode = variant == 1 ? 0 : (variant == 2 ? 1 : 2);
                if (expected.empty()) {
                    c.fail("relation_detect emitted with empty answer set");
                } else if (s->turns[1].text != render_expected(expected, b, mode)) {
                    c.fail("relation_detect answer mismatch on " + b.image.image_id);
                }
                ++verified;
            }
        }
    }
    c.require(verified >= 400, "too few generator draws verified: " + std::to_string(verified));
    c.note(std::to_string(verified) + " draws match brute-force enumeration");
    return c;
}

// ---------------------------------------------------------------- criterion 6

Check template_integrity() {
    Check c;
    const TemplateBank& bank = TemplateBank::builtin();

    // fuzzed bindings leave no residual placeholders
    Rng rng(606);
    auto fuzz = [&rng]() {
        std::string s;
        size_t len = 1 + rng.below(12);
        const char* alphabet = "abcdefghijklmnopqrstuvwxyz0123456789 .,";
        for (size_t i = 0; i < len; ++i) s += alphabet[rng.below(39)];
        return s;
    };
    int instantiations = 0;
    for (int round = 0; round < 20; ++round) {
        std::map<std::string, std::string> bindings;
        for (const char* name :
             {"object", "subject", "relation", "loc", "number", "category", "question", "options"})
            bindings[name] = fuzz();
        for (const auto& [key, templates] : bank.banks()) {
            for (const auto& tmpl : templates) {
                std::string text = instantiate_template(tmpl, bindings);
                if (contains_placeholder(text)) {
                    c.fail("residual placeholder in: " + tmpl);
                }
                ++instantiations;
            }
        }
    }

    // the loaded bank equals the frozen verbatim copy, bank by bank
    TemplateBank frozen =
        TemplateBank::load_file(std::string(RCGEN_TEST_DATA_DIR) + "/appendix_banks.txt");
    const std::map<std::pair<Task, int>, size_t> expected_sizes = {
        {{Task::relation_qa, 1}, 13},  {{Task::relation_detect, 1}, 18},
        {{Task::relation_detect, 2}, 17}, {{Task::relation_detect, 3}, 22},
        {{Task::spatial, 1}, 12},      {{Task::spatial, 2}, 11},
        {{Task::spatial, 3}, 12},      {{Task::counting, 1}, 17},
        {{Task::counting, 2}, 9},      {{Task::detection, 1}, 17},
        {{Task::detection, 2}, 18},    {{Task::multichoice_vqa, 1}, 12},
    };
    size_t total = 0;
    for (const auto& [key, size] : expected_sizes) {
        if (!frozen.has(key.first, key.second) || !bank.has(key.first, key.second)) {
            c.fail("missing bank");
            continue;
        }
        const auto& ours = bank.bank(key.first, key.second);
        const auto& reference = frozen.bank(key.first, key.second);
        if (ours.size() != size)
            c.fail(std::string("bank size mismatch for ") + to_string(key.first) + "#" +
                   std::to_string(key.second));
        std::multiset<std::string> a(ours.begin(), ours.end());
        std::multiset<std::string> r(reference.begin(), reference.end());
        if (a != r)
            c.fail(std::string("bank text deviates from the frozen copy: ") +
                   to_string(key.first) + "#" + std::to_string(key.second));
        total += ours.size();
    }
    c.require(total == 178, "twelve banks must hold 178 templates");
    c.note(std::to_string(instantiations) + " fuzzed instantiations, 178 templates verbatim");
    return c;
}

// ---------------------------------------------------------------- criterion 7

Check mixer_statistics() {
    Check c;
    auto start = Clock::now();
    std::vector<SourceStream> sources;
    for (const char* name : {"a", "b"}) {
        SourceStream s;
        s.name = name;
        for (int i = 0; i < 57; ++i) {
            DialogueSample d;
            d.image_id = std::string(name) + std::to_string(i);
            d.task = Task::counting;
            d.turns = {{Role::user, "how many?"}, {Role::assistant, "1"}};
            d.provenance = std::string(name) + ":" + generator_version();
            s.samples.push_back(std::move(d));
        }
        sources.push_back(std::move(s));
    }
    MixSpec spec;
    spec.entries = {{"a", 1.0}, {"b", 1.0}};
    spec.epoch_size = 10000;
    spec.seed = 2718;
    auto mixed = mix(sources, spec);
    double sigma = std::sqrt(10000 * 0.25);
    c.require(std::abs(mixed.draws["a"] - 5000) <= 3 * sigma,
              "source a count outside 3 sigma: " + std::to_string(mixed.draws["a"]));
    c.require(std::abs(mixed.draws["b"] - 5000) <= 3 * sigma,
              "source b count outside 3 sigma: " + std::to_string(mixed.draws["b"]));

    // single source: a seeded shuffle of the stream
    MixSpec single;
    single.entries = {{"a", 1.0}};
    single.seed = 5;
    auto shuffled = mix({sources[0]}, single);
    c.require(shuffled.samples.size() == sources[0].samples.size(),
              "single-source epoch defaults to the stream size");
    std::multiset<std::string> in_ids, out_ids;
    bool same_order = true;
    for (size_t i = 0; i < shuffled.samples.size(); ++i) {
        in_ids.insert(sources[0].samples[i].image_id);
        out_ids.insert(shuffled.samples[i].image_id);
        same_order =
            same_order && shuffled.samples[i].image_id == sources[0].samples[i].image_id;
    }
    c.require(in_ids == out_ids, "single-source mix must be a permutation");
    c.require(!same_order, "single-source mix must actually shuffle");

    // byte-identical corpora for equal seeds, any worker count
    Rng rng(31337);
    std::vector<ImageBundle> bundles;
    for (int i = 0; i < 50; ++i) {
        ImageBundle b;
        b.image = {"m" + std::to_string(i), "", 1000, 1000};
        for (int o = 0; o < 4; ++o) {
            double x = 50.0 + 200 * o, y = 50.0 + 150 * (o % 2);
            b.objects.push_back({"o" + std::to_string(o), b.image.image_id,
                                 {x, y, x + 120, y + 120},
                                 o % 2 ? "dog" : "cat"});
        }
        bundles.push_back(std::move(b));
    }
    std::vector<Task> allowed = {Task::counting, Task::detection, Task::spatial};
    auto one = materialize_source(bundles, allowed, TemplateBank::builtin(), 11, "m", 1);
    auto four = materialize_source(bundles, allowed, TemplateBank::builtin(), 11, "m", 4);
    std::ostringstream bytes_one, bytes_four;
    write_corpus(bytes_one, one);
    write_corpus(bytes_four, four);
    c.require(bytes_one.str() == bytes_four.str(),
              "worker count changed the serialized corpus");
    auto again = mix(sources, spec);
    std::ostringstream mix_a, mix_b;
    write_corpus(mix_a, mixed.samples);
    write_corpus(mix_b, again.samples);
    c.require(mix_a.str() == mix_b.str(), "equal seeds must give byte-identical mixes");

    double elapsed = seconds_since(start);
    c.require(elapsed < 5.0, "runtime over 5 s");
    char buf[128];
    std::snprintf(buf, sizeof(buf), "draws a=%lld b=%lld, %.2f s",
                  static_cast<long long>(mixed.draws["a"]),
                  static_cast<long long>(mixed.draws["b"]), elapsed);
    c.note(buf);
    return c;
}

// ---------------------------------------------------------------- criterion 8

Check eval_harness() {
    Check c;
    auto start = Clock::now();
    NormBox gt{0, 0, 0.5, 0.5};
    auto q = [](const NormBox& b) { return *quantize(b); };
    std::vector<EvalItem> grounding;
    auto add = [&](const std::string& id, const std::string& pred) {
        EvalItem item;
        item.item_id = id;
        item.task = EvalTask::grounding;
        item.gt_box = gt;
        item.prediction = pred;
        grounding.push_back(std::move(item));
    };
    add("hit1", q(gt));                      // iou 1.0
    add("hit2", q({0, 0, 0.5, 0.4}));        // 0.80
    add("hit3", q({0, 0, 0.4, 0.4}));        // 0.64
    add("hit4", q({0.1, 0.1, 0.5, 0.5}));    // 0.64
    add("hit5", q({0, 0, 0.5, 0.3}));        // 0.60
    add("hit6", q({0.05, 0, 0.5, 0.5}));     // 0.90
    add("hit7", q({0, 0, 0.25, 0.5}));       // 0.50 exactly
    add("miss1", q({0, 0, 0.2, 0.5}));       // 0.40
    add("miss2", q({0.5, 0.5, 1, 1}));       // disjoint
    add("miss3", "no box here");             // unparseable
    auto ground_result = eval_grounding(grounding, 0.5);
    c.require(ground_result.value == 70.0,
              "grounding fixture must score exactly 70.0, got " +
                  std::to_string(ground_result.value));

    EvalItem vqa_sat;
    vqa_sat.item_id = "sat";
    vqa_sat.task = EvalTask::vqa;
    vqa_sat.gt_answers = {"dog", "dog", "dog", "cat", "cat", "bird", "cow", "ant", "bee", "elk"};
    vqa_sat.prediction = "The DOG.";
    auto sat = eval_vqa({&vqa_sat, 1});
    c.require(sat.value == 100.0, "3+ matches must saturate to 1.0");

    EvalItem vqa_one = vqa_sat;
    vqa_one.gt_answers = {"dog", "cat", "bird"};
    auto one = eval_vqa({&vqa_one, 1});
    c.require(std::abs(one.value - 100.0 / 3.0) < 1e-9, "single match must score 1/3");

    // oracle predictions score 100% on every metric
    std::vector<EvalItem> oracle = grounding;
    for (auto& item : oracle) item.prediction = q(item.gt_box);
    c.require(eval_grounding(oracle, 0.5).value == 100.0, "oracle grounding must be 100%");
    EvalItem count_item;
    count_item.item_id = "c";
    count_item.task = EvalTask::counting;
    count_item.gt_count = 7;
    count_item.prediction = "7";
    c.require(eval_counting({&count_item, 1}).value == 100.0, "oracle counting must be 100%");
    EvalItem vqa_oracle = vqa_one;
    vqa_oracle.gt_answers = {"dog", "dog", "dog"};
    vqa_oracle.prediction = vqa_oracle.gt_answers.front();
    c.require(eval_vqa({&vqa_oracle, 1}).value == 100.0, "oracle vqa must be 100%");

    double elapsed = seconds_since(start);
    c.require(elapsed < 1.0, "runtime over 1 s");
    c.note("70.0% fixture, saturation, oracle 100%");
    return c;
}

// ---------------------------------------------------------------- criterion 9

Check report_conservation() {
    Check c;
    // the arithmetic identity from the reported full-scale run
    c.require(int64_t{4961822} - int64_t{2528619} == int64_t{2433203},
              "generated - filtered must equal retained");
    // and the invariant on an actual mock run
    auto input = bootstrap_fixture();
    BootstrapConfig config;
    auto out = run_bootstrap([] { return std::make_unique<JitterOracle>(0.12); }, input, config);
    c.require(out.report.generated ==
                  out.report.retained + out.report.filtered + out.report.no_box_parsed,
              "mock run violates report conservation");
    c.note("4961822 - 2528619 = 2433203; mock run conserves");
    return c;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Check()> run;
    };
    const std::vector<Criterion> criteria = {
        {"codec-round-trip", codec_round_trip},
        {"iou-oracle-equivalence", iou_oracle},
        {"filter-boundaries", filter_boundaries},
        {"bootstrap-end-to-end", bootstrap_end_to_end},
        {"taskgen-oracle-equivalence", taskgen_oracles},
        {"template-integrity", template_integrity},
        {"mixer-statistics", mixer_statistics},
        {"eval-harness", eval_harness},
        {"report-conservation", report_conservation},
    };

    bool all_ok = true;
    for (size_t i = 0; i < criteria.size(); ++i) {
        Check result;
        try {
            result = criteria[i].run();
        } catch (const std::exception& ex) {
            result.ok = false;
            result.detail = std::string("exception: ") + ex.what();
        }
        all_ok = all_ok && result.ok;
        std::string name = criteria[i].name;
        std::string dots(name.size() < 34 ? 34 - name.size() : 1, '.');
        std::printf("[%zu] %s %s %s%s%s\n", i + 1, name.c_str(), dots.c_str(),
                    result.ok ? "PASS" : "FAIL", result.detail.empty() ? "" : " — ",
                    result.detail.c_str());
    }
    return all_ok ? 0 : 1;
}
