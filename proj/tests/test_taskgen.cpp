#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "rcgen/taskgen.hpp"

using namespace rcgen;
using rcgen::testing::basic_bundle;
using rcgen::testing::obj;

namespace {

const TemplateBank& bank() { return TemplateBank::builtin(); }

std::vector<std::string> tokens(const std::string& text) {
    std::istringstream in(text);
    std::vector<std::string> out;
    std::string t;
    while (in >> t) out.push_back(t);
    return out;
}

}  // namespace

TEST_CASE("gen_relation_qa answers with the predicate and embeds both boxes") {
    ImageBundle b;
    b.image = {"img", "", 1000, 1000};
    b.objects = {obj("man", "img", 100, 100, 500, 900, "man"),
                 obj("hat", "img", 200, 50, 400, 150, "hat")};
    b.relations = {{"man", "wearing", "hat"}};
    auto s = gen_relation_qa(b, {Task::relation_qa, 1, 7}, bank());
    REQUIRE(s.has_value());
    CHECK(s->turns[1].text == "wearing");
    CHECK(s->turns[0].text.find(*coord_text(b.objects[0].box, b.image)) != std::string::npos);
    CHECK(s->turns[0].text.find(*coord_text(b.objects[1].box, b.image)) != std::string::npos);
}

TEST_CASE("gen_relation_qa is deterministic for a fixed seed and skips without relations") {
    ImageBundle b = basic_bundle();
    auto s1 = gen_relation_qa(b, {Task::relation_qa, 1, 42}, bank());
    auto s2 = gen_relation_qa(b, {Task::relation_qa, 1, 42}, bank());
    REQUIRE(s1.has_value());
    CHECK(*s1 == *s2);

    b.relations.clear();
    CHECK_FALSE(gen_relation_qa(b, {Task::relation_qa, 1, 42}, bank()).has_value());
}

TEST_CASE("gen_relation_detect lists all related objects in reading order") {
    ImageBundle b;
    b.image = {"img", "", 1000, 1000};
    b.objects = {obj("s", "img", 400, 400, 600, 600, "table"),
                 obj("a", "img", 100, 700, 200, 800, "plate"),
                 obj("b", "img", 100, 100, 200, 200, "cup")};
    b.relations = {{"s", "under", "a"}, {"s", "under", "b"}};

    for (int variant : {1, 2, 3}) {
        auto s = gen_relation_detect(b, {Task::relation_detect, variant, 3}, bank());
        REQUIRE(s.has_value());
        auto toks = tokens(s->turns[1].text);
        // reading order: "b" (y=100) before "a" (y=700)
        if (variant == 1) {
            REQUIRE(toks.size() == 2);
            CHECK(toks[0] == *coord_text(b.objects[2].box, b.image));
            CHECK(toks[1] == *coord_text(b.objects[1].box, b.image));
        } else if (variant == 2) {
            REQUIRE(toks.size() == 2);
            CHECK(toks[0] == "cup");
            CHECK(toks[1] == "plate");
            CHECK(s->turns[1].text.find('[') == std::string::npos);
        } else {
            REQUIRE(toks.size() == 4);  // coord category coord category
            CHECK(toks[0] == *coord_text(b.objects[2].box, b.image));
            CHECK(toks[1] == "cup");
            CHECK(toks[2] == *coord_text(b.objects[1].box, b.image));
            CHECK(toks[3] == "plate");
        }
    }
}

TEST_CASE("gen_relation_detect dedupes repeated triplets") {
    ImageBundle b;
    b.image = {"img", "", 1000, 1000};
    b.objects = {obj("s", "img", 400, 400, 600, 600, "table"),
                 obj("a", "img", 100, 100, 200, 200, "cup")};
    b.relations = {{"s", "under", "a"}, {"s", "under", "a"}};
    auto s = gen_relation_detect(b, {Task::relation_detect, 1, 3}, bank());
    REQUIRE(s.has_value());
    CHECK(tokens(s->turns[1].text).size() == 1);
}

TEST_CASE("gen_spatial finds the only populated quadrant") {
    ImageBundle b;
    b.image = {"img", "", 1000, 1000};
    b.objects = {obj("ref", "img", 400, 400, 600, 600, "table"),
                 obj("up", "img", 100, 100, 200, 200, "lamp")};
    for (uint64_t seed = 0; seed < 8; ++seed) {
        auto s = gen_spatial(b, {Task::spatial, 3, seed}, bank());
        REQUIRE(s.has_value());
        // whichever object was drawn as reference, the other is in one corner
        bool mentions_top_left = s->turns[0].text.find("top-left") != std::string::npos;
        bool mentions_bottom_right = s->turns[0].text.find("bottom-right") != std::string::npos;
        CHECK((mentions_top_left || mentions_bottom_right));
        CHECK(tokens(s->turns[1].text).size() == 1);
    }
}

TEST_CASE("spatial_candidates: central reference sees one object per quadrant") {
    ImageBundle b;
    b.image = {"img", "", 1000, 1000};
    b.objects = {obj("ref", "img", 400, 400, 600, 600, "table"),  // center (500,500)
                 obj("tl", "img", 100, 100, 300, 300, "lamp"),
                 obj("tr", "img", 600, 100, 800, 300, "vase"),
                 obj("bl", "img", 100, 600, 300, 800, "sock"),
                 obj("br", "img", 600, 600, 800, 800, "shoe")};
    auto expect = [&](CoarsePosition pos, const char* id) {
        auto candidates = spatial_candidates(b, 0, pos);
        REQUIRE(candidates.size() == 1);
        CHECK(candidates[0]->object_id == id);
    };
    expect(CoarsePosition::top_left, "tl");
    expect(CoarsePosition::top_right, "tr");
    expect(CoarsePosition::bottom_left, "bl");
    expect(CoarsePosition::bottom_right, "br");

    // the generator then answers exactly the quadrant it asked about
    for (uint64_t seed = 0; seed < 16; ++seed) {
        auto s = gen_spatial(b, {Task::spatial, 3, seed}, bank());
        REQUIRE(s.has_value());
        CHECK(validate_dialogue(*s).empty());
    }
}

TEST_CASE("gen_spatial skips when every other box equals the reference") {
    ImageBundle b;
    b.image = {"img", "", 1000, 1000};
    b.objects = {obj("a", "img", 400, 400, 600, 600, "cup"),
                 obj("b", "img", 400, 400, 600, 600, "cup")};
    CHECK_FALSE(gen_spatial(b, {Task::spatial, 1, 1}, bank()).has_value());
}

TEST_CASE("gen_counting counts same-category objects, exemplar included") {
    ImageBundle b;
    b.image = {"img", "", 1000, 1000};
    b.objects = {obj("d1", "img", 100, 100, 200, 200, "dog"),
                 obj("d2", "img", 300, 100, 400, 200, "dog"),
                 obj("d3", "img", 500, 100, 600, 200, "dog")};
    for (int variant : {1, 2}) {
        auto s = gen_counting(b, {Task::counting, variant, 5}, bank());
        REQUIRE(s.has_value());
        CHECK(s->turns[1].text == "3");
    }
}

TEST_CASE("gen_counting answers 1 for a unique category") {
    ImageBundle b;
    b.image = {"img", "", 1000, 1000};
    b.objects = {obj("x", "img", 100, 100, 200, 200, "unicorn")};
    auto s = gen_counting(b, {Task::counting, 1, 5}, bank());
    REQUIRE(s.has_value());
    CHECK(s->turns[1].text == "1");
}

TEST_CASE("counting matches a brute-force category count on mixed bundles") {
    ImageBundle b;
    b.image = {"img", "", 1000, 1000};
    for (int i = 0; i < 5; ++i)
        b.objects.push_back(obj("p" + std::to_string(i), "img", 10.0 + 50 * i, 10, 40.0 + 50 * i,
                                40, "person"));
    for (int i = 0; i < 2; ++i)
        b.objects.push_back(obj("c" + std::to_string(i), "img", 10.0 + 50 * i, 500, 40.0 + 50 * i,
                                540, "car"));
    for (uint64_t seed = 0; seed < 24; ++seed) {
        auto s = gen_counting(b, {Task::counting, 1, seed}, bank());
        REQUIRE(s.has_value());
        bool person = s->turns[0].text.find("person") != std::string::npos;
        CHECK(s->turns[1].text == (person ? "5" : "2"));
    }
}

TEST_CASE("gen_detection lists every same-category box and nothing else") {
    ImageBundle b;
    b.image = {"img", "", 1000, 1000};
    b.objects = {obj("h1", "img", 600, 100, 800, 200, "vase"),
                 obj("h2", "img", 100, 100, 300, 200, "vase"),
                 obj("dog", "img", 100, 500, 300, 700, "zebra")};
    for (uint64_t seed = 0; seed < 12; ++seed) {
        auto s = gen_detection(b, {Task::detection, 1, seed}, bank());
        REQUIRE(s.has_value());
        auto toks = tokens(s->turns[1].text);
        bool vase = s->turns[0].text.find("vase") != std::string::npos;
        if (vase) {
            REQUIRE(toks.size() == 2);
            // reading order: h2 (x=100) before h1 (x=600)
            CHECK(toks[0] == *coord_text(b.objects[1].box, b.image));
            CHECK(toks[1] == *coord_text(b.objects[0].box, b.image));
        } else {
            REQUIRE(toks.size() == 1);
            CHECK(toks[0] == *coord_text(b.objects[2].box, b.image));
        }
    }
}

TEST_CASE("gen_detection exemplar variant includes the exemplar itself") {
    ImageBundle b;
    b.image = {"img", "", 1000, 1000};
    b.objects = {obj("only", "img", 100, 100, 300, 300, "statue")};
    auto s = gen_detection(b, {Task::detection, 2, 9}, bank());
    REQUIRE(s.has_value());
    CHECK(s->turns[1].text == *coord_text(b.objects[0].box, b.image));
}

TEST_CASE("grounding and ground_caption invert each other on a region") {
    ImageBundle b;
    b.image = {"img", "", 1000, 1000};
    b.objects = {obj("o", "img", 100, 100, 300, 300, "hat")};
    b.regions = {{"img", {100, 100, 300, 300}, "a red hat"}};
    auto g = gen_grounding(b, {Task::grounding, 1, 3}, bank());
    auto c = gen_ground_caption(b, {Task::ground_caption, 1, 3}, bank());
    REQUIRE(g.has_value());
    REQUIRE(c.has_value());
    std::string ct = *coord_text(b.regions[0].box, b.image);
    CHECK(g->turns[1].text == ct);
    CHECK(g->turns[0].text.find("a red hat") != std::string::npos);
    CHECK(c->turns[1].text == "a red hat");
    CHECK(c->turns[0].text.find(ct) != std::string::npos);
}

TEST_CASE("grounding draws from retained expressions too") {
    ImageBundle b;
    b.image = {"img", "", 1000, 1000};
    b.expressions.push_back({"img", {100, 100, 300, 300}, "the blue bird",
                             ExprSource::bootstrapped, PixelBox{100, 100, 300, 300}, 1.0, true});
    b.expressions.push_back({"img", {500, 500, 700, 700}, "never used",
                             ExprSource::bootstrapped, std::nullopt, std::nullopt, false});
    for (uint64_t seed = 0; seed < 8; ++seed) {
        auto g = gen_grounding(b, {Task::grounding, 1, seed}, bank());
        REQUIRE(g.has_value());
        CHECK(g->turns[0].text.find("the blue bird") != std::string::npos);
    }
}

TEST_CASE("gen_multichoice letters the options and answers letter plus text") {
    TaskSpec spec{Task::multichoice_vqa, 1, 11};
    auto s = gen_multichoice("what is shown?", {"a cat", "a dog", "a fish", "a bird"}, 2, spec,
                             bank(), "img1");
    CHECK(s.turns[1].text == "C. a fish");
    CHECK(s.turns[0].text.find("A. a cat\nB. a dog\nC. a fish\nD. a bird") != std::string::npos);
    CHECK(s.turns[0].text.find("\\n") == std::string::npos);  // escape was rendered
    CHECK(validate_dialogue(s).empty());
}

TEST_CASE("gen_multichoice rejects bad option counts and indexes") {
    TaskSpec spec{Task::multichoice_vqa, 1, 11};
    CHECK_THROWS_AS(gen_multichoice("q", {"only"}, 0, spec, bank()), std::invalid_argument);
    CHECK_THROWS_AS(gen_multichoice("q", std::vector<std::string>(27, "x"), 0, spec, bank()),
                    std::invalid_argument);
    CHECK_THROWS_AS(gen_multichoice("q", {"a", "b"}, 2, spec, bank()), std::invalid_argument);
    CHECK_THROWS_AS(gen_multichoice("q", {"a", "b"}, -1, spec, bank()), std::invalid_argument);
    CHECK_NOTHROW(gen_multichoice("q", {"a", "b"}, 1, spec, bank()));
}

TEST_CASE("every generator output passes dialogue validation on fuzzed bundles") {
    Rng rng(2024);
    int emitted = 0;
    for (int i = 0; i < 200; ++i) {
        ImageBundle b = rcgen::testing::random_bundle(rng, "fuzz" + std::to_string(i));
        for (Task task : {Task::relation_qa, Task::relation_detect, Task::spatial, Task::counting,
                          Task::detection, Task::grounding, Task::ground_caption}) {
            for (int variant : variants_for(task)) {
                auto s = generate(b, {task, variant, rng.next()}, bank());
                if (!s) continue;
                ++emitted;
                CHECK(validate_dialogue(*s).empty());
                // every coordinate in any turn matches a real annotation box
                // up to the quantization half-step per coordinate
                for (const auto& turn : s->turns) {
                    auto scan = parse_coords(turn.text);
                    for (const NormBox& parsed : scan.boxes) {
                        double best = 1e9;
                        auto consider = [&](const PixelBox& src) {
                            auto n = normalize(src, b.image.width, b.image.height);
                            if (!n) return;
                            double worst = std::max(
                                {std::abs(n->x_min - parsed.x_min),
                                 std::abs(n->y_min - parsed.y_min),
                                 std::abs(n->x_max - parsed.x_max),
                                 std::abs(n->y_max - parsed.y_max)});
                            best = std::min(best, worst);
                        };
                        for (const auto& o : b.objects) consider(o.box);
                        for (const auto& r : b.regions) consider(r.box);
                        CHECK(best <= 5e-4 + 1e-12);
                    }
                }
            }
        }
    }
    CHECK(emitted > 500);
}

TEST_CASE("template choice is uniform over the bank") {
    ImageBundle b;
    b.image = {"img", "", 1000, 1000};
    b.objects = {obj("x", "img", 100, 100, 200, 200, "cup")};
    const auto& counting_bank = bank().bank(Task::counting, 1);
    std::map<std::string, int> hits;
    const int draws = 20000;
    for (int i = 0; i < draws; ++i) {
        auto s = gen_counting(b, {Task::counting, 1, static_cast<uint64_t>(i)}, bank());
        REQUIRE(s.has_value());
        hits[s->turns[0].text] += 1;
    }
    CHECK(hits.size() == counting_bank.size());
    double p = 1.0 / static_cast<double>(counting_bank.size());
    double sigma = std::sqrt(draws * p * (1 - p));
    for (const auto& [text, count] : hits)
        CHECK(std::abs(count - draws * p) <= 4 * sigma);
}
