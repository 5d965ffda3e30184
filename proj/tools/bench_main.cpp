// Benchmark comparing the serial reference paths against the OpenMP paths on
// synthetic data. Outputs of both paths are required to be identical; this
// tool verifies that while measuring.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rcgen/assemble.hpp"
#include "rcgen/bootstrap.hpp"
#include "rcgen/eval.hpp"
#include "rcgen/parallel.hpp"
#include "rcgen/rng.hpp"

using namespace rcgen;

namespace {

double ms_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

std::vector<ImageBundle> synth_bundles(int images, int objects_per_image) {
    std::vector<ImageBundle> bundles;
    Rng rng(7);
    const char* categories[] = {"person", "dog", "car", "tree", "chair", "hat"};
    for (int i = 0; i < images; ++i) {
        ImageBundle b;
        b.image = {"img" + std::to_string(i), "", 1000, 800};
        for (int o = 0; o < objects_per_image; ++o) {
            double x = 20 + rng.below(800);
            double y = 20 + rng.below(600);
            double w = 40 + rng.below(120);
            double h = 40 + rng.below(120);
            b.objects.push_back({"o" + std::to_string(o), b.image.image_id,
                                 {x, y, x + w, y + h},
                                 categories[rng.below(6)]});
        }
        for (int r = 0; r + 1 < objects_per_image && r < 4; ++r)
            b.relations.push_back({"o" + std::to_string(r), "near", "o" + std::to_string(r + 1)});
        b.regions.push_back({b.image.image_id, b.objects[0].box, "the first object"});
        bundles.push_back(std::move(b));
    }
    return bundles;
}

// In-process client: describes each object by a token derived from the
// prompt, re-grounds to a slightly shifted box.
class SyntheticClient : public ModelClient {
public:
    std::string describe(const ImageRecord&, const std::string& coord_text) override {
        auto scan = parse_coords(coord_text);
        last_ = scan.boxes.front();
        return "object near x" + std::to_string(static_cast<int>(last_.x_min * 1000));
    }
    std::string ground(const ImageRecord&, const std::string&) override {
        NormBox shifted{std::min(1.0, last_.x_min + 0.02), last_.y_min,
                        std::min(1.0, last_.x_max + 0.02), last_.y_max};
        return quantize(shifted).value_or("nowhere");
    }

private:
    NormBox last_;
};

std::vector<EvalItem> synth_items(int n) {
    std::vector<EvalItem> items;
    Rng rng(13);
    for (int i = 0; i < n; ++i) {
        EvalItem item;
        item.item_id = "i" + std::to_string(i);
        item.task = EvalTask::grounding;
        double x = rng.unit() * 0.5, y = rng.unit() * 0.5;
        item.gt_box = {x, y, x + 0.3, y + 0.3};
        NormBox pred{x + 0.01 * (i % 5), y, x + 0.3, y + 0.3};
        item.prediction = "the thing is at " + quantize(pred).value_or("[0.1,0.1,0.2,0.2]");
        items.push_back(std::move(item));
    }
    return items;
}

void report(const char* name, double serial_ms, double parallel_ms, bool identical) {
    std::printf("%-24s serial %9.1f ms   parallel %9.1f ms   speedup %5.2fx   identical: %s\n",
                name, serial_ms, parallel_ms, parallel_ms > 0 ? serial_ms / parallel_ms : 0.0,
                identical ? "yes" : "NO");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"serial vs OpenMP benchmark"};
    int images = 2000, objects = 10, items = 200000, threads = 0;
    app.add_option("--images", images, "synthetic image count");
    app.add_option("--objects", objects, "objects per image");
    app.add_option("--items", items, "eval item count");
    app.add_option("--threads", threads, "parallel thread count (0 = hardware)");
    CLI11_PARSE(app, argc, argv);
    threads = effective_threads(threads);
    std::printf("threads: %d\n", threads);

    const TemplateBank& bank = TemplateBank::builtin();
    std::vector<Task> allowed = {Task::relation_qa, Task::relation_detect, Task::spatial,
                                 Task::counting,    Task::detection,       Task::grounding,
                                 Task::ground_caption};

    {
        auto bundles = synth_bundles(images, objects);
        auto t0 = std::chrono::steady_clock::now();
        auto serial = materialize_source(bundles, allowed, bank, 42, "bench", 1);
        double serial_ms = ms_since(t0);
        t0 = std::chrono::steady_clock::now();
        auto parallel = materialize_source(bundles, allowed, bank, 42, "bench", threads);
        double parallel_ms = ms_since(t0);
        report("dialogue generation", serial_ms, parallel_ms, serial == parallel);
    }

    {
        auto filtered = filter_for_bootstrap(synth_bundles(images / 4, objects), 1000, 2000.0);
        BootstrapConfig config;
        auto factory = [] { return std::make_unique<SyntheticClient>(); };
        config.max_inflight_requests = 1;
        auto t0 = std::chrono::steady_clock::now();
        auto serial = run_bootstrap(factory, filtered, config);
        double serial_ms = ms_since(t0);
        config.max_inflight_requests = threads;
        t0 = std::chrono::steady_clock::now();
        auto parallel = run_bootstrap(factory, filtered, config);
        double parallel_ms = ms_since(t0);
        report("bootstrap filter", serial_ms, parallel_ms,
               serial.expressions == parallel.expressions);
    }

    {
        auto eval_items = synth_items(items);
        auto t0 = std::chrono::steady_clock::now();
        auto serial = eval_grounding(eval_items, 0.5, 1);
        double serial_ms = ms_since(t0);
        t0 = std::chrono::steady_clock::now();
        auto parallel = eval_grounding(eval_items, 0.5, threads);
        double parallel_ms = ms_since(t0);
        report("eval scoring", serial_ms, parallel_ms,
               serial.value == parallel.value && serial.per_item == parallel.per_item);
    }

    return 0;
}
