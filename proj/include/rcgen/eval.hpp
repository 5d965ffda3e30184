#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rcgen/geometry.hpp"

namespace rcgen {

enum class EvalTask { grounding, vqa, counting };

const char* to_string(EvalTask t);
std::optional<EvalTask> eval_task_from_string(std::string_view s);

struct EvalItem {
    std::string item_id;
    EvalTask task = EvalTask::grounding;
    NormBox gt_box;                       // grounding
    std::vector<std::string> gt_answers;  // vqa reference answers
    int64_t gt_count = 0;                 // counting
    std::string prediction;
};

struct EvalResult {
    std::string metric_name;
    double value = 0.0;  // percentage, mean(per_item) * 100
    int64_t item_count = 0;
    std::vector<std::pair<std::string, double>> per_item;
};

// Item scores 1 when the first box parsed from the prediction reaches the
// IoU threshold against the ground truth, 0 otherwise (including unparseable
// predictions). Metric name "Accuracy".
EvalResult eval_grounding(std::span<const EvalItem> items, double iou_threshold = 0.5,
                          int threads = 1);

// Consensus score min(matches / 3, 1) where matches counts reference answers
// equal to the normalized prediction. Metric name "VQA Score".
EvalResult eval_vqa(std::span<const EvalItem> items, int threads = 1);

// Exact match of the first integer token in the prediction. Metric name
// "Accuracy".
EvalResult eval_counting(std::span<const EvalItem> items, int threads = 1);

// Lowercase, punctuation to spaces, article words {a, an, the} dropped,
// whitespace collapsed.
std::string normalize_answer(std::string_view raw);

std::optional<int64_t> first_integer(std::string_view text);

// NDJSON records: {"item_id", "task", "ground_truth", "prediction"?}. The
// ground_truth shape follows the task (box array / answer list / integer).
std::vector<EvalItem> read_eval_items(std::istream& in);

// Merges {"item_id", "prediction"} records into items by id; unknown ids are
// ignored, items without a prediction keep an empty string.
void apply_predictions(std::vector<EvalItem>& items, std::istream& in);

}  // namespace rcgen
