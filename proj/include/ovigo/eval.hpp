#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ovigo/chat.hpp"
#include "ovigo/graph.hpp"
#include "ovigo/reasoning.hpp"
#include "ovigo/types.hpp"

namespace ovigo {

struct MatchReport {
  int tp = 0;
  int fp = 0;
  int fn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double delta = 0.0;
};

enum class MatchOrder {
  BestIouDesc,  // default: predictions by descending best IoU (order-stable)
  Input,        // --paper-order: the paper's "for each predicted mask" order
};

// Greedy mask matching at IoU threshold delta: each prediction takes the
// best-IoU remaining ground truth; IoU > delta makes a TP and removes that
// ground truth, otherwise an FP. Unmatched ground truth masks are FNs.
// Empty-vs-empty is F1 = 1 by convention.
MatchReport match_masks(const std::vector<BinaryMask>& pred,
                        const std::vector<BinaryMask>& gt, double delta,
                        MatchOrder order = MatchOrder::BestIouDesc);

// accuracy@t = fraction of queries whose predicted box exceeds IoU t against
// its ground truth; a missing prediction is an automatic miss.
std::map<double, double> acc_at_iou(
    const std::vector<std::optional<Box3D>>& pred, const std::vector<Box3D>& gt,
    const std::vector<double>& thresholds = {0.1, 0.25, 0.5, 0.75});

// Mean top-k accuracy over k = 1..K (K = label-set size), x100. Every ground
// truth label must belong to the label set.
double auc_topk(const std::vector<std::vector<std::string>>& ranked_labels_per_object,
                const std::vector<std::string>& gt_labels,
                const std::vector<std::string>& label_set);

// Ranks the label set for one object by max trigram-cosine similarity against
// its multiview tags (descending score, lexicographic tie-break).
std::vector<std::string> rank_labels_by_tag_similarity(
    const std::vector<std::string>& label_set, const std::map<std::string, int>& tags);

struct BenchmarkItem {
  std::string query;
  Box3D gt_box;
};

std::vector<BenchmarkItem> read_benchmark(const std::filesystem::path& path);
void write_benchmark(const std::vector<BenchmarkItem>& items,
                     const std::filesystem::path& path);

struct QueryOutcome {
  std::string query;
  bool ok = false;
  int object_id = -1;
  double iou = 0.0;
  std::string error;
  PipelineTrace trace;
};

struct BenchmarkReport {
  std::vector<QueryOutcome> outcomes;
  std::map<double, double> accuracy;

  Json to_json() const;
  std::string to_table() const;  // aligned-column text table
};

// Runs every query through the deductive pipeline; per-query failures are
// recorded as misses and never abort the run.
BenchmarkReport run_benchmark(const SceneGraph& graph,
                              const std::vector<BenchmarkItem>& items, ChatClient& llm);

}  // namespace ovigo
