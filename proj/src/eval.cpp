#include "ovigo/eval.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <set>
#include <sstream>

#include "ovigo/geometry.hpp"
#include "ovigo/text.hpp"

namespace ovigo {

namespace {

// IoU that tolerates empty masks inside the matcher (counts as no overlap).
double pair_iou(const BinaryMask& a, const BinaryMask& b) {
  try {
    return mask_iou(a, b);
  } catch (const Error& e) {
    if (e.code() == Errc::UndefinedIoU) return 0.0;
    throw;
  }
}

}  // namespace

MatchReport match_masks(const std::vector<BinaryMask>& pred,
                        const std::vector<BinaryMask>& gt, double delta,
                        MatchOrder order) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(Errc::UsageError, "match threshold delta must be in (0,1)");
  }
  MatchReport report;
  report.delta = delta;

  std::vector<std::size_t> processing(pred.size());
  std::iota(processing.begin(), processing.end(), 0);
  if (order == MatchOrder::BestIouDesc && !gt.empty()) {
    std::vector<double> best(pred.size(), 0.0);
    for (std::size_t i = 0; i < pred.size(); ++i) {
      for (const BinaryMask& g : gt) best[i] = std::max(best[i], pair_iou(pred[i], g));
    }
    std::stable_sort(processing.begin(), processing.end(),
                     [&](std::size_t a, std::size_t b) { return best[a] > best[b]; });
  }

  std::vector<bool> gt_taken(gt.size(), false);
  for (std::size_t i : processing) {
    double best_iou = -1.0;
    std::size_t best_j = 0;
    for (std::size_t j = 0; j < gt.size(); ++j) {
      if (gt_taken[j]) continue;
      const double iou = pair_iou(pred[i], gt[j]);
      if (iou > best_iou) {
        best_iou = iou;
        best_j = j;
      }
    }
    if (best_iou > delta) {
      gt_taken[best_j] = true;
      ++report.tp;
    } else {
      ++report.fp;
    }
  }
  for (bool taken : gt_taken) {
    if (!taken) ++report.fn;
  }

  if (pred.empty() && gt.empty()) {
    report.precision = report.recall = report.f1 = 1.0;  // documented convention
    return report;
  }
  report.precision =
      report.tp + report.fp > 0
          ? static_cast<double>(report.tp) / static_cast<double>(report.tp + report.fp)
          : 0.0;
  report.recall =
      report.tp + report.fn > 0
          ? static_cast<double>(report.tp) / static_cast<double>(report.tp + report.fn)
          : 0.0;
  report.f1 = report.precision + report.recall > 0.0
                  ? 2.0 * report.precision * report.recall /
                        (report.precision + report.recall)
                  : 0.0;
  return report;
}

std::map<double, double> acc_at_iou(const std::vector<std::optional<Box3D>>& pred,
                                    const std::vector<Box3D>& gt,
                                    const std::vector<double>& thresholds) {
  if (gt.empty()) throw Error(Errc::EmptyBenchmark, "accuracy over an empty benchmark");
  if (pred.size() != gt.size()) {
    throw Error(Errc::UsageError, "prediction/ground-truth size mismatch");
  }
  std::vector<double> ious(gt.size(), 0.0);
  for (std::size_t i = 0; i < gt.size(); ++i) {
    if (pred[i].has_value()) ious[i] = box3d_iou(*pred[i], gt[i]);
  }
  std::map<double, double> acc;
  for (double t : thresholds) {
    std::size_t hits = 0;
    for (double iou : ious) hits += iou > t;  // strictly "exceeds"
    acc[t] = static_cast<double>(hits) / static_cast<double>(gt.size());
  }
  return acc;
}

double auc_topk(const std::vector<std::vector<std::string>>& ranked_labels_per_object,
                const std::vector<std::string>& gt_labels,
                const std::vector<std::string>& label_set) {
  if (ranked_labels_per_object.size() != gt_labels.size()) {
    throw Error(Errc::UsageError, "rankings/labels size mismatch");
  }
  if (ranked_labels_per_object.empty()) {
    throw Error(Errc::EmptyBenchmark, "AUC over zero objects");
  }
  const std::set<std::string> known(label_set.begin(), label_set.end());
  const std::size_t k_max = label_set.size();

  // Rank of the ground-truth label per object (1-based; unranked = never hit).
  std::vector<std::size_t> gt_rank(gt_labels.size(), k_max + 1);
  for (std::size_t i = 0; i < gt_labels.size(); ++i) {
    if (!known.count(gt_labels[i])) {
      throw Error(Errc::LabelSetError,
                  "ground-truth label \"" + gt_labels[i] + "\" is outside the label set");
    }
    if (ranked_labels_per_object[i].empty()) {
      throw Error(Errc::UsageError, "empty ranking for object " + std::to_string(i));
    }
    for (std::size_t r = 0; r < ranked_labels_per_object[i].size(); ++r) {
      if (ranked_labels_per_object[i][r] == gt_labels[i]) {
        gt_rank[i] = r + 1;
        break;
      }
    }
  }

  double sum = 0.0;
  for (std::size_t k = 1; k <= k_max; ++k) {
    std::size_t hits = 0;
    for (std::size_t rank : gt_rank) hits += rank <= k;
    sum += static_cast<double>(hits) / static_cast<double>(gt_rank.size());
  }
  return 100.0 * sum / static_cast<double>(k_max);
}

std::vector<std::string> rank_labels_by_tag_similarity(
    const std::vector<std::string>& label_set, const std::map<std::string, int>& tags) {
  std::vector<std::pair<double, std::string>> scored;
  scored.reserve(label_set.size());
  for (const std::string& label : label_set) {
    double best = 0.0;
    for (const auto& [tag, count] : tags) {
      (void)count;
      best = std::max(best, trigram_cosine(label, tag));
    }
    scored.emplace_back(best, label);
  }
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  std::vector<std::string> out;
  out.reserve(scored.size());
  for (auto& [score, label] : scored) out.push_back(std::move(label));
  return out;
}

std::vector<BenchmarkItem> read_benchmark(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open benchmark " + path.string());
  std::vector<BenchmarkItem> items;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const std::string ctx = path.string() + ":" + std::to_string(lineno);
    const Json j = parse_json_text(line, ctx);
    BenchmarkItem item;
    item.query = require_field(j, "query", ctx).get<std::string>();
    item.gt_box = box_from_json(require_field(j, "gt_box", ctx), ctx);
    items.push_back(std::move(item));
  }
  return items;
}

void write_benchmark(const std::vector<BenchmarkItem>& items,
                     const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IoError, "cannot write benchmark " + path.string());
  for (const BenchmarkItem& item : items) {
    const Json j{{"query", item.query}, {"gt_box", box_json(item.gt_box)}};
    out << j.dump() << '\n';
  }
}

Json BenchmarkReport::to_json() const {
  Json queries = Json::array();
  for (const QueryOutcome& o : outcomes) {
    Json q{{"query", o.query}, {"ok", o.ok}, {"iou", o.iou}};
    if (o.ok) q["object_id"] = o.object_id;
    if (!o.error.empty()) q["error"] = o.error;
    q["client_calls"] = o.trace.client_calls();
    q["edge_pairs"] = o.trace.edge_pairs;
    queries.push_back(std::move(q));
  }
  Json acc = Json::object();
  for (const auto& [t, a] : accuracy) {
    std::ostringstream key;
    key << "acc@" << t;
    acc[key.str()] = a;
  }
  return Json{{"queries", std::move(queries)}, {"accuracy", std::move(acc)}};
}

std::string BenchmarkReport::to_table() const {
  std::ostringstream os;
  os << std::left << std::setw(52) << "query" << std::right << std::setw(8) << "object"
     << std::setw(8) << "iou" << "\n";
  os << std::string(68, '-') << "\n";
  for (const QueryOutcome& o : outcomes) {
    std::string q = o.query.substr(0, 50);
    os << std::left << std::setw(52) << q << std::right << std::setw(8)
       << (o.ok ? std::to_string(o.object_id) : "miss") << std::setw(8) << std::fixed
       << std::setprecision(3) << o.iou << "\n";
  }
  os << std::string(68, '-') << "\n";
  for (const auto& [t, a] : accuracy) {
    os << "Acc@" << std::setprecision(2) << t << ": " << std::setprecision(4) << a << "\n";
  }
  return os.str();
}

BenchmarkReport run_benchmark(const SceneGraph& graph,
                              const std::vector<BenchmarkItem>& items, ChatClient& llm) {
  if (items.empty()) throw Error(Errc::EmptyBenchmark, "benchmark has no items");
  BenchmarkReport report;
  std::vector<std::optional<Box3D>> pred;
  std::vector<Box3D> gt;
  for (const BenchmarkItem& item : items) {
    QueryOutcome outcome;
    outcome.query = item.query;
    try {
      const GroundingResult result =
          run_pipeline(graph, GroundingQuery{item.query}, llm, &outcome.trace);
      outcome.ok = true;
      outcome.object_id = result.object_id;
      outcome.iou = box3d_iou(result.bbox, item.gt_box);
      pred.emplace_back(result.bbox);
    } catch (const Error& e) {
      outcome.error = e.what();
      pred.emplace_back(std::nullopt);
    }
    gt.push_back(item.gt_box);
    report.outcomes.push_back(std::move(outcome));
  }
  report.accuracy = acc_at_iou(pred, gt);
  return report;
}

}  // namespace ovigo
