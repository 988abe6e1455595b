#include <queue>
#include <tuple>

#include "ovigo/geometry.hpp"

namespace ovigo {

LabelGrid watershed(const DistanceField& edf, const LabelGrid& seeds,
                    const BinaryMask& barrier) {
  if (!(edf.frame == seeds.frame) || !(edf.frame == barrier.frame)) {
    throw Error(Errc::FrameMismatch, "watershed inputs disagree on grid frame");
  }
  if (seeds.max_label < 1) throw Error(Errc::NoSeeds, "watershed needs at least one seed");

  const int w = edf.frame.width;
  const int h = edf.frame.height;
  LabelGrid out;
  out.frame = edf.frame;
  out.labels.assign(edf.frame.cells(), 0);
  out.max_label = seeds.max_label;

  // Max-heap keyed by (EDF, -linear index): deeper basins flood first, equal
  // depths resolve toward the lower pixel index.
  using Entry = std::tuple<double, int64_t>;
  std::priority_queue<Entry> heap;

  for (std::size_t i = 0; i < seeds.labels.size(); ++i) {
    if (seeds.labels[i] == 0 || barrier.values[i]) continue;
    out.labels[i] = seeds.labels[i];
    heap.emplace(edf.values[i], -static_cast<int64_t>(i));
  }

  const int dx[4] = {1, -1, 0, 0};
  const int dy[4] = {0, 0, 1, -1};
  while (!heap.empty()) {
    const auto [depth, neg_idx] = heap.top();
    heap.pop();
    (void)depth;
    const std::size_t idx = static_cast<std::size_t>(-neg_idx);
    const int x = static_cast<int>(idx % static_cast<std::size_t>(w));
    const int y = static_cast<int>(idx / static_cast<std::size_t>(w));
    const int32_t label = out.labels[idx];
    for (int k = 0; k < 4; ++k) {
      const int nx = x + dx[k];
      const int ny = y + dy[k];
      if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
      const std::size_t nidx = static_cast<std::size_t>(ny) * w + nx;
      if (barrier.values[nidx] || out.labels[nidx] != 0) continue;
      out.labels[nidx] = label;
      heap.emplace(edf.values[nidx], -static_cast<int64_t>(nidx));
    }
  }
  return out;
}

}  // namespace ovigo
