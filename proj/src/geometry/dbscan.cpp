#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <deque>
#include <unordered_map>

#include "ovigo/geometry.hpp"
#include "ovigo/reference.hpp"

namespace ovigo {

namespace {

// Uniform grid with cell size eps. Hash collisions only widen candidate
// lists (every candidate is distance-checked), so a combined 64-bit key is
// enough.
class EpsGrid {
 public:
  EpsGrid(std::span<const double> coords, int dims, double eps)
      : coords_(coords), dims_(dims), eps_(eps), eps2_(eps * eps) {
    const std::size_t n = coords.size() / static_cast<std::size_t>(dims);
    cells_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      cells_[cell_key(i)].push_back(i);
    }
  }

  // Indices of all points within eps (inclusive) of point i, self included,
  // sorted ascending.
  std::vector<std::size_t> query(std::size_t i) const {
    std::vector<std::size_t> out;
    std::vector<int64_t> cell(static_cast<std::size_t>(dims_));
    for (int d = 0; d < dims_; ++d) {
      cell[static_cast<std::size_t>(d)] =
          static_cast<int64_t>(std::floor(coord(i, d) / eps_));
    }
    std::vector<int64_t> probe(cell);
    visit_neighbors(cell, probe, 0, [&](uint64_t key) {
      auto it = cells_.find(key);
      if (it == cells_.end()) return;
      for (std::size_t j : it->second) {
        if (sq_dist(i, j) <= eps2_) out.push_back(j);
      }
    });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::size_t count(std::size_t i) const { return query(i).size(); }

 private:
  double coord(std::size_t i, int d) const {
    return coords_[i * static_cast<std::size_t>(dims_) + static_cast<std::size_t>(d)];
  }

  double sq_dist(std::size_t a, std::size_t b) const {
    double s = 0.0;
    for (int d = 0; d < dims_; ++d) {
      const double diff = coord(a, d) - coord(b, d);
      s += diff * diff;
    }
    return s;
  }

  uint64_t cell_key(std::size_t i) const {
    std::vector<int64_t> cell(static_cast<std::size_t>(dims_));
    for (int d = 0; d < dims_; ++d) {
      cell[static_cast<std::size_t>(d)] =
          static_cast<int64_t>(std::floor(coord(i, d) / eps_));
    }
    return key_of(cell);
  }

  static uint64_t key_of(const std::vector<int64_t>& cell) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (int64_t c : cell) {
      uint64_t v = static_cast<uint64_t>(c);
      for (int b = 0; b < 8; ++b) {
        h ^= (v >> (8 * b)) & 0xff;
        h *= 0x100000001b3ull;
      }
    }
    return h;
  }

  template <typename Fn>
  void visit_neighbors(const std::vector<int64_t>& center, std::vector<int64_t>& probe,
                       int axis, const Fn& fn) const {
    if (axis == dims_) {
      fn(key_of(probe));
      return;
    }
    for (int64_t off = -1; off <= 1; ++off) {
      probe[static_cast<std::size_t>(axis)] = center[static_cast<std::size_t>(axis)] + off;
      visit_neighbors(center, probe, axis + 1, fn);
    }
  }

  std::span<const double> coords_;
  int dims_;
  double eps_;
  double eps2_;
  std::unordered_map<uint64_t, std::vector<std::size_t>> cells_;
};

constexpr int32_t kUnvisited = -2;

std::vector<int32_t> dbscan_impl(std::span<const double> coords, int dims, double eps,
                                 int min_pts, bool parallel) {
  if (!(eps > 0.0)) throw Error(Errc::EmptyInput, "dbscan eps must be > 0");
  if (min_pts < 1) throw Error(Errc::EmptyInput, "dbscan min_pts must be >= 1");
  if (dims < 1 || coords.size() % static_cast<std::size_t>(dims) != 0) {
    throw Error(Errc::EmptyInput, "dbscan coordinate buffer does not match dims");
  }
  const std::size_t n = coords.size() / static_cast<std::size_t>(dims);
  std::vector<int32_t> labels(n, kUnvisited);
  if (n == 0) return labels;

  const EpsGrid grid(coords, dims, eps);

  // Core flags are independent per point; this is the data-parallel pass.
  std::vector<uint8_t> core(n, 0);
  const int64_t ni = static_cast<int64_t>(n);
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 64)
    for (int64_t i = 0; i < ni; ++i) {
      core[static_cast<std::size_t>(i)] =
          grid.count(static_cast<std::size_t>(i)) >= static_cast<std::size_t>(min_pts);
    }
  } else {
    for (int64_t i = 0; i < ni; ++i) {
      core[static_cast<std::size_t>(i)] =
          grid.count(static_cast<std::size_t>(i)) >= static_cast<std::size_t>(min_pts);
    }
  }

  // Sequential expansion in input order keeps labels deterministic.
  int32_t next_label = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (labels[i] != kUnvisited) continue;
    if (!core[i]) {
      labels[i] = -1;
      continue;
    }
    const int32_t label = next_label++;
    labels[i] = label;
    std::deque<std::size_t> frontier{i};
    while (!frontier.empty()) {
      const std::size_t q = frontier.front();
      frontier.pop_front();
      for (std::size_t r : grid.query(q)) {
        if (labels[r] == kUnvisited) {
          labels[r] = label;
          if (core[r]) frontier.push_back(r);
        } else if (labels[r] == -1) {
          labels[r] = label;  // noise becomes a border point
        }
      }
    }
  }
  return labels;
}

}  // namespace

std::vector<int32_t> dbscan(std::span<const double> coords, int dims, double eps,
                            int min_pts) {
  return dbscan_impl(coords, dims, eps, min_pts, /*parallel=*/true);
}

std::vector<int32_t> dbscan(const PointCloud& cloud, double eps, int min_pts) {
  static_assert(sizeof(Vec3) == 3 * sizeof(double));
  return dbscan(std::span<const double>(reinterpret_cast<const double*>(cloud.points.data()),
                                        cloud.points.size() * 3),
                3, eps, min_pts);
}

namespace serial {

std::vector<int32_t> dbscan(std::span<const double> coords, int dims, double eps,
                            int min_pts) {
  return dbscan_impl(coords, dims, eps, min_pts, /*parallel=*/false);
}

}  // namespace serial

}  // namespace ovigo
