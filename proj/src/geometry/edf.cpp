#include <omp.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "ovigo/geometry.hpp"
#include "ovigo/reference.hpp"

namespace ovigo {

namespace {

constexpr double kFar = 1e20;

// One-dimensional squared distance transform (lower envelope of parabolas).
// f holds squared source distances, d receives the transformed row.
void dt_1d(const double* f, double* d, int n, int* v, double* z) {
  int k = 0;
  v[0] = 0;
  z[0] = -kFar;
  z[1] = kFar;
  for (int q = 1; q < n; ++q) {
    double s = ((f[q] + static_cast<double>(q) * q) -
                (f[v[k]] + static_cast<double>(v[k]) * v[k])) /
               (2.0 * q - 2.0 * v[k]);
    while (s <= z[k]) {
      --k;
      s = ((f[q] + static_cast<double>(q) * q) -
           (f[v[k]] + static_cast<double>(v[k]) * v[k])) /
          (2.0 * q - 2.0 * v[k]);
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = kFar;
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    while (z[k + 1] < q) ++k;
    const double dq = q - v[k];
    d[q] = dq * dq + f[v[k]];
  }
}

DistanceField edf_impl(const BinaryMask& mask, bool parallel) {
  if (mask.count() == 0) {
    throw Error(Errc::NoWalls, "distance field needs at least one positive pixel");
  }
  const int w = mask.frame.width;
  const int h = mask.frame.height;
  DistanceField out;
  out.frame = mask.frame;
  out.values.assign(mask.frame.cells(), 0.0);
  std::vector<double> sq(mask.frame.cells());
  for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = mask.values[i] ? 0.0 : kFar;

  // Columns, then rows; both passes are independent per line.
#pragma omp parallel if (parallel)
  {
    std::vector<double> f(static_cast<std::size_t>(std::max(w, h)));
    std::vector<double> d(static_cast<std::size_t>(std::max(w, h)));
    std::vector<int> v(static_cast<std::size_t>(std::max(w, h)));
    std::vector<double> z(static_cast<std::size_t>(std::max(w, h)) + 1);
#pragma omp for
    for (int x = 0; x < w; ++x) {
      for (int y = 0; y < h; ++y) f[static_cast<std::size_t>(y)] = sq[static_cast<std::size_t>(y) * w + x];
      dt_1d(f.data(), d.data(), h, v.data(), z.data());
      for (int y = 0; y < h; ++y) sq[static_cast<std::size_t>(y) * w + x] = d[static_cast<std::size_t>(y)];
    }
#pragma omp for
    for (int y = 0; y < h; ++y) {
      double* row = sq.data() + static_cast<std::size_t>(y) * w;
      dt_1d(row, d.data(), w, v.data(), z.data());
      for (int x = 0; x < w; ++x) row[x] = d[static_cast<std::size_t>(x)];
    }
  }
  for (std::size_t i = 0; i < sq.size(); ++i) out.values[i] = std::sqrt(sq[i]);
  return out;
}

}  // namespace

DistanceField euclidean_distance_field(const BinaryMask& mask) {
  return edf_impl(mask, /*parallel=*/true);
}

double otsu_threshold_value(const DistanceField& field) {
  double lo = field.values.empty() ? 0.0 : field.values[0];
  double hi = lo;
  for (double v : field.values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (!(hi > lo)) {
    throw Error(Errc::DegenerateField, "Otsu needs at least two distinct values");
  }
  const double range = hi - lo;

  constexpr int kBins = 256;
  std::vector<int64_t> histo(kBins, 0);
  for (double v : field.values) {
    int b = static_cast<int>(std::floor((v - lo) / range * kBins));
    b = std::clamp(b, 0, kBins - 1);
    ++histo[static_cast<std::size_t>(b)];
  }

  const int64_t total = static_cast<int64_t>(field.values.size());
  int64_t sum_all = 0;
  for (int b = 0; b < kBins; ++b) sum_all += static_cast<int64_t>(b) * histo[static_cast<std::size_t>(b)];

  // Between-class variance in bin space; the affine value map does not move
  // the argmax. Ties resolve toward the lower threshold.
  int best_k = 0;
  double best_var = -1.0;
  int64_t count0 = 0;
  int64_t sum0 = 0;
  for (int k = 0; k < kBins - 1; ++k) {
    count0 += histo[static_cast<std::size_t>(k)];
    sum0 += static_cast<int64_t>(k) * histo[static_cast<std::size_t>(k)];
    const int64_t count1 = total - count0;
    if (count0 == 0 || count1 == 0) continue;
    const double mu0 = static_cast<double>(sum0) / static_cast<double>(count0);
    const double mu1 = static_cast<double>(sum_all - sum0) / static_cast<double>(count1);
    const double var = static_cast<double>(count0) * static_cast<double>(count1) *
                       (mu0 - mu1) * (mu0 - mu1);
    if (var > best_var) {
      best_var = var;
      best_k = k;
    }
  }
  return lo + (static_cast<double>(best_k) + 1.0) * range / kBins;
}

BinaryMask otsu_threshold(const DistanceField& field) {
  const double threshold = otsu_threshold_value(field);
  BinaryMask mask;
  mask.frame = field.frame;
  mask.values.assign(field.frame.cells(), 0);
  for (std::size_t i = 0; i < field.values.size(); ++i) {
    mask.values[i] = field.values[i] > threshold ? 1 : 0;
  }
  return mask;
}

namespace serial {

DistanceField euclidean_distance_field(const BinaryMask& mask) {
  return edf_impl(mask, /*parallel=*/false);
}

}  // namespace serial

}  // namespace ovigo
