#include <omp.h>

#include <algorithm>
#include <cmath>

#include "ovigo/geometry.hpp"
#include "ovigo/reference.hpp"

namespace ovigo {

namespace detail {

int64_t grid_index(double value, double cell) {
  // 1e-9 edge guard: values that hit a bin edge up to rounding land in the
  // upper bin, matching real-arithmetic binning of exact edge samples.
  return static_cast<int64_t>(std::floor(value / cell + 1e-9));
}

}  // namespace detail

namespace {

struct HistLayout {
  int64_t origin_index = 0;
  std::size_t bins = 0;
};

HistLayout histogram_layout(const PointCloud& cloud, double bin_h) {
  if (cloud.empty()) throw Error(Errc::EmptyInput, "height histogram of empty cloud");
  if (!(bin_h > 0.0)) throw Error(Errc::EmptyInput, "bin_h must be > 0");
  double z_min = cloud.points[0].z;
  double z_max = cloud.points[0].z;
  for (const Vec3& p : cloud.points) {
    if (!std::isfinite(p.z)) throw Error(Errc::EmptyInput, "non-finite point height");
    z_min = std::min(z_min, p.z);
    z_max = std::max(z_max, p.z);
  }
  HistLayout layout;
  layout.origin_index = detail::grid_index(z_min, bin_h);
  const int64_t top = detail::grid_index(z_max, bin_h);
  layout.bins = static_cast<std::size_t>(top - layout.origin_index) + 1;
  return layout;
}

}  // namespace

HeightHistogram build_height_histogram(const PointCloud& cloud, double bin_h) {
  const HistLayout layout = histogram_layout(cloud, bin_h);
  HeightHistogram hist;
  hist.bin_size = bin_h;
  hist.origin_z = static_cast<double>(layout.origin_index) * bin_h;
  hist.counts.assign(layout.bins, 0);

  const int64_t n = static_cast<int64_t>(cloud.points.size());
#pragma omp parallel
  {
    std::vector<int64_t> local(layout.bins, 0);
#pragma omp for nowait
    for (int64_t i = 0; i < n; ++i) {
      const int64_t bin = detail::grid_index(cloud.points[static_cast<std::size_t>(i)].z, bin_h) -
                          layout.origin_index;
      ++local[static_cast<std::size_t>(bin)];
    }
#pragma omp critical
    {
      for (std::size_t b = 0; b < layout.bins; ++b) hist.counts[b] += local[b];
    }
  }
  return hist;
}

std::vector<Peak> find_peaks(const HeightHistogram& hist, double delta_f, double p_h) {
  if (!(delta_f > 0.0)) throw Error(Errc::NoPeaks, "delta_f must be > 0");
  if (!(p_h > 0.0 && p_h < 1.0)) throw Error(Errc::NoPeaks, "p_h must be in (0,1)");
  const int64_t n = static_cast<int64_t>(hist.counts.size());
  const int64_t window = detail::grid_index(delta_f, hist.bin_size);

  std::vector<Peak> maxima;
  for (int64_t i = 0; i < n; ++i) {
    const int64_t h = hist.counts[static_cast<std::size_t>(i)];
    if (h <= 0) continue;
    const int64_t lo = std::max<int64_t>(0, i - window);
    const int64_t hi = std::min<int64_t>(n - 1, i + window);
    bool is_peak = true;
    for (int64_t j = lo; j <= hi && is_peak; ++j) {
      if (j == i) continue;
      const int64_t hj = hist.counts[static_cast<std::size_t>(j)];
      // Ties break toward the lower bin index.
      if (hj > h || (hj == h && j < i)) is_peak = false;
    }
    if (is_peak) {
      maxima.push_back({i, h, hist.z_center(static_cast<std::size_t>(i))});
    }
  }
  if (maxima.empty()) throw Error(Errc::NoPeaks, "histogram has no positive peaks");

  int64_t h_max = 0;
  for (const Peak& p : maxima) h_max = std::max(h_max, p.height);
  std::vector<Peak> kept;
  for (const Peak& p : maxima) {
    if (static_cast<double>(p.height) > p_h * static_cast<double>(h_max)) kept.push_back(p);
  }
  // Already sorted by bin index, hence by z_center.
  return kept;
}

namespace serial {

HeightHistogram build_height_histogram(const PointCloud& cloud, double bin_h) {
  const HistLayout layout = histogram_layout(cloud, bin_h);
  HeightHistogram hist;
  hist.bin_size = bin_h;
  hist.origin_z = static_cast<double>(layout.origin_index) * bin_h;
  hist.counts.assign(layout.bins, 0);
  for (const Vec3& p : cloud.points) {
    const int64_t bin = detail::grid_index(p.z, bin_h) - layout.origin_index;
    ++hist.counts[static_cast<std::size_t>(bin)];
  }
  return hist;
}

}  // namespace serial

}  // namespace ovigo
