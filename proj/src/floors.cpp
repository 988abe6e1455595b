#include "ovigo/floors.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "ovigo/geometry.hpp"

namespace ovigo {

std::vector<FloorSlab> segment_floors(const PointCloud& cloud,
                                      const PipelineConfig::Floors& params) {
  const HeightHistogram hist = build_height_histogram(cloud, params.bin_h);

  std::vector<Peak> peaks;
  try {
    peaks = find_peaks(hist, params.delta_f, params.p_h);
  } catch (const Error& e) {
    if (e.code() == Errc::NoPeaks) throw Error(Errc::NoFloors, "no height peaks found");
    throw;
  }
  if (peaks.empty()) throw Error(Errc::NoFloors, "no peaks above the height threshold");

  // Cluster peak heights so each story contributes one group, then keep the
  // two tallest peaks per group (its floor and ceiling planes).
  std::vector<double> zs;
  zs.reserve(peaks.size());
  for (const Peak& p : peaks) zs.push_back(p.z_center);
  const std::vector<int32_t> labels =
      dbscan(std::span<const double>(zs.data(), zs.size()), 1, params.peak_cluster_eps,
             params.peak_cluster_min_pts);

  std::map<int32_t, std::vector<std::size_t>> clusters;
  for (std::size_t i = 0; i < peaks.size(); ++i) {
    clusters[labels[i] < 0 ? -1 - static_cast<int32_t>(i) : labels[i]].push_back(i);
  }
  std::vector<Peak> survivors;
  for (auto& [label, members] : clusters) {
    std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
      if (peaks[a].height != peaks[b].height) return peaks[a].height > peaks[b].height;
      return peaks[a].bin_index < peaks[b].bin_index;
    });
    for (std::size_t k = 0; k < members.size() && k < 2; ++k) {
      survivors.push_back(peaks[members[k]]);
    }
  }
  std::sort(survivors.begin(), survivors.end(),
            [](const Peak& a, const Peak& b) { return a.z_center < b.z_center; });

  if (survivors.size() % 2 != 0) {
    if (params.force_extend) {
      double z_max = cloud.points[0].z;
      for (const Vec3& p : cloud.points) z_max = std::max(z_max, p.z);
      survivors.push_back({0, 0, z_max});
    } else {
      std::ostringstream msg;
      msg << survivors.size() << " surviving peaks cannot pair into floors; peak z:";
      for (const Peak& p : survivors) msg << ' ' << p.z_center;
      msg << " (use force_extend to close the last slab at max z)";
      throw Error(Errc::UnpairedBoundary, msg.str());
    }
  }

  std::vector<FloorSlab> slabs;
  for (std::size_t i = 0; i + 1 < survivors.size(); i += 2) {
    FloorSlab slab;
    slab.index = static_cast<int>(i / 2);
    slab.z_low = survivors[i].z_center;
    slab.z_high = survivors[i + 1].z_center;
    slab.tag = "floor " + std::to_string(slab.index);
    slabs.push_back(std::move(slab));
  }
  const bool with_ids = cloud.has_object_ids();
  for (std::size_t i = 0; i < cloud.points.size(); ++i) {
    const Vec3& p = cloud.points[i];
    for (FloorSlab& slab : slabs) {
      if (p.z >= slab.z_low && p.z <= slab.z_high) {
        if (with_ids) slab.cloud.append(p, cloud.object_ids[i]);
        else slab.cloud.append(p);
        break;  // slabs are disjoint
      }
    }
  }
  return slabs;
}

}  // namespace ovigo
