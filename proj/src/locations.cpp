#include "ovigo/locations.hpp"

#include <algorithm>
#include <iostream>
#include <map>

#include "ovigo/geometry.hpp"
#include "ovigo/io.hpp"
#include "ovigo/prompts.hpp"
#include "ovigo/text.hpp"

namespace ovigo {

PointCloud height_band_filter(const PointCloud& cloud, const HeightBand& band) {
  if (cloud.empty()) throw Error(Errc::EmptyInput, "height band filter on empty cloud");
  double b_min = cloud.points[0].z;
  double b_max = cloud.points[0].z;
  for (const Vec3& p : cloud.points) {
    b_min = std::min(b_min, p.z);
    b_max = std::max(b_max, p.z);
  }
  const double lo = b_min + band.alpha_min * (b_max - b_min);
  const double hi = b_min + band.alpha_max * (b_max - b_min);

  PointCloud out;
  const bool with_ids = cloud.has_object_ids();
  for (std::size_t i = 0; i < cloud.points.size(); ++i) {
    const Vec3& p = cloud.points[i];
    if (p.z < lo || p.z > hi) continue;
    if (with_ids) out.append(p, cloud.object_ids[i]);
    else out.append(p);
  }
  if (out.empty()) {
    throw Error(Errc::EmptyBand, "height band removed every point");
  }
  return out;
}

std::vector<Polygon2D> detect_locations_geometric(
    const PointCloud& floor_cloud, const PipelineConfig::Locations& params) {
  if (!floor_cloud.has_object_ids()) {
    throw Error(Errc::MissingPartition,
                "geometric location detection needs per-point object ids");
  }

  PointCloud banded;
  try {
    banded = height_band_filter(floor_cloud, params.band);
  } catch (const Error& e) {
    if (e.code() == Errc::EmptyBand) return {};
    throw;
  }

  std::vector<int32_t> labels = dbscan(banded, params.eps, params.min_pts);

  // Heuristic 1: an object with any non-noise point moves wholesale into the
  // cluster holding the plurality of its points (ties to the lower label).
  std::map<uint32_t, std::map<int32_t, int>> votes;
  for (std::size_t i = 0; i < banded.size(); ++i) {
    if (labels[i] >= 0) ++votes[banded.object_ids[i]][labels[i]];
  }
  std::map<uint32_t, int32_t> object_cluster;
  for (const auto& [object_id, counts] : votes) {
    int32_t best_label = -1;
    int best_count = 0;
    for (const auto& [label, count] : counts) {
      if (count > best_count) {  // map order makes ties pick the lower label
        best_count = count;
        best_label = label;
      }
    }
    object_cluster[object_id] = best_label;
  }
  for (std::size_t i = 0; i < banded.size(); ++i) {
    auto it = object_cluster.find(banded.object_ids[i]);
    labels[i] = it == object_cluster.end() ? -1 : it->second;
  }

  // Heuristic 2: clusters with fewer than min_objects distinct objects drop.
  std::map<int32_t, std::vector<std::size_t>> clusters;
  for (std::size_t i = 0; i < banded.size(); ++i) {
    if (labels[i] >= 0) clusters[labels[i]].push_back(i);
  }
  std::vector<Polygon2D> polygons;
  for (const auto& [label, members] : clusters) {
    std::map<uint32_t, int> distinct;
    for (std::size_t i : members) ++distinct[banded.object_ids[i]];
    if (static_cast<int>(distinct.size()) < params.min_objects) continue;

    std::vector<std::array<double, 2>> projected;
    projected.reserve(members.size());
    for (std::size_t i : members) {
      projected.push_back({banded.points[i].x, banded.points[i].y});
    }
    std::vector<Polygon2D> shapes;
    try {
      shapes = alpha_shape(projected, params.alpha);
    } catch (const Error& e) {
      if (e.code() == Errc::DegenerateCluster) continue;
      throw;
    }
    for (Polygon2D& poly : shapes) {
      const double s = poly.area();
      if (s < params.min_area_m2) continue;
      if (polygon_compactness(poly) < params.compactness_min) continue;
      polygons.push_back(std::move(poly));
    }
  }
  return polygons;
}

std::vector<BinaryMask> ingest_location_masks(const std::filesystem::path& path,
                                              const GridFrame& floor_frame,
                                              int floor_index) {
  const LocationMaskFile file = read_location_masks(path);
  if (file.floor != floor_index) {
    throw Error(Errc::FrameMismatch,
                path.string() + ": file is for floor " + std::to_string(file.floor) +
                    ", expected floor " + std::to_string(floor_index));
  }
  if (!(file.frame == floor_frame)) {
    throw Error(Errc::FrameMismatch,
                path.string() + ": mask frame " + std::to_string(file.frame.height) + "x" +
                    std::to_string(file.frame.width) +
                    " does not match the floor BEV frame " +
                    std::to_string(floor_frame.height) + "x" +
                    std::to_string(floor_frame.width));
  }
  return file.masks;
}

std::string assign_location_tag(const std::vector<std::string>& object_tags,
                                ChatClient* llm) {
  if (object_tags.empty()) return "unknown location";
  if (llm == nullptr) return "unknown location";
  try {
    const std::string raw = llm->send(prompts::location_tag_request(object_tags));
    const std::string tag = trim(raw);
    return tag.empty() ? "unknown location" : tag;
  } catch (const Error& e) {
    std::cerr << "[locations] tagging failed, falling back to \"unknown location\": "
              << e.what() << "\n";
    return "unknown location";
  }
}

}  // namespace ovigo
