#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ovigo/chat.hpp"
#include "ovigo/config.hpp"
#include "ovigo/types.hpp"

namespace ovigo {

// Keeps points with b_min + alpha_min*(b_max-b_min) <= z <= b_min +
// alpha_max*(b_max-b_min), where b_min/b_max come from the input cloud.
// Throws EmptyBand when nothing survives; callers decide whether that is
// fatal.
PointCloud height_band_filter(const PointCloud& cloud, const HeightBand& band);

// Geometric location detector: band filter, DBSCAN, whole-object plurality
// reassignment, drop clusters with fewer than min_objects distinct objects,
// project, alpha shape, and drop polygons with area < min_area_m2 or
// 4*pi*S/PR^2 < compactness_min. Requires a per-point object partition.
std::vector<Polygon2D> detect_locations_geometric(
    const PointCloud& floor_cloud, const PipelineConfig::Locations& params);

// External LocDetector ingest: validates the file against the floor's BEV
// frame (FrameMismatch on any disagreement) and the declared floor index.
std::vector<BinaryMask> ingest_location_masks(const std::filesystem::path& path,
                                              const GridFrame& floor_frame,
                                              int floor_index);

// Mirrors assign_room_tag with the "unknown location" fallback.
std::string assign_location_tag(const std::vector<std::string>& object_tags,
                                ChatClient* llm);

}  // namespace ovigo
