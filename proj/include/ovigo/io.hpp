#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ovigo/types.hpp"

namespace ovigo {

// --- point clouds -----------------------------------------------------------
// PLY: x, y, z as float64 (float32 accepted on read) plus an optional uint32
// object_id property; ascii and binary_little_endian. Text: one "x y z
// [object_id]" line per point.

PointCloud read_ply(const std::filesystem::path& path);
void write_ply(const PointCloud& cloud, const std::filesystem::path& path,
               bool binary = true);
PointCloud read_xyz(const std::filesystem::path& path);
void write_xyz(const PointCloud& cloud, const std::filesystem::path& path);
// Dispatches on extension: .ply vs anything else (text).
PointCloud read_point_cloud(const std::filesystem::path& path);

// --- images ------------------------------------------------------------------

struct DepthImage {
  int height = 0;
  int width = 0;
  std::vector<uint16_t> values;  // raw depth units; 0 = invalid

  uint16_t at(int u, int v) const {
    return values[static_cast<std::size_t>(v) * width + u];
  }
};

DepthImage read_depth_png(const std::filesystem::path& path);
void write_depth_png(const DepthImage& depth, const std::filesystem::path& path);
void write_rgb_png(int height, int width, const std::vector<uint8_t>& rgb,
                   const std::filesystem::path& path);

// --- run-length masks --------------------------------------------------------
// A mask is a flat array of (value, start, length) triples in row-major pixel
// order: starts strictly increasing, runs contiguous, covering [0, h*w).

std::vector<int64_t> rle_encode(const std::vector<uint8_t>& bits);
std::vector<uint8_t> rle_decode(const std::vector<int64_t>& runs,
                                std::size_t expected_cells);

// Location-mask ingest file (also used for ground-truth mask sets):
// {"floor": int, "frame": {"h","w","meters_per_pixel","origin_xy"},
//  "masks": [rle, ...]}.
struct LocationMaskFile {
  int floor = 0;
  GridFrame frame;
  std::vector<BinaryMask> masks;
};

LocationMaskFile read_location_masks(const std::filesystem::path& path);
void write_location_masks(const LocationMaskFile& file,
                          const std::filesystem::path& path);

// --- frames ------------------------------------------------------------------

struct Intrinsics {
  double fx = 0.0, fy = 0.0, cx = 0.0, cy = 0.0;
};

struct Detection {
  std::string tag;
  double score = 0.0;
  std::array<double, 4> box2d{};  // x, y, w, h in pixels
  std::vector<int64_t> mask_rle;
};

// One JSON document per frame; pose is a row-major camera-to-world transform
// with bottom row (0,0,0,1).
struct FrameDetections {
  int frame_id = 0;
  int width = 0;
  int height = 0;
  Intrinsics intrinsics;
  std::array<double, 16> pose{};
  double depth_scale = 0.001;
  std::vector<Detection> detections;
};

FrameDetections read_frame_detections(const std::filesystem::path& path);
void write_frame_detections(const FrameDetections& frame,
                            const std::filesystem::path& path);

struct FrameRecord {
  int frame_id = 0;
  std::string rgb_path;  // optional, never read by the pipeline
  std::string depth_path;
  std::string detections_path;
  std::array<double, 16> pose{};
  Intrinsics intrinsics;
  double depth_scale = 0.001;
};

// Sequence manifest. When cloud_path is set the accumulated cloud is loaded
// from it; otherwise it is accumulated by back-projecting all frame depths.
struct Manifest {
  std::string cloud_path;
  std::vector<FrameRecord> frames;
};

Manifest read_manifest(const std::filesystem::path& path);
void write_manifest(const Manifest& manifest, const std::filesystem::path& path);

}  // namespace ovigo
