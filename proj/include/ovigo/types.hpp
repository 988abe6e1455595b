#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "ovigo/error.hpp"

namespace ovigo {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend Vec3 operator+(const Vec3& a, const Vec3& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend Vec3 operator-(const Vec3& a, const Vec3& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend bool operator==(const Vec3& a, const Vec3& b) {
    return a.x == b.x && a.y == b.y && a.z == b.z;
  }
  double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

// Point cloud in meters, z-up. `object_ids`, when non-empty, must label every
// point (an annotation partition: each point belongs to exactly one object).
struct PointCloud {
  std::vector<Vec3> points;
  std::vector<uint32_t> object_ids;

  bool has_object_ids() const { return !object_ids.empty(); }
  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }

  void append(const Vec3& p) { points.push_back(p); }
  void append(const Vec3& p, uint32_t object_id) {
    points.push_back(p);
    object_ids.push_back(object_id);
  }

  friend bool operator==(const PointCloud& a, const PointCloud& b) {
    return a.points == b.points && a.object_ids == b.object_ids;
  }
};

// Axis-aligned box, min <= max componentwise.
struct Box3D {
  Vec3 min{std::numeric_limits<double>::infinity(),
           std::numeric_limits<double>::infinity(),
           std::numeric_limits<double>::infinity()};
  Vec3 max{-std::numeric_limits<double>::infinity(),
           -std::numeric_limits<double>::infinity(),
           -std::numeric_limits<double>::infinity()};

  bool valid() const { return min.x <= max.x && min.y <= max.y && min.z <= max.z; }
  Vec3 center() const {
    return {(min.x + max.x) / 2.0, (min.y + max.y) / 2.0, (min.z + max.z) / 2.0};
  }
  Vec3 extent() const { return {max.x - min.x, max.y - min.y, max.z - min.z}; }
  double volume() const {
    if (!valid()) return 0.0;
    const Vec3 e = extent();
    return e.x * e.y * e.z;
  }
  void extend(const Vec3& p) {
    min.x = std::min(min.x, p.x);
    min.y = std::min(min.y, p.y);
    min.z = std::min(min.z, p.z);
    max.x = std::max(max.x, p.x);
    max.y = std::max(max.y, p.y);
    max.z = std::max(max.z, p.z);
  }
  void extend(const Box3D& b) {
    extend(b.min);
    extend(b.max);
  }
  bool contains(const Vec3& p) const {
    return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y &&
           p.z >= min.z && p.z <= max.z;
  }
  static Box3D of(const PointCloud& cloud) {
    Box3D b;
    for (const Vec3& p : cloud.points) b.extend(p);
    return b;
  }
  friend bool operator==(const Box3D& a, const Box3D& b) {
    return a.min == b.min && a.max == b.max;
  }
};

// Metric transform shared by all BEV-frame grids. Pixel (ix, iy) covers the
// world cell [origin_x + ix*mpp, origin_x + (ix+1)*mpp) x [origin_y + iy*mpp,
// origin_y + (iy+1)*mpp); storage is row-major with index iy*width + ix.
struct GridFrame {
  int height = 0;
  int width = 0;
  double meters_per_pixel = 0.0;
  double origin_x = 0.0;
  double origin_y = 0.0;

  std::size_t cells() const {
    return static_cast<std::size_t>(height) * static_cast<std::size_t>(width);
  }
  friend bool operator==(const GridFrame& a, const GridFrame& b) {
    return a.height == b.height && a.width == b.width &&
           a.meters_per_pixel == b.meters_per_pixel &&
           a.origin_x == b.origin_x && a.origin_y == b.origin_y;
  }
};

// Top-down raster of normalized max point heights in [0, 1]; empty cells are 0.
struct BevImage {
  GridFrame frame;
  std::vector<double> values;

  double at(int ix, int iy) const { return values[static_cast<std::size_t>(iy) * frame.width + ix]; }
  friend bool operator==(const BevImage& a, const BevImage& b) {
    return a.frame == b.frame && a.values == b.values;
  }
};

struct BinaryMask {
  GridFrame frame;
  std::vector<uint8_t> values;

  bool at(int ix, int iy) const {
    return values[static_cast<std::size_t>(iy) * frame.width + ix] != 0;
  }
  std::size_t count() const {
    std::size_t n = 0;
    for (uint8_t v : values) n += (v != 0);
    return n;
  }
  friend bool operator==(const BinaryMask& a, const BinaryMask& b) {
    return a.frame == b.frame && a.values == b.values;
  }
};

// Per-pixel Euclidean distance (in pixels) to the nearest positive mask pixel.
struct DistanceField {
  GridFrame frame;
  std::vector<double> values;

  double at(int ix, int iy) const { return values[static_cast<std::size_t>(iy) * frame.width + ix]; }
};

// Integer region labels; 0 means unassigned (or barrier), regions are 1..n.
struct LabelGrid {
  GridFrame frame;
  std::vector<int32_t> labels;
  int32_t max_label = 0;

  int32_t at(int ix, int iy) const {
    return labels[static_cast<std::size_t>(iy) * frame.width + ix];
  }
  friend bool operator==(const LabelGrid& a, const LabelGrid& b) {
    return a.frame == b.frame && a.labels == b.labels && a.max_label == b.max_label;
  }
};

// Closed simple ring in meters; the first vertex is not repeated at the end.
struct Polygon2D {
  std::vector<std::array<double, 2>> vertices;

  double signed_area() const;
  double area() const { return std::abs(signed_area()); }
  double perimeter() const;
  bool contains(double x, double y) const;  // even-odd rule, boundary-inclusive-ish
  friend bool operator==(const Polygon2D& a, const Polygon2D& b) {
    return a.vertices == b.vertices;
  }
};

// Height histogram over z; point p falls in bin floor((p.z - origin_z)/bin_size).
// origin_z is grid-aligned (a multiple of bin_size) so that absolute bin edges
// do not depend on the lowest sample.
struct HeightHistogram {
  double bin_size = 0.0;
  double origin_z = 0.0;
  std::vector<int64_t> counts;

  double z_center(std::size_t bin) const {
    return origin_z + (static_cast<double>(bin) + 0.5) * bin_size;
  }
};

struct Peak {
  int64_t bin_index = 0;
  int64_t height = 0;
  double z_center = 0.0;

  friend bool operator==(const Peak& a, const Peak& b) {
    return a.bin_index == b.bin_index && a.height == b.height && a.z_center == b.z_center;
  }
};

}  // namespace ovigo
