#include <omp.h>

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "ovigo/geometry.hpp"
#include "ovigo/reference.hpp"

namespace ovigo {

namespace {

constexpr double kUnoccupied = -std::numeric_limits<double>::infinity();

GridFrame frame_of(const PointCloud& cloud, double meters_per_pixel) {
  if (cloud.empty()) throw Error(Errc::EmptyInput, "BEV projection of empty cloud");
  if (!(meters_per_pixel > 0.0)) {
    throw Error(Errc::EmptyInput, "meters_per_pixel must be > 0");
  }
  double min_x = cloud.points[0].x, max_x = cloud.points[0].x;
  double min_y = cloud.points[0].y, max_y = cloud.points[0].y;
  for (const Vec3& p : cloud.points) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  const int64_t ix0 = detail::grid_index(min_x, meters_per_pixel);
  const int64_t ix1 = detail::grid_index(max_x, meters_per_pixel);
  const int64_t iy0 = detail::grid_index(min_y, meters_per_pixel);
  const int64_t iy1 = detail::grid_index(max_y, meters_per_pixel);
  GridFrame frame;
  frame.width = static_cast<int>(ix1 - ix0 + 1);
  frame.height = static_cast<int>(iy1 - iy0 + 1);
  frame.meters_per_pixel = meters_per_pixel;
  frame.origin_x = static_cast<double>(ix0) * meters_per_pixel;
  frame.origin_y = static_cast<double>(iy0) * meters_per_pixel;
  return frame;
}

void normalize_occupied(std::vector<double>& values) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (double v : values) {
    if (v == kUnoccupied) continue;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double range = hi - lo;
  for (double& v : values) {
    if (v == kUnoccupied) {
      v = 0.0;
      continue;
    }
    // Degenerate min-max range (all heights equal) is defined as 0.
    v = range > 0.0 ? (v - lo) / range : 0.0;
  }
}

}  // namespace

bool frame_cell(const GridFrame& frame, double x, double y, int* ix, int* iy) {
  const int64_t ox = detail::grid_index(frame.origin_x, frame.meters_per_pixel);
  const int64_t oy = detail::grid_index(frame.origin_y, frame.meters_per_pixel);
  const int64_t cx = detail::grid_index(x, frame.meters_per_pixel) - ox;
  const int64_t cy = detail::grid_index(y, frame.meters_per_pixel) - oy;
  if (cx < 0 || cy < 0 || cx >= frame.width || cy >= frame.height) return false;
  *ix = static_cast<int>(cx);
  *iy = static_cast<int>(cy);
  return true;
}

BevImage project_bev(const PointCloud& cloud, double meters_per_pixel) {
  BevImage bev;
  bev.frame = frame_of(cloud, meters_per_pixel);
  const std::size_t cells = bev.frame.cells();
  bev.values.assign(cells, kUnoccupied);

  const int64_t n = static_cast<int64_t>(cloud.points.size());
#pragma omp parallel
  {
    std::vector<double> local(cells, kUnoccupied);
#pragma omp for nowait
    for (int64_t i = 0; i < n; ++i) {
      const Vec3& p = cloud.points[static_cast<std::size_t>(i)];
      int ix = 0, iy = 0;
      frame_cell(bev.frame, p.x, p.y, &ix, &iy);
      double& cell = local[static_cast<std::size_t>(iy) * bev.frame.width + ix];
      cell = std::max(cell, p.z);
    }
#pragma omp critical
    {
      for (std::size_t c = 0; c < cells; ++c) {
        bev.values[c] = std::max(bev.values[c], local[c]);
      }
    }
  }
  normalize_occupied(bev.values);
  return bev;
}

LabelGrid connected_components(const BinaryMask& mask, int connectivity) {
  if (connectivity != 4 && connectivity != 8) {
    throw Error(Errc::UsageError, "connectivity must be 4 or 8");
  }
  LabelGrid out;
  out.frame = mask.frame;
  out.labels.assign(mask.frame.cells(), 0);
  const int w = mask.frame.width;
  const int h = mask.frame.height;
  int32_t next = 0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t idx = static_cast<std::size_t>(y) * w + x;
      if (!mask.values[idx] || out.labels[idx] != 0) continue;
      const int32_t label = ++next;
      std::deque<std::pair<int, int>> frontier{{x, y}};
      out.labels[idx] = label;
      while (!frontier.empty()) {
        const auto [cx, cy] = frontier.front();
        frontier.pop_front();
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            if (dx == 0 && dy == 0) continue;
            if (connectivity == 4 && dx != 0 && dy != 0) continue;
            const int nx = cx + dx;
            const int ny = cy + dy;
            if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
            const std::size_t nidx = static_cast<std::size_t>(ny) * w + nx;
            if (mask.values[nidx] && out.labels[nidx] == 0) {
              out.labels[nidx] = label;
              frontier.emplace_back(nx, ny);
            }
          }
        }
      }
    }
  }
  out.max_label = next;
  return out;
}

std::array<double, 2> mask_centroid(const BinaryMask& mask) {
  double sx = 0.0, sy = 0.0;
  std::size_t n = 0;
  for (int y = 0; y < mask.frame.height; ++y) {
    for (int x = 0; x < mask.frame.width; ++x) {
      if (!mask.at(x, y)) continue;
      sx += mask.frame.origin_x + (x + 0.5) * mask.frame.meters_per_pixel;
      sy += mask.frame.origin_y + (y + 0.5) * mask.frame.meters_per_pixel;
      ++n;
    }
  }
  if (n == 0) throw Error(Errc::EmptyInput, "centroid of an empty mask");
  return {sx / static_cast<double>(n), sy / static_cast<double>(n)};
}

BinaryMask rasterize_polygon(const Polygon2D& poly, const GridFrame& frame) {
  BinaryMask mask;
  mask.frame = frame;
  mask.values.assign(frame.cells(), 0);
  for (int y = 0; y < frame.height; ++y) {
    const double cy = frame.origin_y + (y + 0.5) * frame.meters_per_pixel;
    for (int x = 0; x < frame.width; ++x) {
      const double cx = frame.origin_x + (x + 0.5) * frame.meters_per_pixel;
      if (poly.contains(cx, cy)) {
        mask.values[static_cast<std::size_t>(y) * frame.width + x] = 1;
      }
    }
  }
  return mask;
}

namespace serial {

BevImage project_bev(const PointCloud& cloud, double meters_per_pixel) {
  BevImage bev;
  bev.frame = frame_of(cloud, meters_per_pixel);
  bev.values.assign(bev.frame.cells(), kUnoccupied);
  for (const Vec3& p : cloud.points) {
    int ix = 0, iy = 0;
    frame_cell(bev.frame, p.x, p.y, &ix, &iy);
    double& cell = bev.values[static_cast<std::size_t>(iy) * bev.frame.width + ix];
    cell = std::max(cell, p.z);
  }
  normalize_occupied(bev.values);
  return bev;
}

}  // namespace serial

}  // namespace ovigo
