#include "ovigo/objects.hpp"

#include <omp.h>

#include <algorithm>

#include "ovigo/geometry.hpp"
#include "ovigo/text.hpp"

namespace ovigo {

namespace {

Vec3 apply_pose(const std::array<double, 16>& m, const Vec3& p) {
  return {m[0] * p.x + m[1] * p.y + m[2] * p.z + m[3],
          m[4] * p.x + m[5] * p.y + m[6] * p.z + m[7],
          m[8] * p.x + m[9] * p.y + m[10] * p.z + m[11]};
}

Vec3 backproject_pixel(int u, int v, uint16_t d, const Intrinsics& k, double scale,
                       const std::array<double, 16>& pose) {
  const double z = static_cast<double>(d) * scale;
  const Vec3 cam{(static_cast<double>(u) - k.cx) * z / k.fx,
                 (static_cast<double>(v) - k.cy) * z / k.fy, z};
  return apply_pose(pose, cam);
}

// Mask pixels with valid depth, in row-major order for deterministic output.
std::vector<std::size_t> valid_mask_pixels(const std::vector<uint8_t>& bits,
                                           const DepthImage& depth) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] && depth.values[i] != 0) out.push_back(i);
  }
  return out;
}

ObjectFragment backproject_impl(const Detection& det, const DepthImage& depth,
                                const Intrinsics& intrinsics,
                                const std::array<double, 16>& pose, double depth_scale,
                                int frame_id, bool parallel) {
  const std::size_t cells =
      static_cast<std::size_t>(depth.width) * static_cast<std::size_t>(depth.height);
  const std::vector<uint8_t> bits = rle_decode(det.mask_rle, cells);
  const std::vector<std::size_t> valid = valid_mask_pixels(bits, depth);
  if (valid.empty()) {
    throw Error(Errc::EmptyFragment,
                "detection \"" + det.tag + "\" has no valid depth under its mask");
  }

  ObjectFragment frag;
  frag.frame_id = frame_id;
  frag.tag = det.tag;
  frag.cloud.points.resize(valid.size());
  const int64_t n = static_cast<int64_t>(valid.size());
#pragma omp parallel for schedule(static) if (parallel)
  for (int64_t i = 0; i < n; ++i) {
    const std::size_t pix = valid[static_cast<std::size_t>(i)];
    const int u = static_cast<int>(pix % static_cast<std::size_t>(depth.width));
    const int v = static_cast<int>(pix / static_cast<std::size_t>(depth.width));
    frag.cloud.points[static_cast<std::size_t>(i)] =
        backproject_pixel(u, v, depth.values[pix], intrinsics, depth_scale, pose);
  }
  frag.bbox = Box3D::of(frag.cloud);
  return frag;
}

double fraction_inside(const PointCloud& cloud, const Box3D& box) {
  std::size_t inside = 0;
  for (const Vec3& p : cloud.points) inside += box.contains(p);
  return static_cast<double>(inside) / static_cast<double>(cloud.size());
}

// Volume IoU that treats a pair of degenerate boxes as 0 instead of erroring;
// flat single-view fragments are routine here.
double safe_box_iou(const Box3D& a, const Box3D& b) {
  if (a.volume() <= 0.0 && b.volume() <= 0.0) return 0.0;
  return box3d_iou(a, b);
}

}  // namespace

ObjectFragment backproject_detection(const Detection& det, const DepthImage& depth,
                                     const Intrinsics& intrinsics,
                                     const std::array<double, 16>& pose,
                                     double depth_scale, int frame_id) {
  return backproject_impl(det, depth, intrinsics, pose, depth_scale, frame_id, true);
}

namespace serial {
ObjectFragment backproject_detection(const Detection& det, const DepthImage& depth,
                                     const Intrinsics& intrinsics,
                                     const std::array<double, 16>& pose,
                                     double depth_scale, int frame_id) {
  return backproject_impl(det, depth, intrinsics, pose, depth_scale, frame_id, false);
}
}  // namespace serial

PointCloud backproject_depth(const DepthImage& depth, const Intrinsics& intrinsics,
                             const std::array<double, 16>& pose, double depth_scale,
                             int stride) {
  if (stride < 1) throw Error(Errc::UsageError, "stride must be >= 1");
  std::vector<std::size_t> valid;
  for (int v = 0; v < depth.height; v += stride) {
    for (int u = 0; u < depth.width; u += stride) {
      if (depth.at(u, v) != 0) {
        valid.push_back(static_cast<std::size_t>(v) * depth.width + u);
      }
    }
  }
  PointCloud cloud;
  cloud.points.resize(valid.size());
  const int64_t n = static_cast<int64_t>(valid.size());
#pragma omp parallel for schedule(static)
  for (int64_t i = 0; i < n; ++i) {
    const std::size_t pix = valid[static_cast<std::size_t>(i)];
    const int u = static_cast<int>(pix % static_cast<std::size_t>(depth.width));
    const int v = static_cast<int>(pix / static_cast<std::size_t>(depth.width));
    cloud.points[static_cast<std::size_t>(i)] =
        backproject_pixel(u, v, depth.values[pix], intrinsics, depth_scale, pose);
  }
  return cloud;
}

std::vector<ObjectNode> aggregate_objects(const std::vector<ObjectFragment>& fragments,
                                          const PipelineConfig::Objects& params) {
  std::vector<ObjectNode> nodes;
  for (const ObjectFragment& frag : fragments) {
    ObjectNode* target = nullptr;
    for (ObjectNode& node : nodes) {
      const bool tag_ok =
          node.tags.empty() || node.tags.count(frag.tag) > 0 ||
          (params.tag_similarity_enabled && [&] {
            for (const auto& [tag, count] : node.tags) {
              (void)count;
              if (trigram_cosine(tag, frag.tag) >= params.tag_similarity_min) return true;
            }
            return false;
          }());
      if (!tag_ok) continue;
      const bool spatial_ok =
          safe_box_iou(frag.bbox, node.bbox) >= params.spatial_iou_min ||
          fraction_inside(frag.cloud, node.bbox) >= params.overlap_min;
      if (spatial_ok) {
        target = &node;
        break;
      }
    }
    if (target == nullptr) {
      ObjectNode node;
      node.id = static_cast<int>(nodes.size());
      nodes.push_back(std::move(node));
      target = &nodes.back();
    }
    target->cloud.points.insert(target->cloud.points.end(), frag.cloud.points.begin(),
                                frag.cloud.points.end());
    target->bbox.extend(frag.bbox);
    ++target->tags[frag.tag];
  }
  for (ObjectNode& node : nodes) {
    int best = 0;
    for (const auto& [tag, count] : node.tags) {
      if (count > best) {  // ties keep the lexicographically first (map order)
        best = count;
        node.primary_tag = tag;
      }
    }
  }
  return nodes;
}

}  // namespace ovigo
