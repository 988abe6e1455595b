#pragma once

#include <map>
#include <string>
#include <vector>

#include "ovigo/config.hpp"
#include "ovigo/io.hpp"
#include "ovigo/types.hpp"

namespace ovigo {

// One detection lifted to 3D: the masked depth pixels in world coordinates.
struct ObjectFragment {
  int frame_id = 0;
  std::string tag;
  PointCloud cloud;
  Box3D bbox;
};

// Cross-frame merged object with its multiview tag multiset. primary_tag is
// the modal tag (ties resolve lexicographically).
struct ObjectNode {
  int id = 0;
  PointCloud cloud;
  Box3D bbox;
  std::map<std::string, int> tags;
  std::string primary_tag;
  int room_id = -1;
  int location_id = -1;

  friend bool operator==(const ObjectNode& a, const ObjectNode& b) {
    return a.id == b.id && a.cloud == b.cloud && a.bbox == b.bbox && a.tags == b.tags &&
           a.primary_tag == b.primary_tag && a.room_id == b.room_id &&
           a.location_id == b.location_id;
  }
};

// Back-projects the masked depth pixels through the intrinsics and the
// camera-to-world pose: pixel (u, v) with raw depth d maps to camera point
// ((u-cx)*d*s/fx, (v-cy)*d*s/fy, d*s). Zero-depth pixels are skipped; a mask
// with no valid depth raises EmptyFragment.
ObjectFragment backproject_detection(const Detection& det, const DepthImage& depth,
                                     const Intrinsics& intrinsics,
                                     const std::array<double, 16>& pose,
                                     double depth_scale, int frame_id);

// Whole-image back-projection used for cloud accumulation; subsamples every
// `stride`-th pixel per axis.
PointCloud backproject_depth(const DepthImage& depth, const Intrinsics& intrinsics,
                             const std::array<double, 16>& pose, double depth_scale,
                             int stride = 1);

// Greedy sequential merge in fragment order: a fragment joins the first
// (lowest-id) node with (box IoU >= spatial_iou_min OR fraction of its points
// inside the node bbox >= overlap_min) AND a matching tag; otherwise it seeds
// a new node. Node IDs follow creation order.
std::vector<ObjectNode> aggregate_objects(const std::vector<ObjectFragment>& fragments,
                                          const PipelineConfig::Objects& params);

namespace serial {
ObjectFragment backproject_detection(const Detection& det, const DepthImage& depth,
                                     const Intrinsics& intrinsics,
                                     const std::array<double, 16>& pose,
                                     double depth_scale, int frame_id);
}  // namespace serial

}  // namespace ovigo
