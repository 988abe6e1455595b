#pragma once

#include <string>
#include <vector>

#include "ovigo/config.hpp"
#include "ovigo/types.hpp"

namespace ovigo {

// One building story: the z-slab between a floor-plane peak and the matching
// ceiling peak, holding every point inside that range.
struct FloorSlab {
  int index = 0;
  double z_low = 0.0;
  double z_high = 0.0;
  PointCloud cloud;
  std::string tag;  // "floor <index>"
};

// Height-histogram floor segmentation: peaks above p_h*h_max are clustered in
// z (1D DBSCAN), the two tallest peaks per cluster survive, and consecutive
// surviving peaks pair into (floor, ceiling) boundaries. An odd number of
// surviving peaks raises UnpairedBoundary unless force_extend pairs the last
// one with the cloud's max z.
std::vector<FloorSlab> segment_floors(const PointCloud& cloud,
                                      const PipelineConfig::Floors& params);

}  // namespace ovigo
