#pragma once

#include <span>
#include <vector>

#include "ovigo/types.hpp"

// Serial reference implementations of the OpenMP-parallel kernels. These are
// the same algorithms without threading, kept for output-equality tests and
// for the serial side of the kernel benchmark.
namespace ovigo::serial {

HeightHistogram build_height_histogram(const PointCloud& cloud, double bin_h);
std::vector<int32_t> dbscan(std::span<const double> coords, int dims, double eps,
                            int min_pts);
BevImage project_bev(const PointCloud& cloud, double meters_per_pixel);
DistanceField euclidean_distance_field(const BinaryMask& mask);
double mask_iou(const BinaryMask& a, const BinaryMask& b);

}  // namespace ovigo::serial
