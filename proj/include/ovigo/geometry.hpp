#pragma once

#include <span>
#include <vector>

#include "ovigo/types.hpp"

namespace ovigo {

// ---------------------------------------------------------------------------
// Shared numeric/geometric kernels. All functions are pure and thread-safe;
// the hot ones are OpenMP-parallel with serial twins in ovigo::serial (see
// reference.hpp) kept for testing and benchmarking.
// ---------------------------------------------------------------------------

// Bins all point heights with bin width `bin_h`. Bin edges lie on the global
// grid k*bin_h; points within 1e-9 of an edge snap upward so that exact edge
// values land in the upper bin.
HeightHistogram build_height_histogram(const PointCloud& cloud, double bin_h);

// Local maxima of the histogram within a +-delta_f meter window, keeping only
// peaks with height > p_h * h_max (h_max over detected maxima). Ties inside a
// window resolve toward the lower bin index. Result is sorted by z_center.
std::vector<Peak> find_peaks(const HeightHistogram& hist, double delta_f, double p_h);

// Classic DBSCAN over d-dimensional points stored as a flat row-major buffer.
// A point is core when its eps-ball (self inclusive) holds >= min_pts points.
// Cluster labels are assigned in input order starting from 0; noise is -1.
std::vector<int32_t> dbscan(std::span<const double> coords, int dims, double eps,
                            int min_pts);
std::vector<int32_t> dbscan(const PointCloud& cloud, double eps, int min_pts);

// Top-down projection storing the min-max-normalized maximum point height per
// cell; cells with no points (and all cells of a constant-height cloud) are 0.
BevImage project_bev(const PointCloud& cloud, double meters_per_pixel);

// Exact Euclidean distance (in pixels) to the nearest positive mask pixel.
DistanceField euclidean_distance_field(const BinaryMask& mask);

// Otsu threshold over a 256-bin quantization of [min, max]; between-class
// variance ties resolve toward the lower threshold. The mask is true where
// value > threshold.
double otsu_threshold_value(const DistanceField& field);
BinaryMask otsu_threshold(const DistanceField& field);

// Connected components of positive pixels (8-connectivity by default),
// labeled 1..n in row-major discovery order.
LabelGrid connected_components(const BinaryMask& mask, int connectivity = 8);

// Priority flood from the seed labels over descending EDF values; barrier
// pixels are never assigned. Frontier ties at equal EDF resolve toward the
// lower linear pixel index. Unreached pixels stay 0.
LabelGrid watershed(const DistanceField& edf, const LabelGrid& seeds,
                    const BinaryMask& barrier);

// 2D alpha shape: Delaunay triangles with circumradius <= 1/alpha are kept
// and their union boundary is returned as CCW outer rings (holes dropped).
// alpha == 0 keeps everything, i.e. the convex hull.
std::vector<Polygon2D> alpha_shape(std::span<const std::array<double, 2>> points,
                                   double alpha);

// 4*pi*S / PR^2, in (0, 1] for simple polygons (1 approached by circles).
double polygon_compactness(const Polygon2D& poly);

// |a AND b| / |a OR b|. Undefined (error) when the union is empty.
double mask_iou(const BinaryMask& a, const BinaryMask& b);

// Axis-aligned volume IoU. Undefined (error) when both boxes are degenerate.
double box3d_iou(const Box3D& a, const Box3D& b);

// Rasterizes a polygon onto a grid frame by testing cell centers (even-odd).
BinaryMask rasterize_polygon(const Polygon2D& poly, const GridFrame& frame);

// Cell index of a world coordinate in a grid frame; false when outside.
bool frame_cell(const GridFrame& frame, double x, double y, int* ix, int* iy);

// World-coordinate centroid of the positive cells (cell centers).
std::array<double, 2> mask_centroid(const BinaryMask& mask);

namespace detail {
// Grid-aligned bin index used by the histogram and BEV projection: snaps
// values within 1e-9 of a bin edge upward.
int64_t grid_index(double value, double cell);
}  // namespace detail

}  // namespace ovigo
