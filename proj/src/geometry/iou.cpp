#include <omp.h>

#include <algorithm>

#include "ovigo/geometry.hpp"
#include "ovigo/reference.hpp"

namespace ovigo {

double mask_iou(const BinaryMask& a, const BinaryMask& b) {
  if (!(a.frame.height == b.frame.height && a.frame.width == b.frame.width)) {
    throw Error(Errc::FrameMismatch, "mask IoU over different shapes");
  }
  const int64_t n = static_cast<int64_t>(a.values.size());
  int64_t inter = 0;
  int64_t uni = 0;
#pragma omp parallel for reduction(+ : inter, uni) schedule(static)
  for (int64_t i = 0; i < n; ++i) {
    const bool va = a.values[static_cast<std::size_t>(i)] != 0;
    const bool vb = b.values[static_cast<std::size_t>(i)] != 0;
    inter += (va && vb);
    uni += (va || vb);
  }
  if (uni == 0) throw Error(Errc::UndefinedIoU, "IoU of two empty masks");
  return static_cast<double>(inter) / static_cast<double>(uni);
}

double box3d_iou(const Box3D& a, const Box3D& b) {
  const double va = a.volume();
  const double vb = b.volume();
  if (va <= 0.0 && vb <= 0.0) {
    throw Error(Errc::UndefinedIoU, "IoU of two zero-volume boxes");
  }
  const double ix = std::min(a.max.x, b.max.x) - std::max(a.min.x, b.min.x);
  const double iy = std::min(a.max.y, b.max.y) - std::max(a.min.y, b.min.y);
  const double iz = std::min(a.max.z, b.max.z) - std::max(a.min.z, b.min.z);
  if (ix <= 0.0 || iy <= 0.0 || iz <= 0.0) return 0.0;
  const double inter = ix * iy * iz;
  return inter / (va + vb - inter);
}

namespace serial {

double mask_iou(const BinaryMask& a, const BinaryMask& b) {
  if (!(a.frame.height == b.frame.height && a.frame.width == b.frame.width)) {
    throw Error(Errc::FrameMismatch, "mask IoU over different shapes");
  }
  int64_t inter = 0;
  int64_t uni = 0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    const bool va = a.values[i] != 0;
    const bool vb = b.values[i] != 0;
    inter += (va && vb);
    uni += (va || vb);
  }
  if (uni == 0) throw Error(Errc::UndefinedIoU, "IoU of two empty masks");
  return static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace serial

}  // namespace ovigo
