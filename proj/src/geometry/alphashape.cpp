#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "ovigo/geometry.hpp"

namespace ovigo {

double Polygon2D::signed_area() const {
  double acc = 0.0;
  const std::size_t n = vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = vertices[i];
    const auto& b = vertices[(i + 1) % n];
    acc += a[0] * b[1] - b[0] * a[1];
  }
  return acc / 2.0;
}

double Polygon2D::perimeter() const {
  double acc = 0.0;
  const std::size_t n = vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = vertices[i];
    const auto& b = vertices[(i + 1) % n];
    acc += std::hypot(b[0] - a[0], b[1] - a[1]);
  }
  return acc;
}

bool Polygon2D::contains(double x, double y) const {
  bool inside = false;
  const std::size_t n = vertices.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const double xi = vertices[i][0], yi = vertices[i][1];
    const double xj = vertices[j][0], yj = vertices[j][1];
    if ((yi > y) != (yj > y)) {
      const double x_cross = (xj - xi) * (y - yi) / (yj - yi) + xi;
      if (x < x_cross) inside = !inside;
    }
  }
  return inside;
}

double polygon_compactness(const Polygon2D& poly) {
  const double pr = poly.perimeter();
  if (!(pr > 0.0)) throw Error(Errc::DegeneratePolygon, "zero-perimeter polygon");
  const double s = poly.area();
  return 4.0 * M_PI * s / (pr * pr);
}

namespace {

struct Tri {
  std::size_t a, b, c;      // indices into the point array (CCW)
  double cx, cy, r2;        // circumcircle
  bool valid = true;
};

bool circumcircle(const std::array<double, 2>& p0, const std::array<double, 2>& p1,
                  const std::array<double, 2>& p2, double* cx, double* cy, double* r2) {
  const double ax = p0[0], ay = p0[1];
  const double bx = p1[0], by = p1[1];
  const double cxx = p2[0], cyy = p2[1];
  const double d = 2.0 * (ax * (by - cyy) + bx * (cyy - ay) + cxx * (ay - by));
  if (d == 0.0) return false;
  const double a2 = ax * ax + ay * ay;
  const double b2 = bx * bx + by * by;
  const double c2 = cxx * cxx + cyy * cyy;
  *cx = (a2 * (by - cyy) + b2 * (cyy - ay) + c2 * (ay - by)) / d;
  *cy = (a2 * (cxx - bx) + b2 * (ax - cxx) + c2 * (bx - ax)) / d;
  const double dx = ax - *cx;
  const double dy = ay - *cy;
  *r2 = dx * dx + dy * dy;
  return true;
}

double tri_signed_area(const std::array<double, 2>& a, const std::array<double, 2>& b,
                       const std::array<double, 2>& c) {
  return 0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]));
}

// Bowyer-Watson incremental Delaunay over unique points; the three trailing
// vertices belong to the enclosing super-triangle.
std::vector<Tri> delaunay(std::vector<std::array<double, 2>>& pts) {
  const std::size_t n = pts.size();
  double min_x = pts[0][0], max_x = pts[0][0];
  double min_y = pts[0][1], max_y = pts[0][1];
  for (const auto& p : pts) {
    min_x = std::min(min_x, p[0]);
    max_x = std::max(max_x, p[0]);
    min_y = std::min(min_y, p[1]);
    max_y = std::max(max_y, p[1]);
  }
  const double span = std::max({max_x - min_x, max_y - min_y, 1.0});
  const double mx = (min_x + max_x) / 2.0;
  const double my = (min_y + max_y) / 2.0;
  pts.push_back({mx - 40.0 * span, my - 20.0 * span});
  pts.push_back({mx + 40.0 * span, my - 20.0 * span});
  pts.push_back({mx, my + 40.0 * span});

  std::vector<Tri> tris;
  auto push_tri = [&](std::size_t a, std::size_t b, std::size_t c) {
    if (tri_signed_area(pts[a], pts[b], pts[c]) < 0.0) std::swap(b, c);
    Tri t{a, b, c, 0.0, 0.0, 0.0, true};
    if (!circumcircle(pts[a], pts[b], pts[c], &t.cx, &t.cy, &t.r2)) {
      t.r2 = std::numeric_limits<double>::infinity();  // degenerate: swallow anything
    }
    tris.push_back(t);
  };
  push_tri(n, n + 1, n + 2);

  for (std::size_t p = 0; p < n; ++p) {
    const double px = pts[p][0];
    const double py = pts[p][1];
    // Edges of the cavity: keep those appearing exactly once.
    std::map<std::pair<std::size_t, std::size_t>, int> edge_count;
    std::vector<std::pair<std::size_t, std::size_t>> cavity;
    for (Tri& t : tris) {
      if (!t.valid) continue;
      const double dx = px - t.cx;
      const double dy = py - t.cy;
      if (dx * dx + dy * dy < t.r2) {
        t.valid = false;
        const std::pair<std::size_t, std::size_t> edges[3] = {
            {t.a, t.b}, {t.b, t.c}, {t.c, t.a}};
        for (const auto& e : edges) {
          auto key = std::minmax(e.first, e.second);
          ++edge_count[{key.first, key.second}];
          cavity.push_back(e);
        }
      }
    }
    for (const auto& e : cavity) {
      auto key = std::minmax(e.first, e.second);
      if (edge_count[{key.first, key.second}] == 1) {
        push_tri(e.first, e.second, p);
      }
    }
    tris.erase(std::remove_if(tris.begin(), tris.end(),
                              [](const Tri& t) { return !t.valid; }),
               tris.end());
  }
  tris.erase(std::remove_if(tris.begin(), tris.end(),
                            [n](const Tri& t) {
                              return t.a >= n || t.b >= n || t.c >= n;
                            }),
             tris.end());
  return tris;
}

}  // namespace

std::vector<Polygon2D> alpha_shape(std::span<const std::array<double, 2>> points,
                                   double alpha) {
  // Deduplicate exact coincident points; they carry no triangulation info.
  std::vector<std::array<double, 2>> unique(points.begin(), points.end());
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
  if (unique.size() < 3) {
    throw Error(Errc::DegenerateCluster, "alpha shape needs >= 3 distinct points");
  }
  bool collinear = true;
  for (std::size_t i = 2; i < unique.size() && collinear; ++i) {
    if (tri_signed_area(unique[0], unique[1], unique[i]) != 0.0) collinear = false;
  }
  if (collinear) throw Error(Errc::DegenerateCluster, "alpha shape of collinear points");

  std::vector<std::array<double, 2>> pts = unique;  // delaunay appends super vertices
  std::vector<Tri> tris = delaunay(pts);

  // alpha <= 0 keeps every triangle (convex hull); otherwise circumradius
  // must not exceed 1/alpha.
  const double max_r2 =
      alpha > 0.0 ? 1.0 / (alpha * alpha) : std::numeric_limits<double>::infinity();
  std::vector<Tri> kept;
  for (const Tri& t : tris) {
    if (t.r2 <= max_r2) kept.push_back(t);
  }
  if (kept.empty()) return {};

  // Boundary = directed edges whose reverse never occurs among kept CCW
  // triangles. Outer rings come out CCW, holes CW; holes are dropped.
  std::set<std::pair<std::size_t, std::size_t>> directed;
  for (const Tri& t : kept) {
    directed.insert({t.a, t.b});
    directed.insert({t.b, t.c});
    directed.insert({t.c, t.a});
  }
  std::map<std::size_t, std::vector<std::size_t>> boundary_next;
  for (const auto& e : directed) {
    if (!directed.count({e.second, e.first})) {
      boundary_next[e.first].push_back(e.second);
    }
  }
  for (auto& [from, tos] : boundary_next) std::sort(tos.begin(), tos.end());

  std::vector<Polygon2D> polygons;
  std::set<std::pair<std::size_t, std::size_t>> used;
  for (const auto& [start, tos] : boundary_next) {
    for (std::size_t first : tos) {
      if (used.count({start, first})) continue;
      Polygon2D ring;
      std::size_t cur = start;
      std::size_t next = first;
      while (true) {
        used.insert({cur, next});
        ring.vertices.push_back(pts[cur]);
        cur = next;
        if (cur == start) break;
        const auto& outs = boundary_next.at(cur);
        std::size_t chosen = outs.front();
        for (std::size_t cand : outs) {
          if (!used.count({cur, cand})) {
            chosen = cand;
            break;
          }
        }
        next = chosen;
      }
      if (ring.vertices.size() >= 3 && ring.signed_area() > 0.0) {
        polygons.push_back(std::move(ring));
      }
    }
  }
  return polygons;
}

}  // namespace ovigo
