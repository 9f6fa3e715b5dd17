#include "qhlab/point.hpp"

#include "qhlab/errors.hpp"

#include <algorithm>

namespace qhlab {

Point Point::from_span(std::span<const double> coords) {
  if (coords.size() == 2) return Point(coords[0], coords[1]);
  if (coords.size() == 3) return Point(coords[0], coords[1], coords[2]);
  throw ArgumentError("points must have 2 or 3 coordinates");
}

bool Point::finite() const {
  return std::isfinite(c_[0]) && std::isfinite(c_[1]) && std::isfinite(c_[2]);
}

Point Point::operator+(const Point& o) const {
  Point r = *this;
  for (std::size_t i = 0; i < 3; ++i) r.c_[i] += o.c_[i];
  r.dim_ = std::max(dim_, o.dim_);
  return r;
}

Point Point::operator-(const Point& o) const {
  Point r = *this;
  for (std::size_t i = 0; i < 3; ++i) r.c_[i] -= o.c_[i];
  r.dim_ = std::max(dim_, o.dim_);
  return r;
}

Point Point::operator*(double s) const {
  Point r = *this;
  for (auto& v : r.c_) v *= s;
  return r;
}

const Point& ExtendedPoint::point() const {
  if (!p_) throw ArgumentError("the point at infinity has no coordinates");
  return *p_;
}

namespace {

double cross(const Point& o, const Point& a, const Point& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

PointList convex_hull(PointList pts) {
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  if (pts.size() < 3) return pts;
  PointList hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

double brute_diameter(std::span<const Point> pts) {
  double best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::max(best, (pts[i] - pts[j]).norm2());
  return std::sqrt(best);
}

} // namespace

double diameter(std::span<const Point> points) {
  if (points.empty()) throw ArgumentError("diameter of an empty point list");
  bool planar = std::all_of(points.begin(), points.end(), [](const Point& p) { return p.dim() == 2; });
  if (!planar || points.size() < 64) return brute_diameter(points);
  PointList hull = convex_hull(PointList(points.begin(), points.end()));
  return brute_diameter(hull);
}

Point separated_third_point(std::span<const Point> boundary, const Point& z1, const Point& z2) {
  if (boundary.size() < 3) throw ArgumentError("separated_third_point needs at least 3 boundary points");
  if (z1 == z2) throw DegenerateError("separated_third_point needs z1 != z2");
  std::size_t best = 0;
  double best_sep = -1.0;
  for (std::size_t i = 0; i < boundary.size(); ++i) {
    double sep = std::min(distance(boundary[i], z1), distance(boundary[i], z2));
    if (sep > best_sep) {
      best_sep = sep;
      best = i;
    }
  }
  return boundary[best];
}

} // namespace qhlab
