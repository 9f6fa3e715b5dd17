#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace qhlab {

// A point of R^2 or R^3. Unused trailing coordinates are kept at zero so that
// arithmetic between points of the same dimension never needs a branch.
class Point {
public:
  Point() = default;
  Point(double x, double y) : c_{x, y, 0.0}, dim_(2) {}
  Point(double x, double y, double z) : c_{x, y, z}, dim_(3) {}
  static Point from_span(std::span<const double> coords);

  int dim() const { return dim_; }
  double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  double& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
  double x() const { return c_[0]; }
  double y() const { return c_[1]; }
  double z() const { return c_[2]; }

  double norm2() const { return c_[0] * c_[0] + c_[1] * c_[1] + c_[2] * c_[2]; }
  double norm() const { return std::sqrt(norm2()); }
  bool finite() const;

  Point operator+(const Point& o) const;
  Point operator-(const Point& o) const;
  Point operator*(double s) const;
  Point operator/(double s) const { return *this * (1.0 / s); }
  bool operator==(const Point& o) const = default;

private:
  std::array<double, 3> c_{0.0, 0.0, 0.0};
  int dim_ = 2;
};

inline double dot(const Point& a, const Point& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline double distance(const Point& a, const Point& b) { return (a - b).norm(); }

// A point of the one-point extension: either finite or the point at infinity.
class ExtendedPoint {
public:
  ExtendedPoint(const Point& p) : p_(p) {} // NOLINT: implicit by design of the API
  static ExtendedPoint infinity() { return ExtendedPoint(); }

  bool is_infinity() const { return !p_.has_value(); }
  const Point& point() const;
  bool operator==(const ExtendedPoint& o) const = default;

private:
  ExtendedPoint() = default;
  std::optional<Point> p_;
};

using PointList = std::vector<Point>;

// Maximum pairwise Euclidean distance. Planar inputs use a convex hull, so
// large nets stay cheap; three-dimensional inputs fall back to all pairs.
double diameter(std::span<const Point> points);

// Sample point maximizing min(|z-z1|, |z-z2|); used to realize the
// one-sixth separation of bounded boundaries.
Point separated_third_point(std::span<const Point> boundary, const Point& z1, const Point& z2);

} // namespace qhlab
