#pragma once

#include "qhlab/point.hpp"

#include <string>
#include <variant>

namespace qhlab {

// {x : x_last > 0}; the boundary is the coordinate hyperplane x_last = 0.
struct HalfPlane {
  int dim = 2;
};

struct Ball {
  Point center;
  double radius = 1.0;
};

// Ball with its center removed.
struct PuncturedBall {
  Point center;
  double radius = 1.0;
};

// {|x - center| > radius} together with the point at infinity.
struct BallExterior {
  Point center;
  double radius = 1.0;
};

// Open axis-aligned box.
struct Rectangle {
  Point lo;
  Point hi;
};

// Extended plane minus the closed arc {e^{it} : t in [t_begin, t_end]} of the
// unit circle. Contains both 0 and infinity.
struct ArcComplement {
  double t_begin = 0.0;
  double t_end = 0.0;
};

class DomainSpec {
public:
  using Variant = std::variant<HalfPlane, Ball, PuncturedBall, BallExterior, Rectangle, ArcComplement>;

  // Validates the variant's invariants; throws ArgumentError.
  DomainSpec(Variant v); // NOLINT

  const Variant& variant() const { return v_; }
  std::string kind() const;
  int dim() const;
  bool bounded() const;

  bool contains(const ExtendedPoint& x) const;
  // Exact distance to the boundary; throws DomainMembershipError outside.
  double boundary_distance(const Point& x) const;

  // Boundary points inside the axis box [lo, hi] with consecutive spacing at
  // most h. Unbounded boundaries are clipped to the box.
  PointList sample_boundary(double h, const Point& lo, const Point& hi) const;

  // A box containing the closure when the domain is bounded.
  std::pair<Point, Point> bounding_box() const;

private:
  Variant v_;
};

// Convenience free functions matching the library's operation names.
inline double boundary_distance(const DomainSpec& d, const Point& x) { return d.boundary_distance(x); }
inline bool contains(const DomainSpec& d, const ExtendedPoint& x) { return d.contains(x); }

} // namespace qhlab
