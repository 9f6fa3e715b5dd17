#pragma once

#include "qhlab/point.hpp"

#include <complex>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace qhlab {

struct IdentityMap {};

// x -> scale * R(rotation) x + translation. Rotation is about the origin in
// the first two coordinates.
struct SimilarityMap {
  double scale = 1.0;
  double rotation = 0.0;
  Point translation;
};

// x -> |x|^(alpha-1) x.
struct RadialPowerMap {
  double alpha = 1.0;
};

// x -> center + (x - center) / |x - center|^2, swapping center and infinity.
struct InversionMap {
  Point center;
};

// Planar Moebius transformation z -> (a z + b) / (c z + d).
struct MobiusPlaneMap {
  std::complex<double> a{1.0, 0.0}, b{0.0, 0.0}, c{0.0, 0.0}, d{1.0, 0.0};
};

class MapSpec;

// Applied left to right.
struct CompositionMap {
  std::vector<MapSpec> maps;
};

class MapSpec {
public:
  using Variant =
      std::variant<IdentityMap, SimilarityMap, RadialPowerMap, InversionMap, MobiusPlaneMap, CompositionMap>;

  MapSpec(Variant v); // NOLINT
  MapSpec() : MapSpec(IdentityMap{}) {}

  const Variant& variant() const { return *v_; }
  std::string kind() const;

  ExtendedPoint apply(const ExtendedPoint& x) const;
  // Throws DegenerateError when a finite point is sent to infinity.
  Point apply_finite(const Point& x) const;

  static MapSpec identity() { return MapSpec(IdentityMap{}); }
  static MapSpec similarity(double scale, double rotation = 0.0, Point translation = Point(0, 0));
  static MapSpec radial_power(double alpha);
  static MapSpec inversion(Point center = Point(0, 0));
  static MapSpec mobius(std::complex<double> a, std::complex<double> b, std::complex<double> c,
                        std::complex<double> d);
  static MapSpec compose(std::vector<MapSpec> maps);

private:
  std::shared_ptr<const Variant> v_;
};

inline ExtendedPoint apply_map(const MapSpec& f, const ExtendedPoint& x) { return f.apply(x); }

PointList apply_all(const MapSpec& f, std::span<const Point> xs);

} // namespace qhlab
