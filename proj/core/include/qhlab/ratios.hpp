#pragma once

#include "qhlab/point.hpp"

#include <array>

namespace qhlab {

// |y - x| / |z - x|. Throws DegenerateError when x == z.
double triple_ratio(const Point& x, const Point& y, const Point& z);

// Ordered quadruple of pairwise distinct extended points.
class Tuple4 {
public:
  // Throws DegenerateError on coincident entries.
  Tuple4(ExtendedPoint x, ExtendedPoint y, ExtendedPoint z, ExtendedPoint w);
  const ExtendedPoint& operator[](int i) const { return p_[static_cast<std::size_t>(i)]; }
  bool has_infinity() const;

private:
  std::array<ExtendedPoint, 4> p_;
};

// tau = (|x - z| / |x - y|) * (|y - w| / |z - w|); distances to infinity cancel.
double cross_ratio(const Tuple4& q);
double cross_ratio(const Point& x, const Point& y, const Point& z, const Point& w);

// <x,y,z,w> = (|x - z| ^ |y - w|) / (|x - y| ^ |z - w|). Finite points only.
double bk_ratio(const Tuple4& q);
double bk_ratio(const Point& x, const Point& y, const Point& z, const Point& w);

} // namespace qhlab
