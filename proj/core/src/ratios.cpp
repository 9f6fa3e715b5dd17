#include "qhlab/ratios.hpp"

#include "qhlab/errors.hpp"

#include <algorithm>

namespace qhlab {

double triple_ratio(const Point& x, const Point& y, const Point& z) {
  double den = distance(z, x);
  if (den == 0.0) throw DegenerateError("triple ratio with x == z");
  return distance(y, x) / den;
}

namespace {

bool same(const ExtendedPoint& a, const ExtendedPoint& b) {
  if (a.is_infinity() || b.is_infinity()) return a.is_infinity() && b.is_infinity();
  return a.point() == b.point();
}

} // namespace

Tuple4::Tuple4(ExtendedPoint x, ExtendedPoint y, ExtendedPoint z, ExtendedPoint w) : p_{x, y, z, w} {
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j)
      if (same(p_[i], p_[j])) throw DegenerateError("quadruple entries must be pairwise distinct");
}

bool Tuple4::has_infinity() const {
  return std::any_of(p_.begin(), p_.end(), [](const ExtendedPoint& p) { return p.is_infinity(); });
}

double cross_ratio(const Tuple4& q) {
  // Numerator pairs (x,z), (y,w); denominator pairs (x,y), (z,w). A point at
  // infinity occurs in exactly one pair of each, and those two factors cancel.
  constexpr int num[2][2] = {{0, 2}, {1, 3}};
  constexpr int den[2][2] = {{0, 1}, {2, 3}};
  auto factor = [&](const int (&pr)[2]) -> double {
    const auto& a = q[pr[0]];
    const auto& b = q[pr[1]];
    if (a.is_infinity() || b.is_infinity()) return 1.0;
    return distance(a.point(), b.point());
  };
  return (factor(num[0]) * factor(num[1])) / (factor(den[0]) * factor(den[1]));
}

double cross_ratio(const Point& x, const Point& y, const Point& z, const Point& w) {
  return cross_ratio(Tuple4(x, y, z, w));
}

double bk_ratio(const Tuple4& q) {
  if (q.has_infinity()) throw UnsupportedError("the min-ratio is defined for finite points only");
  const Point &x = q[0].point(), &y = q[1].point(), &z = q[2].point(), &w = q[3].point();
  return std::min(distance(x, z), distance(y, w)) / std::min(distance(x, y), distance(z, w));
}

double bk_ratio(const Point& x, const Point& y, const Point& z, const Point& w) { return bk_ratio(Tuple4(x, y, z, w)); }

} // namespace qhlab
