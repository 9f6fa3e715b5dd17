#include "qhlab/maps.hpp"

#include "qhlab/errors.hpp"

namespace qhlab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

ExtendedPoint apply_one(const MapSpec::Variant& v, const ExtendedPoint& x) {
  return std::visit(
      overloaded{
          [&](const IdentityMap&) { return x; },
          [&](const SimilarityMap& m) -> ExtendedPoint {
            if (x.is_infinity()) return x;
            Point p = x.point();
            double c = std::cos(m.rotation), s = std::sin(m.rotation);
            Point q = p;
            q[0] = c * p[0] - s * p[1];
            q[1] = s * p[0] + c * p[1];
            Point t = m.translation;
            if (t.dim() != q.dim()) {
              Point tt = q * 0.0;
              for (int i = 0; i < t.dim(); ++i) tt[i] = t[i];
              t = tt;
            }
            return q * m.scale + t;
          },
          [&](const RadialPowerMap& m) -> ExtendedPoint {
            if (x.is_infinity()) return x;
            const Point& p = x.point();
            double r = p.norm();
            if (r == 0.0) return p;
            return p * std::pow(r, m.alpha - 1.0);
          },
          [&](const InversionMap& m) -> ExtendedPoint {
            if (x.is_infinity()) return m.center;
            Point v = x.point() - m.center;
            double r2 = v.norm2();
            if (r2 == 0.0) return ExtendedPoint::infinity();
            return m.center + v / r2;
          },
          [&](const MobiusPlaneMap& m) -> ExtendedPoint {
            if (x.is_infinity()) {
              if (m.c == 0.0) return x;
              std::complex<double> w = m.a / m.c;
              return Point(w.real(), w.imag());
            }
            const Point& p = x.point();
            if (p.dim() != 2) throw UnsupportedError("MobiusPlane acts on planar points only");
            std::complex<double> z(p.x(), p.y());
            std::complex<double> den = m.c * z + m.d;
            if (den == 0.0) return ExtendedPoint::infinity();
            std::complex<double> w = (m.a * z + m.b) / den;
            return Point(w.real(), w.imag());
          },
          [&](const CompositionMap& m) {
            ExtendedPoint y = x;
            for (const auto& f : m.maps) y = f.apply(y);
            return y;
          },
      },
      v);
}

} // namespace

MapSpec::MapSpec(Variant v) {
  std::visit(overloaded{
                 [](const RadialPowerMap& m) {
                   if (!(m.alpha > 0)) throw ArgumentError("RadialPower needs alpha > 0");
                 },
                 [](const SimilarityMap& m) {
                   if (!(m.scale > 0)) throw ArgumentError("Similarity needs scale > 0");
                 },
                 [](const MobiusPlaneMap& m) {
                   if (m.a * m.d - m.b * m.c == 0.0) throw ArgumentError("MobiusPlane needs ad - bc != 0");
                 },
                 [](const auto&) {},
             },
             v);
  v_ = std::make_shared<const Variant>(std::move(v));
}

std::string MapSpec::kind() const {
  return std::visit(overloaded{
                        [](const IdentityMap&) { return std::string("Identity"); },
                        [](const SimilarityMap&) { return std::string("Similarity"); },
                        [](const RadialPowerMap&) { return std::string("RadialPower"); },
                        [](const InversionMap&) { return std::string("Inversion"); },
                        [](const MobiusPlaneMap&) { return std::string("MobiusPlane"); },
                        [](const CompositionMap&) { return std::string("Composition"); },
                    },
                    *v_);
}

ExtendedPoint MapSpec::apply(const ExtendedPoint& x) const { return apply_one(*v_, x); }

Point MapSpec::apply_finite(const Point& x) const {
  ExtendedPoint y = apply(x);
  if (y.is_infinity()) throw DegenerateError(kind() + " sends a finite point to infinity");
  return y.point();
}

MapSpec MapSpec::similarity(double scale, double rotation, Point translation) {
  return MapSpec(SimilarityMap{scale, rotation, translation});
}
MapSpec MapSpec::radial_power(double alpha) { return MapSpec(RadialPowerMap{alpha}); }
MapSpec MapSpec::inversion(Point center) { return MapSpec(InversionMap{center}); }
MapSpec MapSpec::mobius(std::complex<double> a, std::complex<double> b, std::complex<double> c,
                        std::complex<double> d) {
  return MapSpec(MobiusPlaneMap{a, b, c, d});
}
MapSpec MapSpec::compose(std::vector<MapSpec> maps) { return MapSpec(CompositionMap{std::move(maps)}); }

PointList apply_all(const MapSpec& f, std::span<const Point> xs) {
  PointList out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(f.apply_finite(x));
  return out;
}

} // namespace qhlab
