#include "qhlab/domain.hpp"

#include "qhlab/errors.hpp"

#include <algorithm>
#include <limits>
#include <numbers>

namespace qhlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool in_box(const Point& p, const Point& lo, const Point& hi) {
  constexpr double eps = 1e-12;
  for (int i = 0; i < p.dim(); ++i)
    if (p[i] < lo[i] - eps || p[i] > hi[i] + eps) return false;
  return true;
}

// Angle of p mapped into [t0, t0 + 2 pi).
double angle_from(const Point& p, double t0) {
  double a = std::atan2(p.y(), p.x());
  a = t0 + std::fmod(a - t0, kTwoPi);
  if (a < t0) a += kTwoPi;
  return a;
}

PointList sphere_samples(const Point& c, double r, double h) {
  PointList out;
  if (c.dim() == 2) {
    auto n = static_cast<std::size_t>(std::ceil(kTwoPi * r / h));
    n = std::max<std::size_t>(n, 8);
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      double t = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
      out.push_back(c + Point(r * std::cos(t), r * std::sin(t)));
    }
    return out;
  }
  // Fibonacci lattice; 4 (4 pi r^2 / h^2) points keep neighbour gaps below h.
  auto n = static_cast<std::size_t>(std::ceil(16.0 * std::numbers::pi * r * r / (h * h)));
  n = std::max<std::size_t>(n, 32);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (std::size_t i = 0; i < n; ++i) {
    double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    double rad = std::sqrt(std::max(0.0, 1.0 - z * z));
    double t = golden * static_cast<double>(i);
    out.push_back(c + Point(r * rad * std::cos(t), r * rad * std::sin(t), r * z));
  }
  return out;
}

std::vector<double> ticks(double a, double b, double h) {
  std::vector<double> t;
  if (b < a) return t;
  auto n = static_cast<std::size_t>(std::ceil((b - a) / h));
  n = std::max<std::size_t>(n, 1);
  for (std::size_t i = 0; i <= n; ++i) t.push_back(a + (b - a) * static_cast<double>(i) / static_cast<double>(n));
  return t;
}

PointList rectangle_boundary(const Rectangle& r, double h) {
  PointList out;
  if (r.lo.dim() == 2) {
    for (double x : ticks(r.lo.x(), r.hi.x(), h)) {
      out.emplace_back(x, r.lo.y());
      out.emplace_back(x, r.hi.y());
    }
    auto ys = ticks(r.lo.y(), r.hi.y(), h);
    for (std::size_t i = 1; i + 1 < ys.size(); ++i) {
      out.emplace_back(r.lo.x(), ys[i]);
      out.emplace_back(r.hi.x(), ys[i]);
    }
    return out;
  }
  // Each face sampled on its own grid; edges appear more than once.
  for (int axis = 0; axis < 3; ++axis) {
    int u = (axis + 1) % 3, v = (axis + 2) % 3;
    for (double side : {r.lo[axis], r.hi[axis]})
      for (double a : ticks(r.lo[u], r.hi[u], h))
        for (double b : ticks(r.lo[v], r.hi[v], h)) {
          Point p(0, 0, 0);
          p[axis] = side;
          p[u] = a;
          p[v] = b;
          out.push_back(p);
        }
  }
  return out;
}

} // namespace

DomainSpec::DomainSpec(Variant v) : v_(std::move(v)) {
  std::visit(overloaded{
                 [](const HalfPlane& d) {
                   if (d.dim != 2 && d.dim != 3) throw ArgumentError("HalfPlane dimension must be 2 or 3");
                 },
                 [](const Ball& d) {
                   if (!(d.radius > 0) || !d.center.finite()) throw ArgumentError("Ball radius must be > 0");
                 },
                 [](const PuncturedBall& d) {
                   if (!(d.radius > 0) || !d.center.finite())
                     throw ArgumentError("PuncturedBall radius must be > 0");
                 },
                 [](const BallExterior& d) {
                   if (!(d.radius > 0) || !d.center.finite())
                     throw ArgumentError("BallExterior radius must be > 0");
                 },
                 [](const Rectangle& d) {
                   if (d.lo.dim() != d.hi.dim()) throw ArgumentError("Rectangle corners differ in dimension");
                   for (int i = 0; i < d.lo.dim(); ++i)
                     if (!(d.lo[i] < d.hi[i])) throw ArgumentError("Rectangle corners must be strictly ordered");
                 },
                 [](const ArcComplement& d) {
                   double len = d.t_end - d.t_begin;
                   if (!(len > 0) || len > kTwoPi + 1e-15)
                     throw ArgumentError("ArcComplement range must be nonempty and at most 2 pi");
                 },
             },
             v_);
}

std::string DomainSpec::kind() const {
  return std::visit(overloaded{
                        [](const HalfPlane&) { return std::string("HalfPlane"); },
                        [](const Ball&) { return std::string("Ball"); },
                        [](const PuncturedBall&) { return std::string("PuncturedBall"); },
                        [](const BallExterior&) { return std::string("BallExterior"); },
                        [](const Rectangle&) { return std::string("Rectangle"); },
                        [](const ArcComplement&) { return std::string("ArcComplement"); },
                    },
                    v_);
}

int DomainSpec::dim() const {
  return std::visit(overloaded{
                        [](const HalfPlane& d) { return d.dim; },
                        [](const Ball& d) { return d.center.dim(); },
                        [](const PuncturedBall& d) { return d.center.dim(); },
                        [](const BallExterior& d) { return d.center.dim(); },
                        [](const Rectangle& d) { return d.lo.dim(); },
                        [](const ArcComplement&) { return 2; },
                    },
                    v_);
}

bool DomainSpec::bounded() const {
  return std::holds_alternative<Ball>(v_) || std::holds_alternative<PuncturedBall>(v_) ||
         std::holds_alternative<Rectangle>(v_);
}

bool DomainSpec::contains(const ExtendedPoint& x) const {
  if (x.is_infinity())
    return std::holds_alternative<BallExterior>(v_) || std::holds_alternative<ArcComplement>(v_);
  const Point& p = x.point();
  if (!p.finite()) return false;
  return std::visit(overloaded{
                        [&](const HalfPlane& d) { return p[d.dim - 1] > 0.0; },
                        [&](const Ball& d) { return distance(p, d.center) < d.radius; },
                        [&](const PuncturedBall& d) {
                          double r = distance(p, d.center);
                          return r > 0.0 && r < d.radius;
                        },
                        [&](const BallExterior& d) { return distance(p, d.center) > d.radius; },
                        [&](const Rectangle& d) {
                          for (int i = 0; i < d.lo.dim(); ++i)
                            if (!(p[i] > d.lo[i] && p[i] < d.hi[i])) return false;
                          return true;
                        },
                        [&](const ArcComplement& d) {
                          double r = p.norm();
                          if (r != 1.0) return true;
                          return angle_from(p, d.t_begin) > d.t_end;
                        },
                    },
                    v_);
}

double DomainSpec::boundary_distance(const Point& x) const {
  if (!contains(x)) throw DomainMembershipError("point lies outside the " + kind() + " domain");
  return std::visit(overloaded{
                        [&](const HalfPlane& d) { return x[d.dim - 1]; },
                        [&](const Ball& d) { return d.radius - distance(x, d.center); },
                        [&](const PuncturedBall& d) {
                          double r = distance(x, d.center);
                          return std::min(r, d.radius - r);
                        },
                        [&](const BallExterior& d) { return distance(x, d.center) - d.radius; },
                        [&](const Rectangle& d) {
                          double best = std::numeric_limits<double>::infinity();
                          for (int i = 0; i < d.lo.dim(); ++i)
                            best = std::min({best, x[i] - d.lo[i], d.hi[i] - x[i]});
                          return best;
                        },
                        [&](const ArcComplement& d) {
                          double r = x.norm();
                          if (r == 0.0) return 1.0;
                          // Distance to the circle point at angle t grows with the angular gap, so
                          // the nearest arc point is the radial projection or an endpoint.
                          if (angle_from(x, d.t_begin) <= d.t_end) return std::abs(r - 1.0);
                          Point a(std::cos(d.t_begin), std::sin(d.t_begin));
                          Point b(std::cos(d.t_end), std::sin(d.t_end));
                          return std::min(distance(x, a), distance(x, b));
                        },
                    },
                    v_);
}

PointList DomainSpec::sample_boundary(double h, const Point& lo, const Point& hi) const {
  if (!(h > 0)) throw ArgumentError("boundary sampling needs h > 0");
  PointList raw = std::visit(
      overloaded{
          [&](const HalfPlane& d) {
            PointList out;
            if (d.dim == 2) {
              for (double x : ticks(lo.x(), hi.x(), h)) out.emplace_back(x, 0.0);
            } else {
              for (double x : ticks(lo.x(), hi.x(), h))
                for (double y : ticks(lo.y(), hi.y(), h)) out.emplace_back(x, y, 0.0);
            }
            return out;
          },
          [&](const Ball& d) { return sphere_samples(d.center, d.radius, h); },
          [&](const PuncturedBall& d) {
            PointList out = sphere_samples(d.center, d.radius, h);
            out.push_back(d.center);
            return out;
          },
          [&](const BallExterior& d) { return sphere_samples(d.center, d.radius, h); },
          [&](const Rectangle& d) { return rectangle_boundary(d, h); },
          [&](const ArcComplement& d) {
            PointList out;
            for (double t : ticks(d.t_begin, d.t_end, h)) out.emplace_back(std::cos(t), std::sin(t));
            return out;
          },
      },
      v_);
  PointList out;
  out.reserve(raw.size());
  for (const auto& p : raw)
    if (in_box(p, lo, hi)) out.push_back(p);
  return out;
}

std::pair<Point, Point> DomainSpec::bounding_box() const {
  auto ball_box = [](const Point& c, double r) {
    Point lo = c, hi = c;
    for (int i = 0; i < c.dim(); ++i) {
      lo[i] -= r;
      hi[i] += r;
    }
    return std::pair{lo, hi};
  };
  if (auto* b = std::get_if<Ball>(&v_)) return ball_box(b->center, b->radius);
  if (auto* b = std::get_if<PuncturedBall>(&v_)) return ball_box(b->center, b->radius);
  if (auto* r = std::get_if<Rectangle>(&v_)) return {r->lo, r->hi};
  throw UnsupportedError(kind() + " is unbounded; pass an explicit sampling box");
}

} // namespace qhlab
