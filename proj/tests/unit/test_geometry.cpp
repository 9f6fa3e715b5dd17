#include "support.hpp"

#include "qhlab/domain.hpp"
#include "qhlab/errors.hpp"
#include "qhlab/maps.hpp"
#include "qhlab/net.hpp"

#include <doctest.h>

#include <algorithm>
#include <limits>
#include <numbers>
#include <random>

using namespace qhlab;

TEST_SUITE("geometry") {

TEST_CASE("boundary distance closed forms") {
  CHECK(boundary_distance(DomainSpec(HalfPlane{}), Point(3, 2)) == doctest::Approx(2.0));
  CHECK(boundary_distance(DomainSpec(Ball{Point(0, 0), 1.0}), Point(0.5, 0)) == doctest::Approx(0.5));
  CHECK(boundary_distance(DomainSpec(Rectangle{Point(0, 0), Point(2, 1)}), Point(1.5, 0.4)) ==
        doctest::Approx(0.4));
  CHECK(boundary_distance(DomainSpec(BallExterior{Point(0, 0), 1.0}), Point(3, 0)) == doctest::Approx(2.0));
  CHECK(boundary_distance(DomainSpec(PuncturedBall{Point(0, 0), 1.0}), Point(0.2, 0)) == doctest::Approx(0.2));
  CHECK(boundary_distance(DomainSpec(PuncturedBall{Point(0, 0), 1.0}), Point(0.7, 0)) == doctest::Approx(0.3));
}

TEST_CASE("arc complement distance matches a brute-force arc minimum") {
  DomainSpec d(ArcComplement{-std::numbers::pi / 2, std::numbers::pi / 2});
  const Point x(-2, 0);
  double best = std::numeric_limits<double>::infinity();
  const int n = 200000;
  for (int i = 0; i <= n; ++i) {
    double t = -std::numbers::pi / 2 + std::numbers::pi * i / n;
    best = std::min(best, distance(x, Point(std::cos(t), std::sin(t))));
  }
  CHECK(boundary_distance(d, x) == doctest::Approx(best).epsilon(1e-9));
  CHECK(boundary_distance(d, x) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
  CHECK(boundary_distance(d, Point(0.5, 0)) == doctest::Approx(0.5));
  CHECK(boundary_distance(d, Point(-1, 0)) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("membership") {
  CHECK(contains(DomainSpec(Ball{Point(0, 0), 1.0}), Point(0.5, 0)));
  CHECK_FALSE(contains(DomainSpec(Ball{Point(0, 0), 1.0}), Point(2, 0)));
  CHECK(contains(DomainSpec(BallExterior{Point(0, 0), 1.0}), ExtendedPoint::infinity()));
  CHECK(contains(DomainSpec(ArcComplement{0, 1}), ExtendedPoint::infinity()));
  CHECK_FALSE(contains(DomainSpec(Ball{Point(0, 0), 1.0}), ExtendedPoint::infinity()));
  CHECK_FALSE(contains(DomainSpec(PuncturedBall{Point(0, 0), 1.0}), Point(0, 0)));
  CHECK_FALSE(contains(DomainSpec(HalfPlane{}), Point(1, 0)));
  CHECK_THROWS_AS(boundary_distance(DomainSpec(Ball{Point(0, 0), 1.0}), Point(2, 0)), DomainMembershipError);
}

TEST_CASE("invalid domains are rejected") {
  CHECK_THROWS_AS(DomainSpec(Ball{Point(0, 0), -1.0}), ArgumentError);
  CHECK_THROWS_AS(DomainSpec(Rectangle{Point(1, 0), Point(0, 1)}), ArgumentError);
}

TEST_CASE("random interior points have positive boundary distance") {
  struct Case {
    DomainSpec d;
    double lo, hi;
  };
  std::vector<Case> cases{
      {DomainSpec(HalfPlane{}), -5, 5},
      {DomainSpec(Ball{Point(0.3, -0.2), 1.5}), -2, 2},
      {DomainSpec(PuncturedBall{Point(0, 0), 1.0}), -1, 1},
      {DomainSpec(BallExterior{Point(0, 0), 1.0}), -4, 4},
      {DomainSpec(Rectangle{Point(0, 0), Point(1, 0.5)}), -0.5, 1.5},
      {DomainSpec(ArcComplement{-1.0, 2.0}), -3, 3},
  };
  for (const auto& c : cases) {
    CAPTURE(c.d.kind());
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(c.lo, c.hi);
    int accepted = 0, bad = 0;
    while (accepted < 10000) {
      double x = u(rng);
      Point p(x, u(rng));
      if (!c.d.contains(p)) continue;
      ++accepted;
      if (!(c.d.boundary_distance(p) > 0)) ++bad;
    }
    CHECK(bad == 0);
  }
}

TEST_CASE("diameter") {
  PointList two{Point(0, 0), Point(3, 4)};
  CHECK(diameter(two) == doctest::Approx(5.0));
  PointList one{Point(0, 0)};
  CHECK(diameter(one) == 0.0);
  CHECK_THROWS_AS(diameter(PointList{}), ArgumentError);

  const auto c = support::circle(1000);
  double brute = 0;
  for (const auto& a : c)
    for (const auto& b : c) brute = std::max(brute, distance(a, b));
  const double h = 2 * std::numbers::pi / 1000;
  CHECK(diameter(c) == doctest::Approx(brute).epsilon(1e-15));
  CHECK(std::abs(diameter(c) - 2.0) <= 2 * h);

  PointList cube{Point(0, 0, 0), Point(1, 1, 1), Point(1, 0, 0)};
  CHECK(diameter(cube) == doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("separated third point") {
  const auto c = support::circle(400);
  Point z3 = separated_third_point(c, Point(1, 0), Point(-1, 0));
  CHECK(std::abs(z3.x()) < 1e-12);
  CHECK(std::abs(std::abs(z3.y()) - 1.0) < 1e-12);
  CHECK(std::min(distance(z3, Point(1, 0)), distance(z3, Point(-1, 0))) >= 2.0 / 6);

  // Corners only: both far corners realize the optimum min-distance 1.
  PointList corners{Point(0, 0), Point(1, 0), Point(1, 1), Point(0, 1)};
  Point w = separated_third_point(corners, Point(0, 0), Point(1, 0));
  CHECK(w.y() == 1.0);
  CHECK(std::min(distance(w, Point(0, 0)), distance(w, Point(1, 0))) == doctest::Approx(1.0));

  // On a sampled square boundary the optimum is brute-forced.
  const auto sq = support::square_boundary(20);
  Point v = separated_third_point(sq, Point(0, 0), Point(1, 0));
  double brute = 0;
  for (const auto& p : sq) brute = std::max(brute, std::min(distance(p, Point(0, 0)), distance(p, Point(1, 0))));
  CHECK(std::min(distance(v, Point(0, 0)), distance(v, Point(1, 0))) == brute);

  PointList pair{Point(0, 0), Point(1, 0)};
  CHECK_THROWS_AS(separated_third_point(pair, Point(0, 0), Point(1, 0)), ArgumentError);
}

TEST_CASE("map application") {
  auto img = MapSpec::radial_power(2).apply_finite(Point(0.5, 0));
  CHECK(img.x() == doctest::Approx(0.25));
  CHECK(img.y() == doctest::Approx(0.0));
  auto inv = MapSpec::inversion().apply_finite(Point(0, 2));
  CHECK(inv.x() == doctest::Approx(0.0));
  CHECK(inv.y() == doctest::Approx(0.5));
  CHECK(MapSpec::inversion().apply(Point(0, 0)).is_infinity());
  CHECK(MapSpec::inversion().apply(ExtendedPoint::infinity()).point() == Point(0, 0));
  CHECK_THROWS_AS(MapSpec::inversion().apply_finite(Point(0, 0)), DegenerateError);

  // Moebius pole goes to infinity, infinity goes to a / c.
  auto m = MapSpec::mobius({1, 0}, {0, 0}, {1, 0}, {-1, 0});
  CHECK(m.apply(Point(1, 0)).is_infinity());
  auto at_inf = m.apply(ExtendedPoint::infinity());
  CHECK(at_inf.point().x() == doctest::Approx(1.0));

  // Compositions apply left to right.
  auto comp = MapSpec::compose({MapSpec::similarity(2.0, 0.0, Point(1, 0)), MapSpec::radial_power(2)});
  auto p = comp.apply_finite(Point(1, 0));
  CHECK(p.x() == doctest::Approx(9.0));
  auto sim = MapSpec::similarity(1.0, std::numbers::pi / 2).apply_finite(Point(1, 0));
  CHECK(sim.x() == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(sim.y() == doctest::Approx(1.0));

  CHECK_THROWS_AS(MapSpec::radial_power(0), ArgumentError);
  CHECK_THROWS_AS(MapSpec::mobius({1, 0}, {1, 0}, {1, 0}, {1, 0}), ArgumentError);
}

TEST_CASE("inversion is an involution and satisfies the distortion identity") {
  auto u = MapSpec::inversion();
  auto pts = support::uniform_box(2000, -3, 3, 9);
  double worst_inv = 0, worst_id = 0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Point& x = pts[i];
    const Point& y = pts[i + 1];
    Point back = u.apply_finite(u.apply_finite(x));
    worst_inv = std::max(worst_inv, distance(back, x) / x.norm());
    double lhs = distance(u.apply_finite(x), u.apply_finite(y)) * x.norm() * y.norm();
    worst_id = std::max(worst_id, std::abs(lhs - distance(x, y)) / distance(x, y));
  }
  CHECK(worst_inv <= 1e-12);
  CHECK(worst_id <= 1e-12);
}

TEST_CASE("nets: ball") {
  DomainSpec ball(Ball{Point(0, 0), 1.0});
  const double h = 0.05;
  auto net = sample_net(ball, h, 1);
  CHECK(net.size() > 100);
  CHECK(component_count(net) == 1);
  double min_depth = 1;
  for (std::size_t i = 0; i < net.size(); ++i) min_depth = std::min(min_depth, net.depth(i));
  CHECK(min_depth > 0);

  // Edge rule.
  const auto& adj = net.adjacency();
  bool rule = true;
  for (std::size_t i = 0; i < net.size(); ++i)
    for (auto k = adj.offsets[i]; k < adj.offsets[i + 1]; ++k) {
      std::size_t j = adj.targets[k];
      rule = rule && adj.lengths[k] <= std::min(net.depth(i), net.depth(j)) / 4 * (1 + 1e-12);
    }
  CHECK(rule);

  // Boundary samples agree with the closed-form distance to 2h.
  double worst = 0;
  for (std::size_t i = 0; i < net.size(); ++i) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& b : net.boundary_samples()) m = std::min(m, distance(net.point(i), b));
    worst = std::max(worst, std::abs(m - net.depth(i)));
  }
  CHECK(worst <= 2 * h);

  // Discrete diameters.
  CHECK(std::abs(diameter(net.boundary_samples()) - diameter(net.points())) <= 4 * h);

  auto again = sample_net(ball, h, 1);
  CHECK(again.points() == net.points());
  CHECK(again.adjacency().targets == net.adjacency().targets);
  auto other = sample_net(ball, h, 2);
  CHECK(other.points() != net.points());
}

TEST_CASE("nets: halfplane window covers a vertical segment") {
  auto net = sample_net(DomainSpec(HalfPlane{}), 0.01, Box{Point(-1, 0), Point(1, 3)}, 4);
  CHECK(component_count(net) == 1);
  double worst = 0;
  for (int i = 0; i <= 100; ++i) {
    Point p(0, 1 + (std::numbers::e - 1) * i / 100.0);
    worst = std::max(worst, net.nearest(p).second);
  }
  CHECK(worst <= 0.01);
}

TEST_CASE("nets: other domains and errors") {
  auto rect = sample_net(DomainSpec(Rectangle{Point(0, 0), Point(1, 1)}), 0.05, 1);
  CHECK(std::abs(diameter(rect.boundary_samples()) - diameter(rect.points())) <= 0.2);
  auto needle = sample_net(DomainSpec(Rectangle{Point(0, 0), Point(1, 0.001)}), 0.02, 1);
  CHECK(component_count(needle) == 1);
  auto punct = sample_net(DomainSpec(PuncturedBall{Point(0, 0), 1.0}), 0.05, 1);
  CHECK(component_count(punct) == 1);
  auto ext = sample_net(DomainSpec(BallExterior{Point(0, 0), 1.0}), 0.1, Box{Point(-3, -3), Point(3, 3)}, 1);
  CHECK(component_count(ext) == 1);

  CHECK_THROWS_AS(sample_net(DomainSpec(Ball{Point(0, 0), 1.0}), -1.0, 1), ArgumentError);
  CHECK_THROWS_AS(sample_net(DomainSpec(Ball{Point(0, 0), 1.0}), 0.1, Box{Point(5, 5), Point(6, 6)}, 1),
                  DiscretizationError);
  CHECK_THROWS_AS(sample_net(DomainSpec(HalfPlane{}), 0.1, 1), UnsupportedError);
}

} // TEST_SUITE
