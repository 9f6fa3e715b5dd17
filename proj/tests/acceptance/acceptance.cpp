// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include "qhlab/analysis.hpp"
#include "qhlab/io.hpp"
#include "qhlab/metrics.hpp"
#include "qhlab/ratios.hpp"
#include "qhlab/scenarios.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

using namespace qhlab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void run(int id, const char* title, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("%s [%2d] %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double th0(double t) { return 3 * std::max(t, std::sqrt(t)); }
double th0_inv(double y) { return y <= 3 ? (y / 3) * (y / 3) : y / 3; }

PointList annulus(double r0, double r1, int radii, int angles) {
  PointList out;
  for (int i = 0; i < radii; ++i) {
    double r = r0 * std::pow(r1 / r0, static_cast<double>(i) / (radii - 1));
    for (int k = 0; k < angles; ++k) {
      double t = 2 * std::numbers::pi * (k + 0.5 * (i % 2)) / angles;
      out.emplace_back(r * std::cos(t), r * std::sin(t));
    }
  }
  return out;
}

PointList square_boundary(int per_side) {
  PointList out;
  for (int i = 0; i < per_side; ++i) {
    double s = static_cast<double>(i) / per_side;
    out.emplace_back(s, 0.0);
    out.emplace_back(1.0, s);
    out.emplace_back(1.0 - s, 1.0);
    out.emplace_back(0.0, 1.0 - s);
  }
  return out;
}

Point gaussian_point(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  double x = g(rng);
  return Point(x, g(rng));
}

const Check* find_check(const Scenario& s, const std::string& prefix) {
  for (const auto& c : s.checks)
    if (c.description.rfind(prefix, 0) == 0) return &c;
  return nullptr;
}

bool all_pass(const Scenario& s, std::string& why) {
  for (const auto& c : s.checks)
    if (!c.pass) {
      why += s.name + ": " + c.description + " = " + std::to_string(c.computed) + "; ";
      return false;
    }
  return true;
}

Outcome qh_oracle() {
  auto t0 = std::chrono::steady_clock::now();
  auto net = sample_net(DomainSpec(HalfPlane{}), 0.01, Box{Point(-1, 0), Point(1, 3)}, 1);
  auto r = qh_distance(net, Point(0, 1), Point(0, std::numbers::e));
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {r.value >= 0.98 && r.value <= 1.02 && secs < 10.0,
          fmt("k = %.5f, analytic 1, %.0f net points, %.2f s", r.value, static_cast<double>(net.size()), secs)};
}

Outcome metric_inequalities() {
  DomainSpec ball(Ball{Point(0, 0), 1.0});
  const double h = 0.05;
  auto net = sample_net(ball, h, 2);
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<std::size_t> pick(0, net.size() - 1);
  std::size_t pairs = 0, kj_bad = 0, jl_bad = 0;
  std::size_t local = 0, local_bad = 0;
  double lo_min = 1e300, hi_max = 0;
  for (std::size_t a = 0; a < net.size(); ++a) {
    const Point& x = net.point(a);
    const double dx = net.depth(a);
    const bool sampled = a % (net.size() / 50 + 1) == 0;
    // Local pairs need k only up to the sandwich ceiling; anything beyond counts as a violation.
    auto k = qh_from(net, a, sampled ? std::numeric_limits<double>::infinity() : 1.01 * (1 + 4 * h / dx));
    if (sampled) {
      for (int t = 0; t < 200 && pairs < 10000; ++t, ++pairs) {
        std::size_t b = pick(rng);
        double j = j_distance(ball, x, net.point(b));
        if (k[b] < j) ++kj_bad;
        if (j < std::abs(std::log(dx / net.depth(b)))) ++jl_bad;
      }
    }
    for (std::size_t b = 0; b < net.size(); ++b) {
      double len = distance(x, net.point(b));
      if (b == a || len > 0.5 * dx) continue;
      ++local;
      double lo = 0.5 * len / dx, hi = 2 * len / dx * (1 + 4 * h / dx);
      lo_min = std::min(lo_min, k[b] / lo);
      hi_max = std::max(hi_max, k[b] / hi);
      if (!(k[b] > lo && k[b] <= hi)) ++local_bad;
    }
  }
  bool ok = pairs == 10000 && kj_bad == 0 && jl_bad == 0 && local > 0 && local_bad == 0;
  std::ostringstream os;
  os << pairs << " pairs, " << kj_bad << " with k < j, " << jl_bad << " with j < |log d ratio|; " << local
     << " local pairs, " << local_bad << " outside the sandwich (k/lower >= " << lo_min << ", k/upper <= " << hi_max
     << ")";
  return {ok, os.str()};
}

Outcome bk_bound() {
  std::mt19937_64 rng(3);
  double worst = 0;
  std::size_t bad = 0;
  for (int i = 0; i < 100000; ++i) {
    Point x = gaussian_point(rng), y = gaussian_point(rng), z = gaussian_point(rng), w = gaussian_point(rng);
    double bk = bk_ratio(x, y, z, w), bound = th0(cross_ratio(x, y, z, w));
    worst = std::max(worst, bk / bound);
    if (bk > bound * (1 + 1e-12)) ++bad;
  }
  return {bad == 0, fmt("10^5 quadruples, %.0f violations, max bk/theta0(tau) = %.6f", static_cast<double>(bad), worst)};
}

Outcome control_formulas() {
  auto id = ControlFunction::identity();
  double lam = lambda_from_eta(id);
  double eta1 = eta_from_theta_lambda(id, 1.0)(1.0);
  double theta1 = theta_from_eta(id)(1.0);
  double hand_eta = 3 * th0(1 / th0_inv(1 / 3.0));
  double hand_theta = 1 / th0_inv(1 / th0(1.0));
  bool ok = lam == 12.0 && std::abs(eta1 - hand_eta) <= 1e-8 && std::abs(theta1 - hand_theta) <= 1e-8 &&
            hand_eta == 729.0 && hand_theta == 81.0;
  return {ok, fmt("lambda = %.12g, eta(1) = %.12g, theta(1) = %.12g", lam, eta1, theta1)};
}

struct PairRuns {
  std::vector<Scenario> necessity, sufficiency;
};

const PairRuns& three_point_runs() {
  static const PairRuns runs = [] {
    PairRuns r;
    auto sq = square_boundary(6);
    auto ann = annulus(0.1, 1.0, 5, 8);
    std::vector<std::pair<MapSpec, PointList>> cases{
        {MapSpec::identity(), sq}, {MapSpec::similarity(2.0, 0.7, Point(1, -1)), sq},
        {MapSpec::radial_power(2), ann}};
    for (const auto& [f, xs] : cases) {
      auto [n, s] = run_three_point_pair(f, xs);
      r.necessity.push_back(n);
      r.sufficiency.push_back(s);
    }
    r.necessity.push_back(run_three_point_necessity(MapSpec::identity(), sq, ControlFunction::identity()));
    r.necessity.push_back(
        run_three_point_necessity(MapSpec::similarity(2.0), sq, ControlFunction::identity()));
    return r;
  }();
  return runs;
}

Outcome necessity() {
  std::string why;
  bool ok = true;
  std::ostringstream os;
  for (const auto& s : three_point_runs().necessity) {
    ok = all_pass(s, why) && ok;
    ok = ok && find_check(s, "three-point lambda") && find_check(s, "cross envelope");
    os << s.bindings.at("map").at("kind").get<std::string>() << " lambda " << s.observations.at("lambda_hat")
       << "; ";
  }
  return {ok, os.str() + why};
}

Outcome sufficiency() {
  std::string why;
  bool ok = true;
  std::ostringstream os;
  const auto& runs = three_point_runs();
  for (std::size_t i = 0; i < runs.sufficiency.size(); ++i) {
    const auto& s = runs.sufficiency[i];
    ok = all_pass(s, why) && ok;
    ok = ok && find_check(s, "triple envelope") &&
         s.observations.at("lambda_hat") == runs.necessity[i].observations.at("lambda_hat");
    const Check* c = find_check(s, "triple envelope");
    os << s.bindings.at("map").at("kind").get<std::string>() << " worst ratio " << (c ? c->computed : -1) << "; ";
  }
  return {ok, os.str() + why};
}

Outcome diam_lemma() {
  std::string why;
  bool ok = true;
  std::ostringstream os;
  for (const auto& d : {DomainSpec(Ball{Point(0, 0), 1.0}), DomainSpec(Rectangle{Point(0, 0), Point(1, 1)}),
                        DomainSpec(Rectangle{Point(0, 0), Point(1, 1e-3)})}) {
    auto s = run_diam_lemma(d, 0.02, 1, 100);
    ok = all_pass(s, why) && ok;
    const Check* diam = find_check(s, "|diam");
    const Check* sep = find_check(s, "boundary pairs");
    ok = ok && diam && sep && sep->computed == 100;
    os << d.kind() << ": diam gap " << (diam ? diam->computed : -1) << ", " << (sep ? sep->computed : -1)
       << "/100; ";
  }
  return {ok, os.str() + why};
}

Outcome counterexamples() {
  CounterexampleOptions o;
  o.mesh = 0.1;
  o.levels = 3;
  o.inner_radius = 1e-2;
  o.seed = 1;
  auto all = run_counterexamples(o);
  const Scenario* square = nullptr;
  const Scenario* disk = nullptr;
  for (const auto& s : all) {
    if (s.name.find("radial_square") != std::string::npos) square = &s;
    if (s.name.find("disk_to_exterior") != std::string::npos) disk = &s;
  }
  if (!square || !disk) return {false, "scenario missing"};
  std::string why;
  bool ok = all_pass(*square, why) && all_pass(*disk, why);
  const Check* lip = find_check(*square, "bilipschitz");
  const Check* fin = find_check(*square, "triple envelope finite");
  const Check* growth = find_check(*square, "bucketwise envelope growth");
  const Check* resid = find_check(*disk, "boundary identity residual");
  ok = ok && lip && lip->computed >= 50 && fin && growth && growth->computed < 2 && resid && resid->computed <= 1e-12;
  double min_growth = 1e300;
  int levels = 0;
  for (const auto& c : disk->checks)
    if (c.description.rfind("envelope growth", 0) == 0) {
      min_growth = std::min(min_growth, c.computed);
      ++levels;
      ok = ok && c.computed >= 2;
    }
  ok = ok && levels == o.levels - 1;
  std::ostringstream os;
  os << "radial square: L = " << (lip ? lip->computed : -1) << ", resolved growth "
     << (growth ? growth->computed : -1) << "; disk inversion: residual " << (resid ? resid->computed : -1)
     << ", min growth per level " << min_growth;
  return {ok, os.str() + (why.empty() ? "" : "; " + why)};
}

Outcome inversion_identities() {
  std::mt19937_64 rng(9);
  auto u = MapSpec::inversion();
  double worst_id = 0;
  for (int i = 0; i < 10000; ++i) {
    Point x = gaussian_point(rng), y = gaussian_point(rng);
    double lhs = distance(u.apply_finite(x), u.apply_finite(y)) * x.norm() * y.norm();
    worst_id = std::max(worst_id, std::abs(lhs - distance(x, y)) / distance(x, y));
  }
  auto mob = MapSpec::mobius({1.5, 0.5}, {0.2, -1}, {0.3, 0.4}, {2, 0});
  double worst_cr = 0;
  for (int i = 0; i < 10000; ++i) {
    Point p[4];
    for (auto& q : p) q = gaussian_point(rng);
    double t = cross_ratio(p[0], p[1], p[2], p[3]);
    for (const auto* f : {&u, &mob}) {
      Point q[4];
      for (int k = 0; k < 4; ++k) q[k] = f->apply_finite(p[k]);
      worst_cr = std::max(worst_cr, std::abs(cross_ratio(q[0], q[1], q[2], q[3]) - t) / t);
    }
  }
  return {worst_id <= 1e-12 && worst_cr <= 1e-10,
          fmt("max relative identity residual %.2e, max cross-ratio drift %.2e", worst_id, worst_cr)};
}

Outcome delta_estimator() {
  PointList line;
  PointList rough;
  for (int i = 0; i < 12; ++i) {
    line.emplace_back(static_cast<double>(i * i + 3 * i), 0.0);
    rough.emplace_back(std::sqrt(static_cast<double>(i)), 0.0);
  }
  double d_line = delta_estimate(MetricOracle::euclidean(line), 1'000'000, 1).delta;
  double d_rough = delta_estimate(MetricOracle::euclidean(rough), 1'000'000, 1).delta;
  auto star = MetricOracle::from_function(6, [](std::size_t i, std::size_t j) {
    if (i == j) return 0.0;
    return (i == 0 || j == 0) ? 1.0 : 2.0;
  });
  double d_star = delta_estimate(star, 1'000'000, 1).delta;

  // Same physical landmarks on two resolutions.
  DomainSpec ball(Ball{Point(0, 0), 1.0});
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(-0.9, 0.9);
  PointList marks;
  while (marks.size() < 40) {
    Point p(u(rng), u(rng));
    if (p.norm() < 0.9) marks.push_back(p);
  }
  auto delta_on = [&](double h) {
    auto net = sample_net(ball, h, 1);
    std::vector<std::size_t> idx;
    for (const auto& p : marks) idx.push_back(net.nearest(p).first);
    return delta_estimate(MetricOracle::quasihyperbolic(net, idx), 3'000'000, 1).delta;
  };
  double coarse = delta_on(0.05), fine = delta_on(0.025);
  double drift = std::abs(coarse - fine) / fine;

  // Sandwich on all pairs of a 500-point net.
  auto net = sample_net(ball, 0.1, 3);
  std::vector<std::size_t> idx(net.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), rng);
  if (idx.size() < 500) return {false, "net has fewer than 500 points"};
  idx.resize(500);
  auto m = MetricOracle::quasihyperbolic(net, idx);
  double delta = std::max(delta_estimate(m, 5'000'000, 3).delta, delta_at_base(m, 0).delta);
  double eps = delta > 0 ? std::min(1.0, 1 / (5 * delta)) : 1.0;
  auto vd = visual_data(m, 0, eps);
  std::size_t bad = 0;
  double upper = 0;
  for (std::size_t i = 0; i < 500; ++i)
    for (std::size_t j = 0; j < 500; ++j) {
      if (i == j) continue;
      double rho = vd.at(vd.rho, i, j), d = vd.at(vd.chain, i, j);
      upper = std::max(upper, rho / d);
      if (d > rho || rho > 2 * d) ++bad;
    }
  bool ok = d_line == 0.0 && d_star == 0.0 && drift <= 0.2 && bad == 0;
  std::ostringstream os;
  os << "line " << d_line << " (irrational spacing " << d_rough << "), star " << d_star << "; delta at h=0.05: " << coarse << ", h=0.025: " << fine
     << " (drift " << 100 * drift << "%); 500-point net delta " << delta << ", eps " << eps << ", max rho/d "
     << upper << ", " << bad << " pairs outside";
  return {ok, os.str()};
}

Outcome determinism() {
  auto once = [] {
    std::vector<Scenario> all;
    auto sq = square_boundary(5);
    auto ann = annulus(0.1, 1.0, 4, 6);
    auto [n, s] = run_three_point_pair(MapSpec::radial_power(2), ann);
    all.push_back(n);
    all.push_back(s);
    all.push_back(run_three_point_necessity(MapSpec::identity(), sq, ControlFunction::identity()));
    all.push_back(run_three_point_sufficiency(MapSpec::inversion(), ann, ControlFunction::identity()));
    all.push_back(run_boundary_quasisymmetry(MapSpec::mobius({1, 0}, {0.3, 0}, {0.3, 0}, {1, 0}),
                                             DomainSpec(Ball{Point(0, 0), 1.0}), 0.1));
    all.push_back(run_diam_lemma(DomainSpec(Ball{Point(0, 0), 1.0}), 0.05, 5, 100));
    CounterexampleOptions co;
    co.seed = 5;
    for (auto& c : run_counterexamples(co)) all.push_back(std::move(c));
    SuiteOptions so;
    so.seed = 5;
    so.pairs = 2000;
    so.quadruples = 20000;
    so.visual_points = 60;
    all.push_back(run_invariant_suites(sample_net(DomainSpec(Ball{Point(0, 0), 1.0}), 0.05, 5), so));
    std::vector<std::string> dumps;
    for (const auto& sc : all) dumps.push_back(to_json(sc).dump());
    return dumps;
  };
  auto a = once(), b = once();
  std::size_t same = 0;
  for (std::size_t i = 0; i < a.size(); ++i) same += a[i] == b[i];
  return {a.size() == b.size() && same == a.size(),
          fmt("%.0f of %.0f scenario reports identical across runs", static_cast<double>(same),
              static_cast<double>(a.size()))};
}

} // namespace

int main() {
  run(1, "quasihyperbolic oracle on the half plane", qh_oracle);
  run(2, "k >= j >= |log d ratio| and the local two-sided estimate", metric_inequalities);
  run(3, "Bonk-Kleiner ratio below theta0 of the cross ratio", bk_bound);
  run(4, "control-function formulas", control_formulas);
  run(5, "three-point necessity scenario", necessity);
  run(6, "three-point sufficiency scenario", sufficiency);
  run(7, "diameter lemma scenario", diam_lemma);
  run(8, "counterexample suite", counterexamples);
  run(9, "inversion distortion identity and cross-ratio invariance", inversion_identities);
  run(10, "delta estimator and visual metric sandwich", delta_estimator);
  run(11, "determinism of scenario reports", determinism);
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
