#include "qhlab/scenarios.hpp"

#include "qhlab/errors.hpp"
#include "qhlab/io.hpp"
#include "qhlab/ratios.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

namespace qhlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRelTol = 1e-9;

bool compare(double computed, const std::string& op, double bound, double tol) {
  if (std::isnan(computed) || std::isnan(bound)) return false;
  if (op == "<=") return computed <= bound + tol;
  if (op == ">=") return computed >= bound - tol;
  if (op == "<") return computed < bound;
  if (op == ">") return computed > bound;
  if (op == "==") return std::abs(computed - bound) <= tol;
  throw ArgumentError("unknown comparator " + op);
}

// Largest sup / bound(t_max) over nonempty buckets, with the bucket index.
std::pair<double, int> worst_ratio(const DistortionEnvelope& env, const ControlFunction& bound) {
  double worst = 0.0;
  int at = -1;
  for (int b = 0; b < DistortionEnvelope::kSlots; ++b) {
    if (env.empty(b)) continue;
    double q = env.bucket(b).sup / bound(env.bucket(b).t_max);
    if (q > worst || at < 0) {
      worst = q;
      at = b;
    }
  }
  return {worst, at};
}

void record_envelope_check(Scenario& s, const std::string& what, const DistortionEnvelope& env,
                           const ControlFunction& bound, std::span<const Point> xs) {
  s.observations[what + "_observations"] = static_cast<double>(env.observations());
  s.observations[what + "_skipped"] = static_cast<double>(env.skipped());
  if (env.observations() == 0) {
    s.no_data = true;
    return;
  }
  auto [worst, b] = worst_ratio(env, bound);
  s.check(what + " envelope / bound, worst nonempty bucket", worst, "<=", 1.0, kRelTol);
  s.bindings[what + "_worst_bucket"] = b;
  nlohmann::json w = nlohmann::json::array();
  for (int i = 0; i < env.arity(); ++i) w.push_back(to_json(xs[env.bucket(b).witness[static_cast<std::size_t>(i)]]));
  s.bindings[what + "_worst_witness"] = w;
}

nlohmann::json points_json(std::span<const Point> pts) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& p : pts) a.push_back(to_json(p));
  return a;
}

Scenario necessity_impl(const MapSpec& f, std::span<const Point> xs, const ControlFunction& eta,
                        const ConstantReport* lambda, const ThreePointOptions& opt) {
  Scenario s;
  s.name = "run_three_point_necessity";
  s.bindings["map"] = to_json(f);
  s.bindings["eta"] = to_json(eta);
  s.bindings["points"] = xs.size();
  s.bindings["seed"] = opt.scan.seed;

  auto qs = qs_scan(f, xs, std::nullopt, opt.scan);
  int bad = qs.first_violation(eta, kRelTol);
  if (bad >= 0) {
    const auto& bk = qs.bucket(bad);
    s.check("eta dominates the triple-ratio envelope (precondition)", bk.sup, "<=", eta(bk.t_max), 0.0);
    s.bindings["aborted"] = true;
    s.bindings["violating_triple"] = points_json(std::vector<Point>{xs[bk.witness[0]], xs[bk.witness[1]], xs[bk.witness[2]]});
    s.finalize();
    return s;
  }
  record_envelope_check(s, "triple", qs, eta, xs);

  auto qm = qm_scan(f, xs, std::nullopt, opt.scan);
  record_envelope_check(s, "cross", qm, theta_from_eta(eta), xs);

  ConstantReport own;
  if (!lambda) {
    own = three_point_lambda(f, xs, opt.scan);
    lambda = &own;
  }
  const double lam_bound = lambda_from_eta(eta);
  s.observations["lambda_hat"] = lambda->value;
  s.check("three-point lambda within lambda_from_eta", lambda->value, "<=", lam_bound, kRelTol * lam_bound);

  PointList ys;
  for (const auto& x : xs) ys.push_back(f.apply_finite(x));
  std::size_t a = 0, b = 1;
  double dy = -1.0;
  for (std::size_t i = 0; i < ys.size(); ++i)
    for (std::size_t j = i + 1; j < ys.size(); ++j)
      if (double d = distance(ys[i], ys[j]); d > dy) {
        dy = d;
        a = i;
        b = j;
      }
  Point z3 = separated_third_point(ys, ys[a], ys[b]);
  double sep = std::min(distance(z3, ys[a]), distance(z3, ys[b]));
  s.check("image third point separated by diam / 6", sep, ">=", dy / 6.0, 0.0);
  s.bindings["separation_triple"] = points_json(std::vector<Point>{ys[a], ys[b], z3});
  s.finalize();
  return s;
}

Scenario sufficiency_impl(const MapSpec& f, std::span<const Point> xs, const ControlFunction& theta,
                          const ConstantReport& lambda, const ThreePointOptions& opt) {
  Scenario s;
  s.name = "run_three_point_sufficiency";
  s.bindings["map"] = to_json(f);
  s.bindings["theta"] = to_json(theta);
  s.bindings["points"] = xs.size();
  s.bindings["seed"] = opt.scan.seed;
  s.observations["lambda_hat"] = lambda.value;

  auto qm = qm_scan(f, xs, std::nullopt, opt.scan);
  int bad = qm.first_violation(theta, kRelTol);
  if (bad >= 0) {
    const auto& bk = qm.bucket(bad);
    s.check("theta dominates the cross-ratio envelope (precondition)", bk.sup, "<=", theta(bk.t_max), 0.0);
    s.bindings["aborted"] = true;
    s.finalize();
    return s;
  }
  auto eta = eta_from_theta_lambda(theta, lambda.value);
  auto qs = qs_scan(f, xs, std::nullopt, opt.scan);
  record_envelope_check(s, "triple", qs, eta, xs);
  s.finalize();
  return s;
}

} // namespace

Check& Scenario::check(std::string description, double computed, std::string comparator, double bound,
                       double tolerance) {
  Check c{std::move(description), computed, bound, std::move(comparator), tolerance, false};
  c.pass = compare(c.computed, c.comparator, c.bound, c.tolerance);
  checks.push_back(std::move(c));
  return checks.back();
}

void Scenario::finalize() {
  if (checks.empty()) no_data = true;
  pass = std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

Scenario run_three_point_necessity(const MapSpec& f, std::span<const Point> xs, const ControlFunction& eta,
                                   const ThreePointOptions& opt) {
  return necessity_impl(f, xs, eta, nullptr, opt);
}

Scenario run_three_point_sufficiency(const MapSpec& f, std::span<const Point> xs, const ControlFunction& theta,
                                     const std::optional<ConstantReport>& lambda, const ThreePointOptions& opt) {
  if (lambda) return sufficiency_impl(f, xs, theta, *lambda, opt);
  return sufficiency_impl(f, xs, theta, three_point_lambda(f, xs, opt.scan), opt);
}

std::pair<Scenario, Scenario> run_three_point_pair(const MapSpec& f, std::span<const Point> xs,
                                                   const ThreePointOptions& opt) {
  auto lambda = three_point_lambda(f, xs, opt.scan);
  auto eta = qs_scan(f, xs, std::nullopt, opt.scan).dominating_control();
  auto theta = qm_scan(f, xs, std::nullopt, opt.scan).dominating_control();
  return {necessity_impl(f, xs, eta, &lambda, opt), sufficiency_impl(f, xs, theta, lambda, opt)};
}

Scenario run_boundary_quasisymmetry(const MapSpec& f, const DomainSpec& domain, double h,
                                    const ThreePointOptions& opt) {
  if (!domain.bounded()) throw ArgumentError("boundary quasisymmetry scenario needs a bounded domain");
  auto net = sample_net(domain, h, opt.scan.seed);
  const auto& bs = net.boundary_samples();
  PointList xs;
  constexpr std::size_t kEach = 24;
  for (std::size_t i = 0; i < kEach && i < bs.size(); ++i) xs.push_back(bs[i * bs.size() / std::min(kEach, bs.size())]);
  const std::size_t nb = xs.size();
  std::mt19937_64 rng(opt.scan.seed);
  std::vector<std::size_t> idx(net.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), rng);
  for (std::size_t i = 0; i < kEach && i < idx.size(); ++i) xs.push_back(net.point(idx[i]));

  std::span<const Point> boundary(xs.data(), nb);
  std::size_t a = 0, b = 1;
  double dx = -1.0;
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = i + 1; j < nb; ++j)
      if (double d = distance(xs[i], xs[j]); d > dx) {
        dx = d;
        a = i;
        b = j;
      }
  Point z3 = separated_third_point(boundary, xs[a], xs[b]);
  std::array<Point, 3> tri{xs[a], xs[b], z3};
  std::array<Point, 3> img{f.apply_finite(tri[0]), f.apply_finite(tri[1]), f.apply_finite(tri[2])};
  PointList ys;
  for (const auto& x : xs) ys.push_back(f.apply_finite(x));
  auto sep = [](const std::array<Point, 3>& t) {
    return std::min({distance(t[0], t[1]), distance(t[1], t[2]), distance(t[0], t[2])});
  };
  ConstantReport lambda;
  lambda.name = "lambda";
  lambda.value = std::max(diameter(xs) / sep(tri), diameter(ys) / sep(img));
  lambda.witness = {tri[0], tri[1], tri[2], img[0], img[1], img[2]};

  auto theta = qm_scan(f, xs, std::nullopt, opt.scan).dominating_control();
  Scenario s = sufficiency_impl(f, xs, theta, lambda, opt);
  s.name = "run_boundary_quasisymmetry";
  s.bindings["domain"] = to_json(domain);
  s.bindings["mesh"] = h;
  s.bindings["boundary_triple"] = points_json(tri);
  return s;
}

Scenario run_diam_lemma(const DomainSpec& domain, double h, std::uint64_t seed, std::size_t pairs) {
  if (!domain.bounded()) throw ArgumentError("the diameter lemma scenario needs a bounded domain");
  auto net = sample_net(domain, h, seed);
  const auto& bs = net.boundary_samples();
  Scenario s;
  s.name = "run_diam_lemma";
  s.bindings["domain"] = to_json(domain);
  s.bindings["mesh"] = h;
  s.bindings["seed"] = seed;
  s.bindings["net_points"] = net.size();
  s.bindings["boundary_points"] = bs.size();
  const double db = diameter(bs), dn = diameter(net.points());
  s.observations["diam_boundary"] = db;
  s.observations["diam_net"] = dn;
  s.check("|diam(boundary samples) - diam(net)|", std::abs(db - dn), "<=", 4.0 * h);

  if (bs.size() < 3 || pairs == 0) {
    s.no_data = true;
    s.finalize();
    return s;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, bs.size() - 1);
  std::size_t ok = 0;
  double worst = kInf;
  for (std::size_t k = 0; k < pairs; ++k) {
    std::size_t i = pick(rng), j = pick(rng);
    while (j == i) j = pick(rng);
    Point z3 = separated_third_point(bs, bs[i], bs[j]);
    double sep = std::min(distance(bs[i], z3), distance(z3, bs[j]));
    double margin = sep - (db / 6.0 - 2.0 * h);
    worst = std::min(worst, margin);
    if (margin >= 0) ++ok;
  }
  s.observations["worst_separation_margin"] = worst;
  s.check("boundary pairs with a third point at >= diam / 6 - 2h", static_cast<double>(ok), "==",
          static_cast<double>(pairs));
  s.finalize();
  return s;
}

namespace {

PointList circle_samples(double h) {
  auto n = static_cast<std::size_t>(std::ceil(2.0 * std::numbers::pi / h));
  PointList out;
  for (std::size_t i = 0; i < n; ++i) {
    double t = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
    out.emplace_back(std::cos(t), std::sin(t));
  }
  return out;
}

double max_residual(const MapSpec& f, std::span<const Point> pts) {
  double r = 0.0;
  for (const auto& p : pts) r = std::max(r, distance(f.apply_finite(p), p));
  return r;
}

// Log-spaced radii in [r0, r1] times equally spaced angles.
PointList polar_grid(double r0, double r1, std::size_t radii, std::size_t angles) {
  PointList out;
  for (std::size_t i = 0; i < radii; ++i) {
    double r = r0 * std::pow(r1 / r0, static_cast<double>(i) / static_cast<double>(radii - 1));
    for (std::size_t k = 0; k < angles; ++k) {
      double t = 2.0 * std::numbers::pi * (static_cast<double>(k) + 0.5 * static_cast<double>(i % 2)) /
                 static_cast<double>(angles);
      out.emplace_back(r * std::cos(t), r * std::sin(t));
    }
  }
  return out;
}

Scenario disk_to_exterior(const CounterexampleOptions& opt) {
  Scenario s;
  s.name = "inversion_disk_to_exterior";
  auto u = MapSpec::inversion();
  s.bindings["map"] = to_json(u);
  s.bindings["source"] = to_json(DomainSpec(Ball{Point(0, 0), 1.0}));
  s.bindings["target"] = to_json(DomainSpec(BallExterior{Point(0, 0), 1.0}));
  s.check("boundary identity residual on circle samples", max_residual(u, circle_samples(opt.mesh / 4)), "<=",
          1e-12);

  // The image of the center is infinity; a point at radius h^2 stands in
  // for it at each level.
  const int probe = DistortionEnvelope::bucket_of(1.0);
  std::vector<double> level_values;
  for (int l = 0; l < opt.levels; ++l) {
    double h = opt.mesh / std::ldexp(1.0, l);
    PointList xs = circle_samples(std::max(h, 2.0 * std::numbers::pi / 48));
    xs.emplace_back(h * h, 0.0);
    auto env = qs_scan(u, xs, std::nullopt, ScanOptions{50'000'000, opt.seed, 1});
    level_values.push_back(env.envelope(probe));
    s.observations["envelope_at_1_level_" + std::to_string(l)] = level_values.back();
  }
  for (std::size_t l = 1; l < level_values.size(); ++l)
    s.check("envelope growth from level " + std::to_string(l - 1) + " to " + std::to_string(l),
            level_values[l] / level_values[l - 1], ">=", opt.growth_factor);
  if (!level_values.empty()) s.check("envelope at t = 1, finest level", level_values.back(), ">=", 50.0);
  s.finalize();
  return s;
}

Scenario radial_square(const CounterexampleOptions& opt) {
  Scenario s;
  s.name = "radial_square_punctured_disk";
  auto f = MapSpec::radial_power(2.0);
  s.bindings["map"] = to_json(f);
  s.bindings["domain"] = to_json(DomainSpec(PuncturedBall{Point(0, 0), 1.0}));
  s.bindings["inner_radius"] = opt.inner_radius;
  s.check("boundary identity residual on circle samples", max_residual(f, circle_samples(opt.mesh / 4)), "<=",
          1e-12);

  PointList ring = circle_samples(2.0 * std::numbers::pi / 64);
  for (auto& p : ring) p = p * opt.inner_radius;
  PointList outer = polar_grid(opt.inner_radius, 0.9, 6, 16);
  ring.insert(ring.end(), outer.begin(), outer.end());
  auto lip = bilipschitz_constant(f, ring);
  s.observations["bilipschitz_hat"] = lip.value;
  s.check("bilipschitz constant at the inner radius", lip.value, ">=", 0.5 / opt.inner_radius);

  const PointList coarse_pts = polar_grid(opt.inner_radius, 0.95, 8, 12);
  auto coarse = qs_scan(f, coarse_pts, std::nullopt, ScanOptions{50'000'000, opt.seed, 1});
  auto fine = qs_scan(f, polar_grid(opt.inner_radius, 0.95, 16, 24), std::nullopt, ScanOptions{50'000'000, opt.seed, 1});
  s.check("triple envelope finite (fine level)", fine.max_sup(), "<", kInf);
  // Buckets are compared where the coarse set resolves the ratio: between
  // rho and 1 / rho, rho = largest nearest-neighbour gap over the diameter.
  double gap = 0.0;
  for (const auto& p : coarse_pts) {
    double nn = kInf;
    for (const auto& q : coarse_pts)
      if (&p != &q) nn = std::min(nn, distance(p, q));
    gap = std::max(gap, nn);
  }
  const double rho = gap / diameter(coarse_pts);
  double growth = 0.0, growth_all = 0.0;
  int common = 0;
  for (int b = 0; b < DistortionEnvelope::kSlots; ++b) {
    if (coarse.empty(b) || fine.empty(b)) continue;
    double g = fine.envelope(b) / coarse.envelope(b);
    growth_all = std::max(growth_all, g);
    if (DistortionEnvelope::lower_edge(b) < rho || DistortionEnvelope::upper_edge(b) > 1.0 / rho) continue;
    ++common;
    growth = std::max(growth, g);
  }
  s.observations["resolved_ratio_floor"] = rho;
  s.observations["resolved_buckets"] = common;
  s.observations["growth_all_common_buckets"] = growth_all;
  if (common == 0) s.no_data = true;
  else s.check("bucketwise envelope growth under refinement (resolved buckets)", growth, "<", 2.0);
  s.finalize();
  return s;
}

Scenario arc_inversion(const CounterexampleOptions& opt) {
  Scenario s;
  s.name = "inversion_arc_complement";
  const double half = std::numbers::pi / 2;
  DomainSpec domain(ArcComplement{-half, half});
  auto u = MapSpec::inversion();
  s.bindings["map"] = to_json(u);
  s.bindings["domain"] = to_json(domain);

  PointList arc;
  for (int i = 0; i <= 64; ++i) {
    double t = -half + 2.0 * half * i / 64.0;
    arc.emplace_back(std::cos(t), std::sin(t));
  }
  s.check("arc fixed pointwise", max_residual(u, arc), "<=", 1e-12);
  double recip = 0.0;
  for (const auto& p : arc) {
    double n2 = p.norm2();
    recip = std::max(recip, distance(Point(p.x() / n2, -p.y() / n2), p));
  }
  s.observations["reciprocal_map_arc_residual"] = recip;

  auto net = sample_net(domain, opt.mesh, Box{Point(-2, -2), Point(2, 2)}, opt.seed);
  CqhOptions co;
  co.seed = opt.seed;
  auto m = qh_map_constants(u, net, net, co);
  s.observations["qh_constant_hat"] = m.value;
  s.observations["cqh_M"] = m.values["M_cqh"];
  s.observations["cqh_C"] = m.values["C_cqh"];
  s.check("quasihyperbolic constant finite", m.value, "<", kInf);

  PointList near0 = circle_samples(2.0 * std::numbers::pi / 32);
  for (auto& p : near0) p = p * 0.05;
  auto lip = bilipschitz_constant(u, near0);
  s.observations["bilipschitz_hat"] = lip.value;
  s.check("bilipschitz constant far from the arc", lip.value, ">=", 100.0);
  s.finalize();
  return s;
}

} // namespace

std::vector<Scenario> run_counterexamples(const CounterexampleOptions& opt) {
  if (!(opt.mesh > 0) || opt.levels < 1) throw ArgumentError("counterexamples need mesh > 0 and levels >= 1");
  return {disk_to_exterior(opt), radial_square(opt), arc_inversion(opt)};
}

Scenario run_invariant_suites(const SampledDomain& net, const SuiteOptions& opt) {
  Scenario s;
  s.name = "run_invariant_suites";
  s.bindings["domain"] = to_json(net.source());
  s.bindings["mesh"] = net.mesh();
  s.bindings["net_points"] = net.size();
  s.bindings["seed"] = opt.seed;
  const auto& dom = net.source();
  const double h = net.mesh();
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<std::size_t> pick(0, net.size() - 1);

  const std::size_t sources = std::max<std::size_t>(1, std::min(opt.sources, net.size()));
  const std::size_t per = (opt.pairs + sources - 1) / sources;
  std::size_t kj_pairs = 0, kj_bad = 0, jl_bad = 0, local_pairs = 0, local_bad = 0;
  double kj_worst = kInf, local_lo = kInf, local_hi = 0.0;
  for (std::size_t si = 0; si < sources; ++si) {
    std::size_t a = pick(rng);
    auto k = qh_from(net, a);
    const Point& x = net.point(a);
    const double dx = net.depth(a);
    for (std::size_t t = 0; t < per && kj_pairs < opt.pairs; ++t) {
      std::size_t b = pick(rng);
      ++kj_pairs;
      double j = j_distance(dom, x, net.point(b));
      double lg = std::abs(std::log(dx / net.depth(b)));
      if (k[b] < j * (1.0 - 1e-12)) ++kj_bad;
      if (j < lg * (1.0 - 1e-12)) ++jl_bad;
      if (j > 0) kj_worst = std::min(kj_worst, k[b] / j);
    }
    for (std::size_t b = 0; b < net.size(); ++b) {
      double len = distance(x, net.point(b));
      if (b == a || len > 0.5 * dx) continue;
      ++local_pairs;
      double q = len / dx;
      double lo = 0.5 * q, hi = 2.0 * q * (1.0 + 4.0 * h / dx);
      local_lo = std::min(local_lo, k[b] / lo);
      local_hi = std::max(local_hi, k[b] / hi);
      if (!(k[b] > lo && k[b] <= hi)) ++local_bad;
    }
  }
  s.observations["k_over_j_min"] = kj_worst;
  s.observations["pairs"] = static_cast<double>(kj_pairs);
  if (kj_pairs == 0) {
    s.no_data = true;
  } else {
    s.check("pairs with k < j", static_cast<double>(kj_bad), "==", 0.0);
    s.check("pairs with j < |log(d(x)/d(y))|", static_cast<double>(jl_bad), "==", 0.0);
  }
  s.observations["local_pairs"] = static_cast<double>(local_pairs);
  s.observations["local_k_over_lower_min"] = local_lo;
  s.observations["local_k_over_upper_max"] = local_hi;
  if (local_pairs == 0) s.no_data = true;
  else s.check("local pairs outside the two-sided estimate", static_cast<double>(local_bad), "==", 0.0);

  std::uint64_t quad_bad = 0, quad_done = 0;
  double quad_worst = 0.0;
  for (std::uint64_t q = 0; q < opt.quadruples; ++q) {
    std::size_t i = pick(rng), j = pick(rng), k = pick(rng), l = pick(rng);
    if (i == j || i == k || i == l || j == k || j == l || k == l) continue;
    const auto &x = net.point(i), &y = net.point(j), &z = net.point(k), &w = net.point(l);
    double bk = bk_ratio(x, y, z, w);
    double bound = ControlFunction::theta0()(cross_ratio(x, y, z, w));
    ++quad_done;
    quad_worst = std::max(quad_worst, bk / bound);
    if (bk > bound * (1.0 + 1e-12)) ++quad_bad;
  }
  s.observations["quadruples"] = static_cast<double>(quad_done);
  s.observations["bk_over_theta0_max"] = quad_worst;
  if (quad_done == 0) s.no_data = true;
  else s.check("quadruples with bk ratio above theta0(cross ratio)", static_cast<double>(quad_bad), "==", 0.0);

  const std::size_t vn = std::min(opt.visual_points, net.size());
  if (vn >= 2) {
    std::vector<std::size_t> idx(net.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(vn);
    auto m = MetricOracle::quasihyperbolic(net, idx);
    auto sampled = delta_estimate(m, opt.delta_budget, opt.seed);
    auto based = delta_at_base(m, 0);
    double delta = std::max(sampled.delta, based.delta);
    double eps = delta > 0 ? std::min(1.0, 1.0 / (5.0 * delta)) : 1.0;
    auto vd = visual_data(m, 0, eps);
    double upper = 0.0, lower_bad = 0.0;
    for (std::size_t i = 0; i < vn; ++i)
      for (std::size_t j = 0; j < vn; ++j) {
        if (i == j) continue;
        double rho = vd.at(vd.rho, i, j), d = vd.at(vd.chain, i, j);
        lower_bad = std::max(lower_bad, d - rho);
        upper = std::max(upper, rho / d);
      }
    s.observations["delta_hat"] = delta;
    s.observations["epsilon"] = eps;
    s.check("visual chain metametric minus rho", lower_bad, "<=", 0.0);
    s.check("rho / chain metametric", upper, "<=", 2.0);
  } else {
    s.no_data = true;
  }
  s.finalize();
  return s;
}

const std::vector<ScenarioInfo>& scenario_registry() {
  static const std::vector<ScenarioInfo> registry = [] {
    std::vector<ScenarioInfo> r{
        {"run_boundary_quasisymmetry", "quasimoebius on the closure plus quasisymmetric boundary values"},
        {"run_counterexamples", "disk inversion, radial square map, arc-fixing inversion"},
        {"run_diam_lemma", "boundary diameter equals domain diameter; diam/6 third point"},
        {"run_invariant_suites", "k >= j, local two-sided estimate, Bonk-Kleiner bound, visual metric sandwich"},
        {"run_three_point_necessity", "quasisymmetric implies quasimoebius and the three-point condition"},
        {"run_three_point_sufficiency", "quasimoebius plus three-point condition implies quasisymmetric"},
    };
    std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
    return r;
  }();
  return registry;
}

} // namespace qhlab
