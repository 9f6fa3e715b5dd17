#include "qhlab/analysis.hpp"

#include "qhlab/errors.hpp"
#include "qhlab/ratios.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <thread>

namespace qhlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<char> membership(std::size_t n, const Subset& a) {
  std::vector<char> in(n, a ? 0 : 1);
  if (a)
    for (auto i : *a) {
      if (i >= n) throw ArgumentError("subset index out of range");
      in[i] = 1;
    }
  return in;
}

std::vector<ExtendedPoint> images(const MapSpec& f, std::span<const Point> xs) {
  std::vector<ExtendedPoint> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(f.apply(x));
  return out;
}

std::vector<ExtendedPoint> images(const MapSpec& f, std::span<const ExtendedPoint> xs) {
  std::vector<ExtendedPoint> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(f.apply(x));
  return out;
}

// Runs body(lo, hi, envelope) over [0, n) split into `jobs` contiguous ranges
// and merges the partial envelopes.
template <class Body>
DistortionEnvelope parallel_over(std::size_t n, unsigned jobs, int arity, Body&& body) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  std::vector<DistortionEnvelope> parts(jobs, DistortionEnvelope(arity));
  if (jobs == 1) {
    body(0, n, parts[0]);
    return parts[0];
  }
  std::vector<std::thread> pool;
  for (unsigned j = 0; j < jobs; ++j) {
    std::size_t lo = n * j / jobs, hi = n * (j + 1) / jobs;
    pool.emplace_back([&, lo, hi, j] { body(lo, hi, parts[j]); });
  }
  for (auto& t : pool) t.join();
  for (unsigned j = 1; j < jobs; ++j) parts[0].merge(parts[j]);
  return parts[0];
}

} // namespace

namespace {

// Dense distance and log-distance tables; image distances are +inf when
// either image is the point at infinity.
struct Tables {
  std::size_t n = 0;
  std::vector<double> d, ld, e;
  std::vector<char> finite_image;
  bool all_finite = true;
};

Tables make_tables(std::span<const ExtendedPoint> xs, std::span<const ExtendedPoint> ys) {
  Tables t;
  t.n = xs.size();
  const std::size_t n = t.n;
  t.d.assign(n * n, kInf);
  t.ld.assign(n * n, kInf);
  t.e.assign(n * n, kInf);
  t.finite_image.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    t.finite_image[i] = !ys[i].is_infinity();
    t.all_finite = t.all_finite && !xs[i].is_infinity() && !ys[i].is_infinity();
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!xs[i].is_infinity() && !xs[j].is_infinity()) {
        t.d[i * n + j] = distance(xs[i].point(), xs[j].point());
        t.ld[i * n + j] = std::log(t.d[i * n + j]);
      }
      if (t.finite_image[i] && t.finite_image[j]) t.e[i * n + j] = distance(ys[i].point(), ys[j].point());
    }
  return t;
}

} // namespace

DistortionEnvelope qs_scan(const MapSpec& f, std::span<const Point> xs, const Subset& a, const ScanOptions& opt) {
  const std::size_t n = xs.size();
  if (n < 3) throw ArgumentError("qs_scan needs at least three points");
  const auto in = membership(n, a);
  const std::vector<ExtendedPoint> ext(xs.begin(), xs.end());
  const auto ys = images(f, xs);
  const Tables tb = make_tables(ext, ys);

  auto visit = [&](std::size_t x, std::size_t y, std::size_t z, std::uint64_t index, DistortionEnvelope& env) {
    if (x == y || x == z || y == z) return;
    if (!(in[x] || (in[y] && in[z]))) return;
    const double dxy = tb.d[x * n + y], dxz = tb.d[x * n + z];
    if (dxz == 0.0 || dxy == 0.0 || !tb.finite_image[x] || !tb.finite_image[y] || !tb.finite_image[z]) {
      env.count_skipped();
      return;
    }
    const double t_in = dxy / dxz;
    const double ez = tb.e[x * n + z];
    const double t_out = ez == 0.0 ? kInf : tb.e[x * n + y] / ez;
    env.record(DistortionEnvelope::bucket_of_log(t_in, tb.ld[x * n + y] - tb.ld[x * n + z]), t_in, t_out,
               {static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y), static_cast<std::uint32_t>(z), 0},
               index);
  };

  const double total = std::pow(static_cast<double>(n), 3);
  if (total <= static_cast<double>(opt.budget)) {
    return parallel_over(n, opt.jobs, 3, [&](std::size_t lo, std::size_t hi, DistortionEnvelope& env) {
      for (std::size_t x = lo; x < hi; ++x)
        for (std::size_t y = 0; y < n; ++y)
          for (std::size_t z = 0; z < n; ++z) visit(x, y, z, (x * n + y) * n + z, env);
    });
  }
  DistortionEnvelope env(3);
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::uint64_t s = 0; s < opt.budget; ++s) {
    std::size_t x = pick(rng), y = pick(rng), z = pick(rng);
    visit(x, y, z, s, env);
  }
  return env;
}

DistortionEnvelope qm_scan(const MapSpec& f, std::span<const ExtendedPoint> xs, const Subset& a,
                           const ScanOptions& opt) {
  const std::size_t n = xs.size();
  if (n < 4) throw ArgumentError("qm_scan needs at least four points");
  const auto in = membership(n, a);
  const auto ys = images(f, xs);
  const Tables tb = make_tables(xs, ys);

  auto visit = [&](std::size_t x, std::size_t y, std::size_t z, std::size_t w, std::uint64_t index,
                   DistortionEnvelope& env) {
    if (x == y || x == z || x == w || y == z || y == w || z == w) return;
    if (!((in[x] && in[w]) || (in[y] && in[z]))) return;
    const std::array<std::uint32_t, 4> wit{static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y),
                                           static_cast<std::uint32_t>(z), static_cast<std::uint32_t>(w)};
    if (tb.all_finite) {
      const double xz = tb.d[x * n + z], yw = tb.d[y * n + w], xy = tb.d[x * n + y], zw = tb.d[z * n + w];
      if (xz == 0.0 || yw == 0.0 || xy == 0.0 || zw == 0.0) {
        env.count_skipped();
        return;
      }
      const double t_in = (xz * yw) / (xy * zw);
      const double exz = tb.e[x * n + z], eyw = tb.e[y * n + w], exy = tb.e[x * n + y], ezw = tb.e[z * n + w];
      const double t_out = (exz == 0.0 || eyw == 0.0 || exy == 0.0 || ezw == 0.0) ? kInf : (exz * eyw) / (exy * ezw);
      const double log_t = tb.ld[x * n + z] + tb.ld[y * n + w] - tb.ld[x * n + y] - tb.ld[z * n + w];
      env.record(DistortionEnvelope::bucket_of_log(t_in, log_t), t_in, t_out, wit, index);
      return;
    }
    double t_in = 0.0, t_out = 0.0;
    try {
      t_in = cross_ratio(Tuple4(xs[x], xs[y], xs[z], xs[w]));
    } catch (const DegenerateError&) {
      env.count_skipped();
      return;
    }
    try {
      t_out = cross_ratio(Tuple4(ys[x], ys[y], ys[z], ys[w]));
    } catch (const DegenerateError&) {
      t_out = kInf;
    }
    env.record(t_in, t_out, wit, index);
  };

  const double total = std::pow(static_cast<double>(n), 4);
  if (total <= static_cast<double>(opt.budget)) {
    return parallel_over(n, opt.jobs, 4, [&](std::size_t lo, std::size_t hi, DistortionEnvelope& env) {
      for (std::size_t x = lo; x < hi; ++x)
        for (std::size_t y = 0; y < n; ++y)
          for (std::size_t z = 0; z < n; ++z)
            for (std::size_t w = 0; w < n; ++w) visit(x, y, z, w, ((x * n + y) * n + z) * n + w, env);
    });
  }
  DistortionEnvelope env(4);
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::uint64_t s = 0; s < opt.budget; ++s) {
    std::size_t x = pick(rng), y = pick(rng), z = pick(rng), w = pick(rng);
    visit(x, y, z, w, s, env);
  }
  return env;
}

DistortionEnvelope qm_scan(const MapSpec& f, std::span<const Point> xs, const Subset& a, const ScanOptions& opt) {
  std::vector<ExtendedPoint> ext(xs.begin(), xs.end());
  return qm_scan(f, std::span<const ExtendedPoint>(ext), a, opt);
}

ConstantReport three_point_lambda(const MapSpec& f, std::span<const Point> xs, const ScanOptions& opt) {
  const std::size_t n = xs.size();
  if (n < 3) throw ArgumentError("three_point_lambda needs at least three points");
  PointList ys;
  ys.reserve(n);
  for (const auto& x : xs) ys.push_back(f.apply_finite(x));
  const double dx = diameter(xs), dy = diameter(ys);
  if (!(dx > 0) || !(dy > 0)) throw DegenerateError("three-point constant needs positive diameters");

  ConstantReport r;
  r.name = "lambda";
  r.value = kInf;
  r.seed = opt.seed;
  std::array<std::size_t, 3> best{0, 0, 0};
  auto visit = [&](std::size_t i, std::size_t j, std::size_t k) {
    ++r.scanned;
    double s = std::min({distance(xs[i], xs[j]), distance(xs[j], xs[k]), distance(xs[i], xs[k])});
    double t = std::min({distance(ys[i], ys[j]), distance(ys[j], ys[k]), distance(ys[i], ys[k])});
    if (s == 0.0 || t == 0.0) {
      ++r.skipped;
      return;
    }
    double v = std::max(dx / s, dy / t);
    if (v < r.value) {
      r.value = v;
      best = {i, j, k};
    }
  };
  if (n <= 300) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) visit(i, j, k);
    r.budget = r.scanned;
  } else {
    r.budget = opt.budget;
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::uint64_t s = 0; s < opt.budget; ++s) {
      std::size_t i = pick(rng), j = pick(rng), k = pick(rng);
      if (i == j || j == k || i == k) continue;
      visit(i, j, k);
    }
  }
  if (!std::isfinite(r.value)) throw DegenerateError("no nondegenerate triple found");
  for (auto i : best) r.witness.push_back(xs[i]);
  for (auto i : best) r.witness.push_back(ys[i]);
  r.values["diam_source"] = dx;
  r.values["diam_image"] = dy;
  return r;
}

ConstantReport bilipschitz_constant(const MapSpec& f, std::span<const Point> xs) {
  const std::size_t n = xs.size();
  if (n < 2) throw ArgumentError("bilipschitz_constant needs at least two points");
  PointList ys;
  ys.reserve(n);
  for (const auto& x : xs) ys.push_back(f.apply_finite(x));
  ConstantReport r;
  r.name = "L";
  r.value = 1.0;
  std::size_t bi = 0, bj = 1;
  double lo = kInf, hi = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      ++r.scanned;
      double d = distance(xs[i], xs[j]);
      if (d == 0.0) {
        ++r.skipped;
        continue;
      }
      double q = distance(ys[i], ys[j]) / d;
      lo = std::min(lo, q);
      hi = std::max(hi, q);
      double v = q == 0.0 ? kInf : std::max(q, 1.0 / q);
      if (v > r.value) {
        r.value = v;
        bi = i;
        bj = j;
      }
    }
  r.budget = r.scanned;
  r.witness = {xs[bi], xs[bj], ys[bi], ys[bj]};
  r.values["min_ratio"] = lo;
  r.values["max_ratio"] = hi;
  return r;
}

ConstantReport qh_map_constants(const MapSpec& f, const SampledDomain& source, const SampledDomain& target,
                                const CqhOptions& opt) {
  const auto& dst = target.source();
  const Box& tb = target.bounds();
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < source.size(); ++i) {
    ExtendedPoint y = f.apply(source.point(i));
    if (y.is_infinity() || !dst.contains(y)) continue;
    const Point& p = y.point();
    bool inside = true;
    for (int a = 0; a < p.dim(); ++a) inside = inside && p[a] >= tb.lo[a] && p[a] <= tb.hi[a];
    if (!inside || dst.boundary_distance(p) < opt.min_image_depth) continue;
    candidates.push_back(i);
  }
  std::mt19937_64 rng(opt.seed);
  std::shuffle(candidates.begin(), candidates.end(), rng);
  if (candidates.size() > opt.landmarks) candidates.resize(opt.landmarks);
  if (candidates.size() < 2) throw DegenerateError("fewer than two landmarks map into the target net");
  std::sort(candidates.begin(), candidates.end());

  const std::size_t n = candidates.size();
  std::vector<std::size_t> snapped(n);
  double snap_max = 0.0, snap_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    auto [idx, d] = target.nearest(f.apply_finite(source.point(candidates[i])));
    snapped[i] = idx;
    snap_max = std::max(snap_max, d);
    snap_sum += d;
  }

  std::vector<double> k(n * n), kp(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    auto a = qh_from(source, candidates[i]);
    auto b = qh_from(target, snapped[i]);
    for (std::size_t j = 0; j < n; ++j) {
      k[i * n + j] = a[candidates[j]];
      kp[i * n + j] = b[snapped[j]];
    }
  }

  ConstantReport r;
  r.name = "M";
  r.value = 1.0;
  r.seed = opt.seed;
  r.mesh = std::max(source.mesh(), target.mesh());
  std::size_t wi = 0, wj = 1;
  std::vector<std::pair<double, double>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      ++r.scanned;
      double u = std::min(k[i * n + j], k[j * n + i]), v = std::min(kp[i * n + j], kp[j * n + i]);
      if (!std::isfinite(u) || !std::isfinite(v) || u == 0.0 || v == 0.0) {
        ++r.skipped;
        continue;
      }
      pairs.emplace_back(u, v);
      double q = std::max(v / u, u / v);
      if (q > r.value) {
        r.value = q;
        wi = i;
        wj = j;
      }
    }
  r.budget = r.scanned;
  if (pairs.empty()) throw DegenerateError("no landmark pair with positive distances on both sides");

  auto residual = [&](double M) {
    double c = 0.0;
    for (auto [u, v] : pairs) c = std::max({c, v - M * u, u / M - v});
    return c;
  };
  double fit_m = r.value;
  constexpr int kGrid = 400;
  for (int g = 0; g <= kGrid; ++g) {
    double M = std::pow(r.value, static_cast<double>(g) / kGrid);
    if (residual(M) <= opt.additive_target) {
      fit_m = M;
      break;
    }
  }
  r.witness = {source.point(candidates[wi]), source.point(candidates[wj]), target.point(snapped[wi]),
               target.point(snapped[wj])};
  r.values["M_qh"] = r.value;
  r.values["M_cqh"] = fit_m;
  r.values["C_cqh"] = residual(fit_m);
  r.values["snap_max"] = snap_max;
  r.values["snap_mean"] = snap_sum / static_cast<double>(n);
  r.values["landmarks"] = static_cast<double>(n);
  if (opt.local_ratio) {
    r.values["local_ratio_C"] = *opt.local_ratio;
    r.flags["consistent_with_local_ratio"] = r.value <= *opt.local_ratio * (1.0 + opt.local_ratio_slack);
  }
  return r;
}

ConstantReport locally_bilipschitz_scan(const MapSpec& f, const DomainSpec& domain, std::span<const Point> xs,
                                        double vartheta) {
  if (!(vartheta > 0 && vartheta < 1)) throw ArgumentError("vartheta must lie in (0, 1)");
  const std::size_t n = xs.size();
  std::vector<ExtendedPoint> ys = images(f, xs);
  ConstantReport r;
  r.name = "L_local";
  r.value = 1.0;
  double c_min = kInf, c_max = 0.0;
  std::size_t centers = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (ys[c].is_infinity()) {
      ++r.skipped;
      continue;
    }
    const double rad = vartheta * domain.boundary_distance(xs[c]);
    std::vector<std::size_t> ball;
    for (std::size_t i = 0; i < n; ++i)
      if (distance(xs[i], xs[c]) < rad && !ys[i].is_infinity()) ball.push_back(i);
    if (ball.size() < 3) {
      ++r.skipped;
      continue;
    }
    std::vector<std::tuple<double, std::size_t, std::size_t>> ratios;
    double log_sum = 0.0;
    for (std::size_t a = 0; a < ball.size(); ++a)
      for (std::size_t b = a + 1; b < ball.size(); ++b) {
        double d = distance(xs[ball[a]], xs[ball[b]]);
        if (d == 0.0) continue;
        double q = distance(ys[ball[a]].point(), ys[ball[b]].point()) / d;
        ratios.emplace_back(q, ball[a], ball[b]);
        log_sum += std::log(q);
      }
    if (ratios.empty()) {
      ++r.skipped;
      continue;
    }
    ++centers;
    double cx = std::exp(log_sum / static_cast<double>(ratios.size()));
    c_min = std::min(c_min, cx);
    c_max = std::max(c_max, cx);
    for (auto [q, i, j] : ratios) {
      ++r.scanned;
      double v = std::max(q / cx, cx / q);
      if (v > r.value) {
        r.value = v;
        r.witness = {xs[c], xs[i], xs[j]};
        r.values["scale_at_witness"] = cx;
      }
    }
  }
  if (centers == 0) throw DegenerateError("no center has two neighbours within the local radius");
  r.budget = r.scanned;
  r.values["c_min"] = c_min;
  r.values["c_max"] = c_max;
  r.values["centers"] = static_cast<double>(centers);
  r.values["vartheta"] = vartheta;
  return r;
}

ConstantReport local_ratio_scan(const MapSpec& f, const DomainSpec& source, const DomainSpec& target,
                                std::span<const Point> xs, double mu) {
  if (!(mu > 0 && mu < 1)) throw ArgumentError("mu must lie in (0, 1)");
  const std::size_t n = xs.size();
  std::vector<ExtendedPoint> ys = images(f, xs);
  std::vector<double> d(n), dp(n, -1.0);
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = source.boundary_distance(xs[i]);
    if (!ys[i].is_infinity() && target.contains(ys[i])) dp[i] = target.boundary_distance(ys[i].point());
  }
  ConstantReport r;
  r.name = "C_local";
  r.value = 1.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      double len = distance(xs[i], xs[j]);
      if (!(len < mu * d[i]) || len == 0.0) continue;
      if (dp[i] <= 0.0 || dp[j] < 0.0) {
        ++r.skipped;
        continue;
      }
      ++r.scanned;
      double q = (distance(ys[i].point(), ys[j].point()) / dp[i]) / (len / d[i]);
      double v = q == 0.0 ? kInf : std::max(q, 1.0 / q);
      if (v > r.value) {
        r.value = v;
        r.witness = {xs[i], xs[j]};
      }
    }
  if (r.scanned == 0) throw DegenerateError("no pair satisfies |x - y| < mu d(x)");
  r.budget = r.scanned;
  r.values["mu"] = mu;
  return r;
}

namespace {

struct ArcRatios {
  double length = 0.0;
  double cigar = 0.0;
};

ArcRatios arc_ratios(const SampledDomain& net, const PathTree& tree, std::size_t s, std::size_t t) {
  auto path = extract_path(tree, t);
  const double total = tree.dist[t];
  ArcRatios a;
  a.length = total / distance(net.point(s), net.point(t));
  for (auto z : path) {
    double before = tree.dist[z];
    a.cigar = std::max(a.cigar, std::min(before, total - before) / net.depth(z));
  }
  return a;
}

void fold_arc(ConstantReport& r, const SampledDomain& net, const PathTree& tree, std::size_t s, std::size_t t) {
  ++r.scanned;
  if (s == t || tree.parent[t] == std::numeric_limits<std::uint32_t>::max()) {
    ++r.skipped;
    return;
  }
  ArcRatios a = arc_ratios(net, tree, s, t);
  r.values["length_ratio"] = std::max(r.values["length_ratio"], a.length);
  r.values["cigar_ratio"] = std::max(r.values["cigar_ratio"], a.cigar);
  double v = std::max(a.length, a.cigar);
  if (v > r.value) {
    r.value = v;
    r.witness = {net.point(s), net.point(t)};
  }
}

} // namespace

ConstantReport uniform_constant_estimate(const SampledDomain& net, std::size_t pairs, std::uint64_t seed) {
  if (net.size() < 2) throw DegenerateError("net too small for pair sampling");
  ConstantReport r;
  r.name = "c_uniform";
  r.value = 1.0;
  r.seed = seed;
  r.mesh = net.mesh();
  r.budget = pairs;
  r.values["length_ratio"] = 0.0;
  r.values["cigar_ratio"] = 0.0;
  const std::size_t sources = std::max<std::size_t>(1, std::min<std::size_t>(pairs, 32));
  const std::size_t per_source = (pairs + sources - 1) / sources;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, net.size() - 1);
  std::size_t done = 0;
  for (std::size_t s = 0; s < sources && done < pairs; ++s) {
    std::size_t src = pick(rng);
    PathTree tree = euclidean_paths_from(net, src);
    for (std::size_t k = 0; k < per_source && done < pairs; ++k, ++done) fold_arc(r, net, tree, src, pick(rng));
  }
  return r;
}

ConstantReport uniform_constant_estimate(const SampledDomain& net,
                                         std::span<const std::pair<Point, Point>> pairs) {
  ConstantReport r;
  r.name = "c_uniform";
  r.value = 1.0;
  r.mesh = net.mesh();
  r.budget = pairs.size();
  r.values["length_ratio"] = 0.0;
  r.values["cigar_ratio"] = 0.0;
  for (const auto& [x, y] : pairs) {
    std::size_t s = net.nearest(x).first, t = net.nearest(y).first;
    fold_arc(r, net, euclidean_paths_from(net, s), s, t);
  }
  return r;
}

ConstantReport uniformly_perfect_estimate(std::span<const Point> boundary, const PerfectOptions& opt) {
  const std::size_t n = boundary.size();
  if (n < 2) throw DegenerateError("uniform perfectness needs at least two points");
  std::vector<std::vector<double>> dist(n);
  double min_nn = kInf;
  for (std::size_t i = 0; i < n; ++i) {
    dist[i].reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) dist[i].push_back(distance(boundary[i], boundary[j]));
    std::sort(dist[i].begin(), dist[i].end());
    if (dist[i].front() > 0) min_nn = std::min(min_nn, dist[i].front());
  }
  if (!std::isfinite(min_nn)) throw DegenerateError("all boundary samples coincide");
  const double resolution = opt.resolution.value_or(0.5 * min_nn);
  if (!(resolution > 0)) throw ArgumentError("resolution must be positive");

  ConstantReport r;
  r.name = "C_perfect";
  r.value = 1.0;
  r.flags["unbounded"] = false;
  r.values["resolution"] = resolution;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& ds = dist[i];
    double floor_r = resolution;
    bool strict = false;
    if (opt.local_resolution) {
      auto nz = std::upper_bound(ds.begin(), ds.end(), 0.0);
      if (nz == ds.end()) continue;
      floor_r = *nz;
      strict = true;
    }
    double r0 = std::exp2(std::ceil(std::log2(floor_r)));
    if (strict && r0 <= floor_r) r0 *= 2.0;
    // Open balls: X \ B(x, r) is nonempty iff r <= the farthest distance.
    for (double rad = r0; rad <= ds.back(); rad *= 2.0) {
      ++r.scanned;
      auto it = std::lower_bound(ds.begin(), ds.end(), rad);
      double reach = it == ds.begin() ? 0.0 : *(it - 1);
      double credited = reach + opt.density_slack;
      if (credited <= 0.0) {
        if (!r.flags["unbounded"]) {
          r.flags["unbounded"] = true;
          r.values["gap_radius"] = rad;
          r.witness = {boundary[i]};
        }
        continue;
      }
      double v = rad / credited;
      if (v > r.value && !r.flags["unbounded"]) {
        r.value = v;
        r.values["radius_at_sup"] = rad;
        r.witness = {boundary[i]};
      }
    }
  }
  if (r.flags["unbounded"]) r.value = kInf;
  r.budget = r.scanned;
  return r;
}

ConstantReport boundary_distance_bounds(const MapSpec& f, const DomainSpec& source, const DomainSpec& target,
                                        std::span<const Point> xs, std::span<const Point> boundary,
                                        const BoundaryBoundInputs& in) {
  if (boundary.empty()) throw ArgumentError("boundary samples required");
  std::vector<ExtendedPoint> bimg = images(f, boundary);
  ConstantReport r;
  r.name = "M1";
  r.value = 0.0;
  double m2_hi = 0.0, m2_lo = kInf, log_sum = 0.0;
  std::size_t m2_count = 0, claim_found = 0, claim_total = 0, centers = 0;
  const double C = in.perfectness;
  for (const auto& x : xs) {
    ++r.scanned;
    const double d = source.boundary_distance(x);
    std::size_t x0 = 0;
    double best = kInf;
    for (std::size_t b = 0; b < boundary.size(); ++b) {
      double e = distance(x, boundary[b]);
      if (e < best) {
        best = e;
        x0 = b;
      }
    }
    ExtendedPoint xp = f.apply(x);
    if (best > 2.0 * d || xp.is_infinity() || bimg[x0].is_infinity() || !target.contains(xp)) {
      ++r.skipped;
      continue;
    }
    ++centers;
    const double dp = target.boundary_distance(xp.point());
    double v = std::max(d / dp, distance(xp.point(), bimg[x0].point()) / d);
    if (v > r.value) {
      r.value = v;
      r.witness = {x, boundary[x0]};
    }
    ++claim_total;
    for (const auto& x1 : boundary) {
      double e = distance(boundary[x0], x1);
      if (e >= d / (2.0 * C) && e <= 6.0 * d) {
        ++claim_found;
        break;
      }
    }
    for (std::size_t b = 0; b < boundary.size(); ++b) {
      if (bimg[b].is_infinity()) continue;
      double q = distance(xp.point(), bimg[b].point()) / distance(x, boundary[b]);
      m2_hi = std::max(m2_hi, q);
      m2_lo = std::min(m2_lo, q);
      log_sum += std::log(q);
      ++m2_count;
    }
  }
  if (centers == 0) throw DegenerateError("no interior point has a boundary sample within 2 d(x)");
  r.budget = r.scanned;
  const double scale = std::exp(log_sum / static_cast<double>(m2_count));
  r.values["M1_hat"] = r.value;
  r.values["M2_raw"] = std::max(m2_hi, 1.0 / m2_lo);
  r.values["M2_normalized"] = std::max(m2_hi / scale, scale / m2_lo);
  r.values["scale"] = scale;
  r.values["centers"] = static_cast<double>(centers);
  r.values["claim_found"] = static_cast<double>(claim_found);
  r.values["claim_total"] = static_cast<double>(claim_total);
  r.flags["claim_holds"] = claim_found == claim_total;
  if (in.theta1) {
    const double L = in.bilipschitz;
    const auto& th = *in.theta1;
    double m1 = 6.0 * L * th(4.0 * C);
    double m2 = std::max(2.0 * L + m1, 2.0 * L + 6.0 * L * theta_prime(th)(4.0 * C * L * L));
    r.values["M1_formula"] = m1;
    r.values["M2_formula"] = m2;
    r.flags["M1_within_formula"] = r.value <= m1;
    r.flags["M2_within_formula"] = r.values["M2_raw"] <= m2;
  }
  return r;
}

} // namespace qhlab
