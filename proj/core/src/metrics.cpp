#include "qhlab/metrics.hpp"

#include "qhlab/errors.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <random>

namespace qhlab {

double j_distance(const DomainSpec& domain, const Point& x, const Point& y) {
  double m = std::min(domain.boundary_distance(x), domain.boundary_distance(y));
  return std::log1p(distance(x, y) / m);
}

double qh_edge_weight(double length, double da, double db) {
  if (length == 0.0) return 0.0;
  double m = 0.5 * (da + db - length);
  if (!(m > 0)) return std::numeric_limits<double>::infinity();
  // log(da / m) + log(db / m), written to keep precision for short edges.
  return -std::log1p((db - da - length) / (2.0 * da)) - std::log1p((da - db - length) / (2.0 * db));
}

namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

template <class Weight>
PathTree dijkstra(const SampledDomain& net, std::size_t source, Weight&& weight, std::size_t stop_at = kNone,
                  double limit = std::numeric_limits<double>::infinity()) {
  const auto& adj = net.adjacency();
  PathTree t;
  t.dist.assign(net.size(), std::numeric_limits<double>::infinity());
  t.parent.assign(net.size(), kNone);
  using Item = std::pair<double, std::uint32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  t.dist[source] = 0.0;
  t.parent[source] = static_cast<std::uint32_t>(source);
  heap.emplace(0.0, static_cast<std::uint32_t>(source));
  while (!heap.empty()) {
    auto [du, u] = heap.top();
    heap.pop();
    if (du > t.dist[u]) continue;
    if (u == stop_at || du > limit) break;
    for (std::uint32_t e = adj.offsets[u]; e < adj.offsets[u + 1]; ++e) {
      std::uint32_t v = adj.targets[e];
      double nd = du + weight(u, v, adj.lengths[e]);
      if (nd < t.dist[v]) {
        t.dist[v] = nd;
        t.parent[v] = u;
        heap.emplace(nd, v);
      }
    }
  }
  return t;
}

auto qh_weight(const SampledDomain& net) {
  return [&net](std::uint32_t u, std::uint32_t v, double len) { return qh_edge_weight(len, net.depth(u), net.depth(v)); };
}

} // namespace

QhResult qh_distance(const SampledDomain& net, const Point& x, const Point& y) {
  auto [sx, dx] = net.nearest(x);
  auto [sy, dy] = net.nearest(y);
  PathTree t = dijkstra(net, sx, qh_weight(net), sy);
  if (!std::isfinite(t.dist[sy])) throw UnreachableError("net points lie in different components");
  return QhResult{t.dist[sy], net.mesh(), sx, sy, dx, dy};
}

std::vector<double> qh_from(const SampledDomain& net, std::size_t source, double limit) {
  if (source >= net.size()) throw ArgumentError("source index out of range");
  if (!(limit >= 0)) throw ArgumentError("limit must be nonnegative");
  return dijkstra(net, source, qh_weight(net), kNone, limit).dist;
}

PathTree euclidean_paths_from(const SampledDomain& net, std::size_t source) {
  if (source >= net.size()) throw ArgumentError("source index out of range");
  return dijkstra(net, source, [](std::uint32_t, std::uint32_t, double len) { return len; });
}

std::vector<std::size_t> extract_path(const PathTree& tree, std::size_t target) {
  if (target >= tree.parent.size() || tree.parent[target] == kNone) throw UnreachableError("target not reachable");
  std::vector<std::size_t> path{target};
  while (tree.parent[path.back()] != path.back()) path.push_back(tree.parent[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

namespace {

// Signed positions of x and y on a common line through c, or nullopt.
std::optional<std::pair<double, double>> on_line_through(const Point& c, const Point& x, const Point& y) {
  Point u = x - c, v = y - c;
  double nu = u.norm(), nv = v.norm();
  double scale = std::max({nu, nv, 1.0});
  if (nu == 0.0 && nv == 0.0) return std::pair{0.0, 0.0};
  Point dir = nu >= nv ? u / nu : v / nv;
  double tu = dot(u, dir), tv = dot(v, dir);
  if ((u - dir * tu).norm() > 1e-9 * scale || (v - dir * tv).norm() > 1e-9 * scale) return std::nullopt;
  return std::pair{tu, tv};
}

// Integral of dr / min(r, R - r) between radii a <= b in (0, R).
double punctured_radial(double a, double b, double R) {
  auto F = [R](double r) { return r <= R / 2 ? std::log(r / (R / 2)) : -std::log((R - r) / (R / 2)); };
  return F(b) - F(a);
}

} // namespace

double qh_exact_aligned(const DomainSpec& domain, const Point& x, const Point& y) {
  if (!domain.contains(x) || !domain.contains(y)) throw DomainMembershipError("points must lie in the domain");
  const auto& v = domain.variant();
  if (const auto* hp = std::get_if<HalfPlane>(&v)) {
    double scale = std::max({x.norm(), y.norm(), 1.0});
    for (int a = 0; a < hp->dim - 1; ++a)
      if (std::abs(x[a] - y[a]) > 1e-12 * scale) throw UnsupportedError("points are not vertically aligned");
    return std::abs(std::log(y[hp->dim - 1] / x[hp->dim - 1]));
  }
  if (const auto* b = std::get_if<Ball>(&v)) {
    auto line = on_line_through(b->center, x, y);
    if (!line) throw UnsupportedError("points are not on a common line through the center");
    auto [tx, ty] = *line;
    double R = b->radius;
    if (tx * ty >= 0) return std::abs(std::log((R - std::abs(tx)) / (R - std::abs(ty))));
    return std::log(R / (R - std::abs(tx))) + std::log(R / (R - std::abs(ty)));
  }
  if (const auto* pb = std::get_if<PuncturedBall>(&v)) {
    auto line = on_line_through(pb->center, x, y);
    if (!line || line->first * line->second <= 0) throw UnsupportedError("points are not on a common ray from the center");
    double a = std::abs(line->first), c = std::abs(line->second);
    return punctured_radial(std::min(a, c), std::max(a, c), pb->radius);
  }
  throw UnsupportedError("no closed form for the " + domain.kind() + " domain");
}

MetricOracle::MetricOracle(std::size_t n, std::vector<double> table) : n_(n), t_(std::move(table)) {
  if (t_.size() != n * n) throw ArgumentError("metric table must be n x n");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double a = t_[i * n + j];
      if (std::isnan(a)) throw ArgumentError("metric table contains NaN");
      if (a < 0) nonnegative_ = false;
      double b = t_[j * n + i];
      if (std::abs(a - b) > 1e-12 * std::max({std::abs(a), std::abs(b), 1.0})) symmetric_ = false;
    }
}

MetricOracle MetricOracle::from_function(std::size_t n, const std::function<double(std::size_t, std::size_t)>& d) {
  std::vector<double> t(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i * n + j] = d(i, j);
  return MetricOracle(n, std::move(t));
}

MetricOracle MetricOracle::euclidean(std::span<const Point> pts) {
  return from_function(pts.size(), [&](std::size_t i, std::size_t j) { return distance(pts[i], pts[j]); });
}

MetricOracle MetricOracle::quasihyperbolic(const SampledDomain& net, std::span<const std::size_t> indices) {
  const std::size_t n = indices.size();
  std::vector<double> t(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    auto dist = qh_from(net, indices[i]);
    for (std::size_t j = 0; j < n; ++j) {
      double v = dist[indices[j]];
      if (!std::isfinite(v)) throw UnreachableError("net points lie in different components");
      t[i * n + j] = v;
    }
  }
  // Symmetrise away last-bit rounding differences between the two searches.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) t[i * n + j] = t[j * n + i] = std::min(t[i * n + j], t[j * n + i]);
  return MetricOracle(n, std::move(t));
}

double MetricOracle::triangle_excess() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t k = 0; k < n_; ++k) worst = std::max(worst, (*this)(i, k) - (*this)(i, j) - (*this)(j, k));
  return worst;
}

double gromov_product(const MetricOracle& m, std::size_t p, std::size_t x, std::size_t y) {
  return 0.5 * (m(x, p) + m(y, p) - m(x, y));
}

namespace {

double four_point_defect(const MetricOracle& m, std::size_t x, std::size_t y, std::size_t z, std::size_t p) {
  double xz = gromov_product(m, p, x, z), zy = gromov_product(m, p, z, y), xy = gromov_product(m, p, x, y);
  return std::min(xz, zy) - xy;
}

} // namespace

DeltaReport delta_estimate(const MetricOracle& m, std::uint64_t budget, std::uint64_t seed) {
  DeltaReport r;
  r.budget = budget;
  r.seed = seed;
  const std::size_t n = m.size();
  if (n < 4) throw ArgumentError("delta estimate needs at least four points");
  const double n4 = std::pow(static_cast<double>(n), 4);
  auto consider = [&](std::size_t x, std::size_t y, std::size_t z, std::size_t p) {
    double v = four_point_defect(m, x, y, z, p);
    ++r.scanned;
    if (v > r.delta) {
      r.delta = v;
      r.witness = {x, y, z, p};
    }
  };
  if (n4 <= static_cast<double>(budget)) {
    r.exhaustive = true;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
          for (std::size_t z = 0; z < n; ++z) consider(x, y, z, p);
    return r;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::uint64_t s = 0; s < budget; ++s) {
    std::size_t x = pick(rng), y = pick(rng), z = pick(rng), p = pick(rng);
    consider(x, y, z, p);
  }
  return r;
}

DeltaReport delta_at_base(const MetricOracle& m, std::size_t p) {
  const std::size_t n = m.size();
  if (p >= n) throw ArgumentError("base point out of range");
  DeltaReport r;
  r.exhaustive = true;
  r.witness = {p, p, p, p};
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        double v = four_point_defect(m, x, y, z, p);
        ++r.scanned;
        if (v > r.delta) {
          r.delta = v;
          r.witness = {x, y, z, p};
        }
      }
  r.budget = r.scanned;
  return r;
}

VisualData visual_data(const MetricOracle& m, std::size_t p, double epsilon) {
  const std::size_t n = m.size();
  if (p >= n) throw ArgumentError("base point out of range");
  if (!(epsilon > 0)) throw ArgumentError("epsilon must be positive");
  VisualData v;
  v.base = p;
  v.epsilon = epsilon;
  v.n = n;
  v.gromov.resize(n * n);
  v.rho.resize(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double g = gromov_product(m, p, i, j);
      v.gromov[i * n + j] = g;
      v.rho[i * n + j] = std::exp(-epsilon * g);
    }
  v.chain = v.rho;
  auto& c = v.chain;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      double cik = c[i * n + k];
      double* row = &c[i * n];
      const double* krow = &c[k * n];
      for (std::size_t j = 0; j < n; ++j) row[j] = std::min(row[j], cik + krow[j]);
    }
  return v;
}

} // namespace qhlab
