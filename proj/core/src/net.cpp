#include "qhlab/net.hpp"

#include "qhlab/errors.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace qhlab {

namespace {

// Points of level k keep d >= kBand * s_k, so grid neighbours (about 1.2 s_k
// away after jitter) fall inside the d / 4 edge radius.
constexpr double kBand = 6.4;
constexpr double kJitter = 0.1;
constexpr double kEdgeCap = 3.5;
constexpr int kMaxLevels = 24;
constexpr std::int64_t kAxisLimit = 1 << 20;

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform in [-1, 1), a pure function of its arguments.
double unit_jitter(std::uint64_t seed, int level, std::uint64_t key, int axis) {
  std::uint64_t h = splitmix(seed ^ splitmix(key ^ (static_cast<std::uint64_t>(level) << 58) ^
                                             (static_cast<std::uint64_t>(axis) << 62)));
  return static_cast<double>(h >> 11) * 0x1.0p-52 - 1.0;
}

std::uint64_t pack(int level, const std::array<std::int64_t, 3>& idx) {
  return (static_cast<std::uint64_t>(level) << 60) | (static_cast<std::uint64_t>(idx[0]) << 40) |
         (static_cast<std::uint64_t>(idx[1]) << 20) | static_cast<std::uint64_t>(idx[2]);
}

struct Grid {
  Point lo;
  int dim;
  double spacing;
  std::array<std::int64_t, 3> count{1, 1, 1};

  Point center(const std::array<std::int64_t, 3>& idx) const {
    Point p = lo;
    for (int a = 0; a < dim; ++a) p[a] = lo[a] + (static_cast<double>(idx[static_cast<std::size_t>(a)]) + 0.5) * spacing;
    return p;
  }
};

Grid make_grid(const Box& box, int dim, double s) {
  Grid g{box.lo, dim, s};
  for (int a = 0; a < dim; ++a) {
    auto n = static_cast<std::int64_t>(std::ceil((box.hi[a] - box.lo[a]) / s));
    if (n > kAxisLimit) throw DiscretizationError("net too fine for the sampling box (grid axis overflow)");
    g.count[static_cast<std::size_t>(a)] = std::max<std::int64_t>(n, 1);
  }
  return g;
}

template <class F>
void for_each_node(const Grid& g, F&& f) {
  std::array<std::int64_t, 3> idx{0, 0, 0};
  for (idx[2] = 0; idx[2] < g.count[2]; ++idx[2])
    for (idx[1] = 0; idx[1] < g.count[1]; ++idx[1])
      for (idx[0] = 0; idx[0] < g.count[0]; ++idx[0]) f(idx);
}

double max_depth_probe(const DomainSpec& domain, const Box& box, int dim, double h) {
  for (int k = 0; k < kMaxLevels; ++k) {
    double s = h / std::ldexp(1.0, k);
    Grid g = make_grid(box, dim, s);
    if (static_cast<double>(g.count[0]) * static_cast<double>(g.count[1]) * static_cast<double>(g.count[2]) > 4e7)
      break;
    double best = 0.0;
    for_each_node(g, [&](const auto& idx) {
      Point p = g.center(idx);
      if (domain.contains(p)) best = std::max(best, domain.boundary_distance(p));
    });
    // Accept once the grid resolves the deepest region reasonably.
    if (best > 0.0 && s <= best / 16.0) return best;
    if (best > 0.0 && k == kMaxLevels - 1) return best;
  }
  return 0.0;
}

} // namespace

SampledDomain::SampledDomain(DomainSpec source, double h, Box bounds, std::uint64_t seed, PointList net,
                             std::vector<double> depth, std::vector<double> spacing, Adjacency adjacency,
                             PointList boundary_samples)
    : source_(std::move(source)), h_(h), bounds_(bounds), seed_(seed), net_(std::move(net)),
      depth_(std::move(depth)), spacing_(std::move(spacing)), adj_(std::move(adjacency)),
      boundary_(std::move(boundary_samples)) {}

std::pair<std::size_t, double> SampledDomain::nearest(const Point& x) const {
  if (net_.empty()) throw DiscretizationError("empty net");
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < net_.size(); ++i) {
    double d = (net_[i] - x).norm2();
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return {best, std::sqrt(best_d)};
}

SampledDomain sample_net(const DomainSpec& domain, double h, const Box& bounds, std::uint64_t seed) {
  if (!(h > 0) || !std::isfinite(h)) throw ArgumentError("sample_net needs h > 0");
  const int dim = domain.dim();
  for (int a = 0; a < dim; ++a)
    if (!(bounds.lo[a] < bounds.hi[a])) throw ArgumentError("sampling box corners must be strictly ordered");

  const double d_max = max_depth_probe(domain, bounds, dim, h);
  if (!(d_max > 0)) throw DiscretizationError("sampling box does not meet the " + domain.kind() + " domain");
  const double floor_target = std::min(0.8 * h, 0.6 * d_max);
  int levels = 0;
  while (kBand * h / std::ldexp(1.0, levels) > floor_target && levels < kMaxLevels - 1) ++levels;

  PointList pts;
  std::vector<double> depth, spacing;
  std::vector<int> level_of;
  std::vector<std::array<std::int64_t, 3>> index_of;
  std::vector<Grid> grids;
  std::unordered_map<std::uint64_t, std::uint32_t> cell;

  for (int k = 0; k <= levels; ++k) {
    const double s = h / std::ldexp(1.0, k);
    const double band_lo = kBand * s;
    const double band_hi = k == 0 ? std::numeric_limits<double>::infinity() : kBand * 2.0 * s;
    grids.push_back(make_grid(bounds, dim, s));
    const Grid& g = grids.back();
    for_each_node(g, [&](const auto& idx) {
      Point c = g.center(idx);
      // Cheap rejection on the unjittered center (d is 1-Lipschitz).
      double slack = kJitter * s * std::sqrt(static_cast<double>(dim));
      if (!domain.contains(c)) {
        // The jittered point could still fall inside; only for tiny slack.
        if (slack <= 0) return;
      } else {
        double dc = domain.boundary_distance(c);
        if (dc + slack < band_lo || dc - slack >= band_hi) return;
      }
      std::uint64_t key = pack(k, idx);
      Point p = c;
      for (int a = 0; a < dim; ++a) p[a] += kJitter * s * unit_jitter(seed, k, key, a);
      if (!domain.contains(p)) return;
      double d = domain.boundary_distance(p);
      if (d < band_lo || d >= band_hi) return;
      cell.emplace(key, static_cast<std::uint32_t>(pts.size()));
      pts.push_back(p);
      depth.push_back(d);
      spacing.push_back(s);
      level_of.push_back(k);
      index_of.push_back(idx);
    });
  }
  if (pts.empty()) throw DiscretizationError("net is empty: no grid point of the box lies deep enough in the domain");
  if (pts.size() >= std::numeric_limits<std::uint32_t>::max()) throw DiscretizationError("net too large");

  Adjacency adj;
  adj.offsets.reserve(pts.size() + 1);
  adj.offsets.push_back(0);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Point& x = pts[i];
    const double dx = depth[i];
    const int kx = level_of[i];
    for (int j = 0; j <= levels; ++j) {
      const Grid& g = grids[static_cast<std::size_t>(j)];
      const double r = std::min(dx / 4.0, kEdgeCap * std::min(spacing[i], g.spacing));
      const double band_lo = kBand * g.spacing;
      const double band_hi = j == 0 ? std::numeric_limits<double>::infinity() : 2.0 * kBand * g.spacing;
      if (dx + r < band_lo || dx - r >= band_hi) continue;
      std::array<std::int64_t, 3> lo_i{0, 0, 0}, hi_i{0, 0, 0};
      for (int a = 0; a < dim; ++a) {
        auto A = static_cast<std::size_t>(a);
        lo_i[A] = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::floor((x[a] - r - g.lo[a]) / g.spacing)) - 1);
        hi_i[A] = std::min<std::int64_t>(g.count[A] - 1,
                                         static_cast<std::int64_t>(std::floor((x[a] + r - g.lo[a]) / g.spacing)) + 1);
      }
      std::array<std::int64_t, 3> idx{0, 0, 0};
      for (idx[2] = lo_i[2]; idx[2] <= hi_i[2]; ++idx[2])
        for (idx[1] = lo_i[1]; idx[1] <= hi_i[1]; ++idx[1])
          for (idx[0] = lo_i[0]; idx[0] <= hi_i[0]; ++idx[0]) {
            auto it = cell.find(pack(j, idx));
            if (it == cell.end() || it->second == i) continue;
            std::uint32_t y = it->second;
            double len = distance(x, pts[y]);
            if (len <= std::min(dx, depth[y]) / 4.0 &&
                len <= kEdgeCap * std::min(spacing[i], spacing[y]) * (1.0 + 1e-12)) {
              adj.targets.push_back(y);
              adj.lengths.push_back(len);
            }
          }
    }
    (void)kx;
    adj.offsets.push_back(static_cast<std::uint32_t>(adj.targets.size()));
  }

  Point blo = bounds.lo, bhi = bounds.hi;
  PointList boundary = domain.sample_boundary(h, blo, bhi);

  SampledDomain net(domain, h, bounds, seed, std::move(pts), std::move(depth), std::move(spacing), std::move(adj),
                    std::move(boundary));
  std::size_t comps = component_count(net);
  if (comps != 1) {
    std::ostringstream os;
    os << "net graph is disconnected: " << comps << " components over " << net.size() << " points (h = " << h
       << ", levels = " << levels + 1 << ")";
    throw DiscretizationError(os.str());
  }
  return net;
}

SampledDomain sample_net(const DomainSpec& domain, double h, std::uint64_t seed) {
  auto [lo, hi] = domain.bounding_box();
  return sample_net(domain, h, Box{lo, hi}, seed);
}

std::size_t component_count(const SampledDomain& net) {
  const auto& adj = net.adjacency();
  std::vector<std::uint32_t> label(net.size(), std::numeric_limits<std::uint32_t>::max());
  std::vector<std::uint32_t> stack;
  std::size_t comps = 0;
  for (std::size_t s = 0; s < net.size(); ++s) {
    if (label[s] != std::numeric_limits<std::uint32_t>::max()) continue;
    label[s] = static_cast<std::uint32_t>(comps);
    stack.push_back(static_cast<std::uint32_t>(s));
    while (!stack.empty()) {
      std::uint32_t u = stack.back();
      stack.pop_back();
      for (std::uint32_t e = adj.offsets[u]; e < adj.offsets[u + 1]; ++e) {
        std::uint32_t v = adj.targets[e];
        if (label[v] == std::numeric_limits<std::uint32_t>::max()) {
          label[v] = static_cast<std::uint32_t>(comps);
          stack.push_back(v);
        }
      }
    }
    ++comps;
  }
  return comps;
}

} // namespace qhlab
