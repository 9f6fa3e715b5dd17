#pragma once

#include "qhlab/net.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

namespace qhlab {

// log(1 + |x - y| / min(d(x), d(y))).
double j_distance(const DomainSpec& domain, const Point& x, const Point& y);

// Quasihyperbolic length assigned to the net edge a-b.
//
// The segment stays inside the domain (|a - b| <= min(d) / 4), and since d is
// 1-Lipschitz, d(z) >= max(da - s, db - (L - s)) along it. Integrating the
// reciprocal of that envelope gives log(da * db / m^2) with
// m = (da + db - L) / 2, an upper bound for the segment's quasihyperbolic
// length that is exact along boundary normals.
double qh_edge_weight(double length, double da, double db);

struct QhResult {
  double value = 0.0;
  double mesh = 0.0;
  std::size_t source = 0;
  std::size_t target = 0;
  double snap_source = 0.0; // distance from the query point to its net point
  double snap_target = 0.0;
};

// Graph quasihyperbolic distance between the net points nearest x and y.
// Throws UnreachableError when they lie in different components.
QhResult qh_distance(const SampledDomain& net, const Point& x, const Point& y);

// Single-source quasihyperbolic distances over the whole net (binary heap).
// With a finite limit the search stops once the frontier passes it; entries
// above the limit are then only upper bounds (or infinity).
std::vector<double> qh_from(const SampledDomain& net, std::size_t source,
                            double limit = std::numeric_limits<double>::infinity());

// Single-source Euclidean path lengths and predecessor tree.
struct PathTree {
  std::vector<double> dist;
  std::vector<std::uint32_t> parent; // parent[source] == source; unreachable: UINT32_MAX
};
PathTree euclidean_paths_from(const SampledDomain& net, std::size_t source);
std::vector<std::size_t> extract_path(const PathTree& tree, std::size_t target);

// Closed-form quasihyperbolic distance along an aligned segment: vertical in
// a HalfPlane, or on a common line through the center of a Ball or
// PuncturedBall. Throws UnsupportedError for any other configuration.
double qh_exact_aligned(const DomainSpec& domain, const Point& x, const Point& y);

// A finite metric given as a dense symmetric table.
class MetricOracle {
public:
  MetricOracle(std::size_t n, std::vector<double> table);
  static MetricOracle from_function(std::size_t n, const std::function<double(std::size_t, std::size_t)>& d);
  static MetricOracle euclidean(std::span<const Point> pts);
  // Quasihyperbolic table between the given net point indices.
  static MetricOracle quasihyperbolic(const SampledDomain& net, std::span<const std::size_t> indices);

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return t_[i * n_ + j]; }
  const std::vector<double>& table() const { return t_; }

  bool symmetric() const { return symmetric_; }
  bool nonnegative() const { return nonnegative_; }
  // Largest d(i,k) - d(i,j) - d(j,k) over all triples (0 for a metric).
  double triangle_excess() const;

private:
  std::size_t n_;
  std::vector<double> t_;
  bool symmetric_ = true;
  bool nonnegative_ = true;
};

// (x|y)_p = (d(x,p) + d(y,p) - d(x,y)) / 2.
double gromov_product(const MetricOracle& m, std::size_t p, std::size_t x, std::size_t y);

struct DeltaReport {
  double delta = 0.0;
  std::array<std::size_t, 4> witness{0, 0, 0, 0}; // (x, y, z, p)
  std::uint64_t budget = 0;
  std::uint64_t seed = 0;
  std::uint64_t scanned = 0;
  bool exhaustive = false;
  double mesh = 0.0;
};

// Lower bound for the four-point constant:
// max over (x, y, z, p) of [min((x|z)_p, (z|y)_p) - (x|y)_p]^+.
// Exhaustive when n^4 <= budget, else `budget` uniformly sampled quadruples.
DeltaReport delta_estimate(const MetricOracle& m, std::uint64_t budget, std::uint64_t seed);

// The same maximum with the base point fixed, over all (x, y, z).
DeltaReport delta_at_base(const MetricOracle& m, std::size_t p);

struct VisualData {
  std::size_t base = 0;
  double epsilon = 0.0;
  std::size_t n = 0;
  std::vector<double> gromov;     // (x|y)_p
  std::vector<double> rho;        // exp(-epsilon (x|y)_p)
  std::vector<double> chain;      // inf over chains of at least one step of sum rho

  double at(const std::vector<double>& v, std::size_t i, std::size_t j) const { return v[i * n + j]; }
};

VisualData visual_data(const MetricOracle& m, std::size_t p, double epsilon);

} // namespace qhlab
