#pragma once

#include "qhlab/envelope.hpp"
#include "qhlab/maps.hpp"
#include "qhlab/metrics.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qhlab {

// Named empirical constant with its evidence.
struct ConstantReport {
  std::string name;
  double value = 0.0;
  std::map<std::string, double> values; // auxiliary constants
  std::map<std::string, bool> flags;
  PointList witness;
  std::uint64_t budget = 0;
  std::uint64_t seed = 0;
  double mesh = 0.0;
  std::uint64_t scanned = 0;
  std::uint64_t skipped = 0;
};

struct ScanOptions {
  std::uint64_t budget = 50'000'000; // exhaustive when the tuple count fits
  std::uint64_t seed = 0;
  unsigned jobs = 1; // worker threads; results do not depend on this
};

// Index subset A of X; empty optional means A = X.
using Subset = std::optional<std::vector<std::size_t>>;

// Triple ratios of f(T) against T over the triples in (X, A): x in A or
// {y, z} in A.
DistortionEnvelope qs_scan(const MapSpec& f, std::span<const Point> xs, const Subset& a = std::nullopt,
                           const ScanOptions& opt = {});

// Cross ratios over the quadruples in (X, A): {x, w} in A or {y, z} in A.
// Infinity is allowed in X and in images.
DistortionEnvelope qm_scan(const MapSpec& f, std::span<const ExtendedPoint> xs, const Subset& a = std::nullopt,
                           const ScanOptions& opt = {});
DistortionEnvelope qm_scan(const MapSpec& f, std::span<const Point> xs, const Subset& a = std::nullopt,
                           const ScanOptions& opt = {});

// min over triples of max(diam X / sep(T), diam f(X) / sep(f(T))).
// Exhaustive for |X| <= 300, sampled beyond. Witness: the triple and images.
ConstantReport three_point_lambda(const MapSpec& f, std::span<const Point> xs, const ScanOptions& opt = {});

ConstantReport bilipschitz_constant(const MapSpec& f, std::span<const Point> xs);

struct CqhOptions {
  std::size_t landmarks = 24;
  std::uint64_t seed = 0;
  double additive_target = 1.0; // smallest grid M with C(M) <= this
  // Landmark candidates: net points of D whose image has at least this
  // boundary distance in D' (keeps images inside the target net).
  double min_image_depth = 0.0;
  // Constant of the local ratio condition measured on the same map. The
  // infinitesimal form of that condition bounds the quasihyperbolic length
  // element by C, so M_qh <= C (1 + local_ratio_slack) is flagged.
  std::optional<double> local_ratio;
  double local_ratio_slack = 0.1;
};

// M-QH and (M, C)-CQH constants from landmark pairs. Images are snapped to
// the target net; snap statistics are recorded as auxiliary values.
ConstantReport qh_map_constants(const MapSpec& f, const SampledDomain& source, const SampledDomain& target,
                                const CqhOptions& opt = {});

// Per-center scale c_x is the geometric mean of pair ratios in B(x, vt d(x)).
ConstantReport locally_bilipschitz_scan(const MapSpec& f, const DomainSpec& domain, std::span<const Point> xs,
                                        double vartheta);

// sup over pairs with |x - y| < mu d(x) of the two-sided ratio quotient.
ConstantReport local_ratio_scan(const MapSpec& f, const DomainSpec& source, const DomainSpec& target,
                                std::span<const Point> xs, double mu);

// Upper bound for the uniformity constant achievable by Euclidean-shortest
// net arcs over `pairs` random pairs.
ConstantReport uniform_constant_estimate(const SampledDomain& net, std::size_t pairs, std::uint64_t seed);
// Same, on explicit endpoint pairs (snapped to the net).
ConstantReport uniform_constant_estimate(const SampledDomain& net,
                                         std::span<const std::pair<Point, Point>> pairs);

struct PerfectOptions {
  // Dyadic radii start above this scale; default: half the smallest
  // nearest-neighbour distance.
  std::optional<double> resolution;
  // Sampling density bound: distances realized in B(x, r) are credited with
  // this much extra reach, so dense samples of a continuum score near 1.
  double density_slack = 0.0;
  // Radii start strictly above each center's nearest-neighbour distance
  // instead of the global resolution (gaps below the sample's own spacing
  // at a point are ignored).
  bool local_resolution = false;
};

// sup of r / max{|x - y| : y in B(x, r)} over centers and dyadic radii with
// X \ B(x, r) nonempty. Empty annuli set the "unbounded" flag.
ConstantReport uniformly_perfect_estimate(std::span<const Point> boundary, const PerfectOptions& opt = {});

struct BoundaryBoundInputs {
  double bilipschitz = 1.0;  // L
  double perfectness = 1.0;  // C
  std::optional<ControlFunction> theta1;
};

// Empirical M1, M2 and the formula values 6 L theta1(4C) and
// (2L + 6L theta1(4C)) v (2L + 6L theta1'(4C L^2)).
ConstantReport boundary_distance_bounds(const MapSpec& f, const DomainSpec& source, const DomainSpec& target,
                                        std::span<const Point> xs, std::span<const Point> boundary,
                                        const BoundaryBoundInputs& in);

} // namespace qhlab
