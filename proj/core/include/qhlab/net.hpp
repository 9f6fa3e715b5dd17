#pragma once

#include "qhlab/domain.hpp"

#include <cstdint>
#include <vector>

namespace qhlab {

// Axis-aligned sampling window.
struct Box {
  Point lo;
  Point hi;
};

// Compressed adjacency with Euclidean edge lengths.
struct Adjacency {
  std::vector<std::uint32_t> offsets; // size n + 1
  std::vector<std::uint32_t> targets;
  std::vector<double> lengths;

  std::size_t degree(std::size_t i) const { return offsets[i + 1] - offsets[i]; }
  std::size_t edge_count() const { return targets.size() / 2; }
};

// A graded, jittered grid discretization of a domain.
//
// The base grid has spacing h. Near the boundary the grid is refined
// dyadically so that every point keeps neighbours within a quarter of its
// boundary distance; points closer to the boundary than min_depth are
// rejected. Edges join x and y when |x - y| <= min(d(x), d(y)) / 4 and
// |x - y| <= 3.5 times the finer of the two local spacings.
class SampledDomain {
public:
  SampledDomain(DomainSpec source, double h, Box bounds, std::uint64_t seed, PointList net,
                std::vector<double> depth, std::vector<double> spacing, Adjacency adjacency,
                PointList boundary_samples);

  const DomainSpec& source() const { return source_; }
  double mesh() const { return h_; }
  const Box& bounds() const { return bounds_; }
  std::uint64_t seed() const { return seed_; }

  const PointList& points() const { return net_; }
  std::size_t size() const { return net_.size(); }
  const Point& point(std::size_t i) const { return net_[i]; }
  // Boundary distance of net point i (cached).
  double depth(std::size_t i) const { return depth_[i]; }
  double local_spacing(std::size_t i) const { return spacing_[i]; }
  const Adjacency& adjacency() const { return adj_; }
  const PointList& boundary_samples() const { return boundary_; }

  // Index of the net point nearest to x, plus the snap distance.
  std::pair<std::size_t, double> nearest(const Point& x) const;

private:
  DomainSpec source_;
  double h_;
  Box bounds_;
  std::uint64_t seed_;
  PointList net_;
  std::vector<double> depth_;
  std::vector<double> spacing_;
  Adjacency adj_;
  PointList boundary_;
};

// Deterministic for a given seed. Throws DiscretizationError when the net is
// empty or its graph is disconnected, and ArgumentError for h <= 0.
SampledDomain sample_net(const DomainSpec& domain, double h, const Box& bounds, std::uint64_t seed);

// Box from the domain's own bounding box (bounded domains only).
SampledDomain sample_net(const DomainSpec& domain, double h, std::uint64_t seed);

// Number of connected components of the net graph.
std::size_t component_count(const SampledDomain& net);

} // namespace qhlab
