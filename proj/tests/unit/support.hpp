#pragma once

#include "qhlab/point.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace support {

inline qhlab::PointList circle(std::size_t n, double r = 1.0, qhlab::Point c = qhlab::Point(0, 0)) {
  qhlab::PointList out;
  for (std::size_t i = 0; i < n; ++i) {
    double t = 2 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
    out.emplace_back(c.x() + r * std::cos(t), c.y() + r * std::sin(t));
  }
  return out;
}

inline qhlab::PointList annulus(double r0, double r1, int radii, int angles) {
  qhlab::PointList out;
  for (int i = 0; i < radii; ++i) {
    double r = r0 * std::pow(r1 / r0, radii == 1 ? 0.0 : static_cast<double>(i) / (radii - 1));
    for (int k = 0; k < angles; ++k) {
      double t = 2 * std::numbers::pi * (k + 0.5 * (i % 2)) / angles;
      out.emplace_back(r * std::cos(t), r * std::sin(t));
    }
  }
  return out;
}

inline qhlab::PointList square_boundary(int per_side) {
  qhlab::PointList out;
  for (int i = 0; i < per_side; ++i) {
    double s = static_cast<double>(i) / per_side;
    out.emplace_back(s, 0.0);
    out.emplace_back(1.0, s);
    out.emplace_back(1.0 - s, 1.0);
    out.emplace_back(0.0, 1.0 - s);
  }
  return out;
}

inline qhlab::PointList uniform_box(std::size_t n, double lo, double hi, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  qhlab::PointList out;
  for (std::size_t i = 0; i < n; ++i) {
    double x = u(rng);
    out.emplace_back(x, u(rng));
  }
  return out;
}

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

} // namespace support
