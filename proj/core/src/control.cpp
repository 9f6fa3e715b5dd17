#include "qhlab/control.hpp"

#include "qhlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qhlab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double eval_table(const cf::Table& tb, double t) {
  const auto& s = tb.samples;
  double lt = std::log(t);
  std::size_t i = 0;
  if (t <= s.front().first) {
    i = 0;
  } else if (t >= s.back().first) {
    i = s.size() - 2;
  } else {
    auto it = std::upper_bound(s.begin(), s.end(), t, [](double v, const auto& p) { return v < p.first; });
    i = static_cast<std::size_t>(it - s.begin()) - 1;
  }
  double x0 = std::log(s[i].first), x1 = std::log(s[i + 1].first);
  double y0 = std::log(s[i].second), y1 = std::log(s[i + 1].second);
  return std::exp(y0 + (y1 - y0) * (lt - x0) / (x1 - x0));
}

} // namespace

ControlFunction::ControlFunction(Variant v) {
  std::visit(overloaded{
                 [](const cf::LinearScale& f) {
                   if (!(f.factor > 0) || !std::isfinite(f.factor)) throw ArgumentError("linear factor must be > 0");
                 },
                 [](const cf::Power& f) {
                   if (!(f.factor > 0) || !(f.alpha >= 1) || !std::isfinite(f.alpha))
                     throw ArgumentError("power control needs factor > 0 and alpha >= 1");
                 },
                 [](const cf::Theta0&) {},
                 [](const cf::Table& f) {
                   if (f.samples.size() < 2) throw ArgumentError("table control needs at least two samples");
                   for (std::size_t i = 0; i < f.samples.size(); ++i) {
                     auto [x, y] = f.samples[i];
                     if (!(x > 0) || !(y > 0) || !std::isfinite(x) || !std::isfinite(y))
                       throw ArgumentError("table samples must be positive and finite");
                     if (i > 0 && !(x > f.samples[i - 1].first && y > f.samples[i - 1].second))
                       throw ArgumentError("table samples must be strictly increasing");
                   }
                 },
                 [](const cf::Composed& f) {
                   if (f.parts.empty()) throw ArgumentError("empty composition");
                 },
                 [](const cf::Inverse& f) {
                   if (!f.of) throw ArgumentError("inverse of nothing");
                 },
                 [](const cf::ReciprocalConjugate& f) {
                   if (!f.of) throw ArgumentError("reciprocal conjugate of nothing");
                 },
             },
             v);
  v_ = std::make_shared<const Variant>(std::move(v));
}

ControlFunction ControlFunction::linear(double factor) { return ControlFunction(cf::LinearScale{factor}); }
ControlFunction ControlFunction::power(double factor, double alpha) { return ControlFunction(cf::Power{factor, alpha}); }
ControlFunction ControlFunction::table(std::vector<std::pair<double, double>> samples) {
  return ControlFunction(cf::Table{std::move(samples)});
}

double ControlFunction::operator()(double t) const {
  if (std::isnan(t) || t < 0) throw ArgumentError("control functions are defined on [0, inf)");
  if (t == 0) return 0.0;
  return std::visit(overloaded{
                        [t](const cf::LinearScale& f) { return f.factor * t; },
                        [t](const cf::Power& f) { return f.factor * std::max(std::pow(t, 1.0 / f.alpha), std::pow(t, f.alpha)); },
                        [t](const cf::Theta0&) { return 3.0 * std::max(t, std::sqrt(t)); },
                        [t](const cf::Table& f) { return std::isinf(t) ? t : eval_table(f, t); },
                        [t](const cf::Composed& f) {
                          double v = t;
                          for (auto it = f.parts.rbegin(); it != f.parts.rend(); ++it) v = (*it)(v);
                          return v;
                        },
                        [t](const cf::Inverse& f) { return invert_monotone(*f.of, t); },
                        [t](const cf::ReciprocalConjugate& f) {
                          if (std::isinf(t)) return 1.0 / (*f.of)(0.0);
                          double g = (*f.of)(1.0 / t);
                          return g == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / g;
                        },
                    },
                    *v_);
}

std::string ControlFunction::kind() const {
  return std::visit(overloaded{
                        [](const cf::LinearScale&) { return std::string("linear"); },
                        [](const cf::Power&) { return std::string("power"); },
                        [](const cf::Theta0&) { return std::string("theta0"); },
                        [](const cf::Table&) { return std::string("table"); },
                        [](const cf::Composed&) { return std::string("composed"); },
                        [](const cf::Inverse&) { return std::string("inverse"); },
                        [](const cf::ReciprocalConjugate&) { return std::string("reciprocal_conjugate"); },
                    },
                    *v_);
}

ControlFunction cf_compose(const ControlFunction& f, const ControlFunction& g) {
  return ControlFunction(cf::Composed{{f, g}});
}

ControlFunction cf_inverse(const ControlFunction& f) {
  return ControlFunction(cf::Inverse{std::make_shared<const ControlFunction>(f)});
}

ControlFunction cf_reciprocal_conjugate(const ControlFunction& f) {
  return ControlFunction(cf::ReciprocalConjugate{std::make_shared<const ControlFunction>(f)});
}

double invert_monotone(const ControlFunction& f, double y) {
  if (std::isnan(y) || y < 0) throw RangeError("cannot invert at a negative value");
  if (y == 0) return 0.0;
  if (std::isinf(y)) return y;
  double lo = 1.0, hi = 1.0;
  if (f(1.0) < y) {
    while (f(hi) < y) {
      lo = hi;
      hi *= 2.0;
      if (!std::isfinite(hi)) throw RangeError("value is outside the range of the control function");
    }
  } else {
    while (f(lo) > y) {
      hi = lo;
      lo *= 0.5;
      if (lo == 0.0) return 0.0;
    }
  }
  for (int step = 0; step < 200; ++step) {
    double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) < y)
      lo = mid;
    else
      hi = mid;
  }
  return std::abs(f(lo) - y) < std::abs(f(hi) - y) ? lo : hi;
}

double lambda_from_eta(const ControlFunction& eta) {
  return std::max({6.0, 2.0 * eta(2.0), 2.0 / invert_monotone(eta, 1.0 / 6.0)});
}

ControlFunction theta_prime(const ControlFunction& theta) {
  auto t0 = ControlFunction::theta0();
  return ControlFunction(cf::Composed{{t0, theta, cf_reciprocal_conjugate(cf_inverse(t0))}});
}

ControlFunction eta_from_theta_lambda(const ControlFunction& theta, double lambda) {
  if (!(lambda > 0)) throw ArgumentError("lambda must be positive");
  auto s = ControlFunction::linear(3.0 * lambda);
  return ControlFunction(cf::Composed{{s, theta_prime(theta), s}});
}

ControlFunction theta_from_eta(const ControlFunction& eta) {
  auto t0 = ControlFunction::theta0();
  return ControlFunction(cf::Composed{{cf_reciprocal_conjugate(cf_inverse(t0)), eta, t0}});
}

} // namespace qhlab
