#pragma once

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace qhlab {

class ControlFunction;

namespace cf {

// t -> L t
struct LinearScale {
  double factor = 1.0;
};
// t -> M (t^(1/alpha) v t^alpha), alpha >= 1
struct Power {
  double factor = 1.0;
  double alpha = 1.0;
};
// t -> 3 (t v sqrt(t))
struct Theta0 {};
// Monotone samples interpolated linearly in log-log coordinates and
// extrapolated with the end slopes.
struct Table {
  std::vector<std::pair<double, double>> samples;
};
// Evaluated right to left: parts.back() is applied first.
struct Composed {
  std::vector<ControlFunction> parts;
};
struct Inverse {
  std::shared_ptr<const ControlFunction> of;
};
// t -> 1 / g(1 / t), with 0 -> 0. Increasing whenever g is.
struct ReciprocalConjugate {
  std::shared_ptr<const ControlFunction> of;
};

} // namespace cf

// A homeomorphism of [0, inf) fixing 0, held as an immutable expression.
class ControlFunction {
public:
  using Variant = std::variant<cf::LinearScale, cf::Power, cf::Theta0, cf::Table, cf::Composed, cf::Inverse,
                               cf::ReciprocalConjugate>;

  ControlFunction(Variant v); // NOLINT

  static ControlFunction identity() { return linear(1.0); }
  static ControlFunction linear(double factor);
  static ControlFunction power(double factor, double alpha);
  static ControlFunction theta0() { return ControlFunction(cf::Theta0{}); }
  static ControlFunction table(std::vector<std::pair<double, double>> samples);

  double operator()(double t) const;
  const Variant& variant() const { return *v_; }
  std::string kind() const;

private:
  std::shared_ptr<const Variant> v_;
};

inline double cf_eval(const ControlFunction& f, double t) { return f(t); }
// (f o g)(t) = f(g(t)).
ControlFunction cf_compose(const ControlFunction& f, const ControlFunction& g);
ControlFunction cf_inverse(const ControlFunction& f);
ControlFunction cf_reciprocal_conjugate(const ControlFunction& f);

// Root of f(x) = y by bracketing then bisection (at most 200 steps, stops at
// machine resolution). Throws RangeError when no bracket is found.
double invert_monotone(const ControlFunction& f, double y);

// max{6, 2 eta(2), 2 / eta^-1(1/6)}.
double lambda_from_eta(const ControlFunction& eta);

// theta'(t) = theta0(theta(1 / theta0^-1(1 / t))).
ControlFunction theta_prime(const ControlFunction& theta);

// t -> 3 lambda theta'(3 lambda t).
ControlFunction eta_from_theta_lambda(const ControlFunction& theta, double lambda);

// t -> 1 / theta0^-1(1 / eta(theta0(t))).
ControlFunction theta_from_eta(const ControlFunction& eta);

} // namespace qhlab
