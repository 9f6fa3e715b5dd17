#pragma once

#include "qhlab/analysis.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace qhlab {

struct Check {
  std::string description;
  double computed = 0.0;
  double bound = 0.0;
  std::string comparator; // "<=", ">=" or "=="
  double tolerance = 0.0; // absolute slack applied to the comparison
  bool pass = false;
};

// A named verification run. pass is the conjunction of all checks; a run
// with no checks (or only vacuous ones) carries no_data instead of passing
// silently.
struct Scenario {
  std::string name;
  nlohmann::json bindings = nlohmann::json::object();
  std::vector<Check> checks;
  // Recorded observations that are reported but not asserted.
  std::map<std::string, double> observations;
  bool no_data = false;
  bool pass = false;

  Check& check(std::string description, double computed, std::string comparator, double bound,
               double tolerance = 0.0);
  void finalize();
};

struct ThreePointOptions {
  ScanOptions scan;
};

// Quasisymmetric maps are quasimoebius with theta_from_eta and satisfy the
// three-point condition with lambda_from_eta. Aborts (pass = false with a
// single precondition check) when eta does not dominate the triple scan.
Scenario run_three_point_necessity(const MapSpec& f, std::span<const Point> xs, const ControlFunction& eta,
                                   const ThreePointOptions& opt = {});

// Quasimoebius maps with a three-point lambda are quasisymmetric with
// eta_from_theta_lambda(theta, lambda). The lambda report may be shared with
// a necessity run on the same set.
Scenario run_three_point_sufficiency(const MapSpec& f, std::span<const Point> xs, const ControlFunction& theta,
                                     const std::optional<ConstantReport>& lambda = std::nullopt,
                                     const ThreePointOptions& opt = {});

// Both directions on one (f, X) with the fitted dominating controls and a
// single lambda computation.
std::pair<Scenario, Scenario> run_three_point_pair(const MapSpec& f, std::span<const Point> xs,
                                                   const ThreePointOptions& opt = {});

// A map that is quasimoebius on the closure and quasisymmetric on the
// boundary is quasisymmetric: the sufficiency run driven by the triple built
// from the boundary diameter pair and its separated third point.
Scenario run_boundary_quasisymmetry(const MapSpec& f, const DomainSpec& domain, double h,
                                    const ThreePointOptions& opt = {});

// Boundary and net diameters agree to 4h, and every sampled boundary pair
// admits a third boundary point at distance >= diam / 6 - 2h from both.
Scenario run_diam_lemma(const DomainSpec& domain, double h, std::uint64_t seed = 0, std::size_t pairs = 100);

struct CounterexampleOptions {
  double mesh = 0.1;          // coarsest refinement level
  int levels = 3;             // refinement levels h, h/2, ...
  double growth_factor = 2.0; // divergence threshold per level
  double inner_radius = 1e-2;
  std::uint64_t seed = 0;
};

// Inversion of the disk onto its exterior, the radial square map of the
// punctured disk, and the inversion fixing an arc of the unit circle.
std::vector<Scenario> run_counterexamples(const CounterexampleOptions& opt = {});

struct SuiteOptions {
  std::size_t sources = 40;          // Dijkstra sources for pair checks
  std::size_t pairs = 10'000;        // pairs for k >= j >= |log d ratio|
  std::uint64_t quadruples = 100'000;
  std::size_t landmarks = 40;        // metric for the delta estimate
  std::size_t visual_points = 120;
  std::uint64_t delta_budget = 3'000'000;
  std::uint64_t seed = 0;
};

// k >= j >= |log(d(x)/d(y))|, the local two-sided estimate, the Bonk-Kleiner
// versus cross-ratio inequality, and the visual-metric sandwich.
Scenario run_invariant_suites(const SampledDomain& net, const SuiteOptions& opt = {});

struct ScenarioInfo {
  std::string name;
  std::string anchor;
};

// Sorted by name.
const std::vector<ScenarioInfo>& scenario_registry();

} // namespace qhlab
