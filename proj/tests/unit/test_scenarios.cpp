#include "support.hpp"

#include "qhlab/io.hpp"
#include "qhlab/scenarios.hpp"

#include <doctest.h>

#include <algorithm>

using namespace qhlab;

namespace {

std::string failed_checks(const Scenario& s) {
  std::string out;
  for (const auto& c : s.checks)
    if (!c.pass) out += c.description + " (" + std::to_string(c.computed) + " vs " + std::to_string(c.bound) + "); ";
  return out;
}

bool has_check(const Scenario& s, const std::string& prefix) {
  return std::any_of(s.checks.begin(), s.checks.end(),
                     [&](const Check& c) { return c.description.rfind(prefix, 0) == 0; });
}

} // namespace

TEST_SUITE("scenarios") {

TEST_CASE("check comparators and finalize") {
  Scenario s;
  CHECK(s.check("a", 1.0, "<=", 1.0).pass);
  CHECK(s.check("b", 1.0 + 1e-9, "<=", 1.0, 1e-8).pass);
  CHECK_FALSE(s.check("c", 2.0, "<", 2.0).pass);
  CHECK(s.check("d", 3.0, "==", 3.0).pass);
  CHECK(s.check("e", 3.0, ">=", 2.0).pass);
  s.finalize();
  CHECK_FALSE(s.pass);

  Scenario empty;
  empty.finalize();
  CHECK(empty.no_data);
}

TEST_CASE("necessity") {
  auto sq = support::square_boundary(6);
  auto id = run_three_point_necessity(MapSpec::identity(), sq, ControlFunction::identity());
  CHECK_MESSAGE(id.pass, failed_checks(id));
  CHECK(id.observations.at("lambda_hat") <= 12.0);
  CHECK(has_check(id, "three-point lambda"));
  CHECK(has_check(id, "image third point"));

  auto sim = run_three_point_necessity(MapSpec::similarity(2.0, 0.3), sq, ControlFunction::identity());
  CHECK_MESSAGE(sim.pass, failed_checks(sim));

  auto ann = support::annulus(0.1, 1.0, 4, 8);
  auto pw = run_three_point_necessity(MapSpec::radial_power(2), ann,
                                      qs_scan(MapSpec::radial_power(2), ann).dominating_control());
  CHECK_MESSAGE(pw.pass, failed_checks(pw));

  // An undersized control aborts on the precondition with a witness triple.
  auto bad = run_three_point_necessity(MapSpec::radial_power(2), ann, ControlFunction::identity());
  CHECK_FALSE(bad.pass);
  CHECK(bad.checks.size() == 1);
  CHECK(bad.bindings.at("aborted") == true);
  CHECK(bad.bindings.at("violating_triple").size() == 3);
}

TEST_CASE("sufficiency") {
  auto circ = support::circle(16);
  auto id = run_three_point_sufficiency(MapSpec::identity(), circ, ControlFunction::identity());
  CHECK_MESSAGE(id.pass, failed_checks(id));

  auto ann = support::annulus(0.5, 2.0, 3, 8);
  auto inv = run_three_point_sufficiency(MapSpec::inversion(), ann, ControlFunction::identity());
  CHECK_MESSAGE(inv.pass, failed_checks(inv));

  auto disk = support::annulus(0.1, 0.9, 3, 8);
  auto mob = run_three_point_sufficiency(MapSpec::mobius({1, 0}, {0.3, 0.1}, {0.2, -0.2}, {1, 0}), disk,
                                         ControlFunction::identity());
  CHECK_MESSAGE(mob.pass, failed_checks(mob));
}

TEST_CASE("necessity and sufficiency share one lambda") {
  auto ann = support::annulus(0.1, 1.0, 4, 8);
  auto [nec, suf] = run_three_point_pair(MapSpec::radial_power(2), ann);
  CHECK_MESSAGE(nec.pass, failed_checks(nec));
  CHECK_MESSAGE(suf.pass, failed_checks(suf));
  CHECK(nec.observations.at("lambda_hat") == suf.observations.at("lambda_hat"));
  CHECK(nec.observations.at("lambda_hat") == three_point_lambda(MapSpec::radial_power(2), ann).value);
}

TEST_CASE("boundary quasisymmetry") {
  auto s = run_boundary_quasisymmetry(MapSpec::mobius({1, 0}, {0.3, 0}, {0.3, 0}, {1, 0}),
                                      DomainSpec(Ball{Point(0, 0), 1.0}), 0.1);
  CHECK_MESSAGE(s.pass, failed_checks(s));
  CHECK_FALSE(s.no_data);
}

TEST_CASE("diameter lemma") {
  for (const auto& d : {DomainSpec(Ball{Point(0, 0), 1.0}), DomainSpec(Rectangle{Point(0, 0), Point(1, 1)}),
                        DomainSpec(Rectangle{Point(0, 0), Point(1, 1e-3)})}) {
    auto s = run_diam_lemma(d, 0.02, 1, 100);
    CAPTURE(d.kind());
    CHECK_MESSAGE(s.pass, failed_checks(s));
    CHECK(s.checks.size() == 2);
  }
}

TEST_CASE("counterexamples") {
  CounterexampleOptions o;
  o.seed = 1;
  auto all = run_counterexamples(o);
  REQUIRE(all.size() == 3);
  for (const auto& s : all) {
    CAPTURE(s.name);
    CHECK_MESSAGE(s.pass, failed_checks(s));
    CHECK_FALSE(s.no_data);
  }
  CounterexampleOptions bad;
  bad.levels = 0;
  CHECK_THROWS(run_counterexamples(bad));
}

TEST_CASE("invariant suites") {
  SuiteOptions o;
  o.seed = 7;
  o.pairs = 2000;
  o.quadruples = 20000;
  o.visual_points = 60;
  auto ball = sample_net(DomainSpec(Ball{Point(0, 0), 1.0}), 0.05, 7);
  auto s = run_invariant_suites(ball, o);
  CHECK_MESSAGE(s.pass, failed_checks(s));
  CHECK_FALSE(s.no_data);

  auto half = sample_net(DomainSpec(HalfPlane{}), 0.05, Box{Point(-1, 0), Point(1, 3)}, 7);
  auto hs = run_invariant_suites(half, o);
  CHECK_MESSAGE(hs.pass, failed_checks(hs));

  SuiteOptions none = o;
  none.quadruples = 0;
  auto v = run_invariant_suites(ball, none);
  CHECK(v.no_data);
}

TEST_CASE("registry is sorted and complete") {
  const auto& reg = scenario_registry();
  REQUIRE(reg.size() == 6);
  CHECK(std::is_sorted(reg.begin(), reg.end(), [](const auto& a, const auto& b) { return a.name < b.name; }));
  for (const auto& info : reg) CHECK_FALSE(info.anchor.empty());
}

TEST_CASE("scenario reports are deterministic") {
  auto a = run_diam_lemma(DomainSpec(Ball{Point(0, 0), 1.0}), 0.05, 4, 30);
  auto b = run_diam_lemma(DomainSpec(Ball{Point(0, 0), 1.0}), 0.05, 4, 30);
  CHECK(to_json(a).dump() == to_json(b).dump());
}

} // TEST_SUITE
