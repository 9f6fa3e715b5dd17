#include "support.hpp"

#include "qhlab/config.hpp"
#include "qhlab/errors.hpp"
#include "qhlab/io.hpp"

#include <doctest.h>

#include <sstream>

using namespace qhlab;
using nlohmann::json;

TEST_SUITE("io") {

TEST_CASE("domain JSON round trip") {
  std::vector<DomainSpec> ds{DomainSpec(HalfPlane{}),
                             DomainSpec(Ball{Point(0.5, -1), 2.0}),
                             DomainSpec(PuncturedBall{Point(0, 0), 1.0}),
                             DomainSpec(BallExterior{Point(1, 1), 0.5}),
                             DomainSpec(Rectangle{Point(0, 0), Point(1, 1e-3)}),
                             DomainSpec(ArcComplement{-1.5, 1.5})};
  for (const auto& d : ds) {
    json j = to_json(d);
    auto back = domain_from_json(j);
    CHECK(to_json(back) == j);
    CHECK(back.kind() == d.kind());
  }
  CHECK_THROWS_AS(domain_from_json(json{{"kind", "Ball"}, {"center", {0, 0}}, {"radius", 1}, {"extra", 1}}),
                  ConfigError);
  CHECK_THROWS_AS(domain_from_json(json{{"kind", "Torus"}}), ConfigError);
  CHECK_THROWS_AS(domain_from_json(json{{"center", {0, 0}}}), ConfigError);
}

TEST_CASE("map JSON round trip") {
  std::vector<MapSpec> ms{MapSpec::identity(),
                          MapSpec::similarity(2, 0.5, Point(1, 2)),
                          MapSpec::radial_power(2),
                          MapSpec::inversion(Point(0.1, 0)),
                          MapSpec::mobius({1, 0}, {0.3, 0.1}, {0.2, 0}, {1, -0.5}),
                          MapSpec::compose({MapSpec::radial_power(3), MapSpec::inversion()})};
  for (const auto& f : ms) {
    json j = to_json(f);
    auto back = map_from_json(j);
    CHECK(to_json(back) == j);
    Point p(0.3, 0.4);
    CHECK(back.apply_finite(p) == f.apply_finite(p));
  }
  CHECK_THROWS_AS(map_from_json(json{{"kind", "RadialPower"}, {"alpha", 2}, {"beta", 1}}), ConfigError);
}

TEST_CASE("control JSON round trip") {
  std::vector<ControlFunction> cs{ControlFunction::linear(2), ControlFunction::power(1.5, 2),
                                  ControlFunction::theta0(), ControlFunction::table({{0.5, 1}, {2, 5}}),
                                  theta_from_eta(ControlFunction::identity()),
                                  eta_from_theta_lambda(ControlFunction::power(1, 2), 3.0)};
  for (const auto& f : cs) {
    json j = to_json(f);
    auto back = control_from_json(j);
    CHECK(to_json(back) == j);
    for (double t : {0.1, 1.0, 7.0}) CHECK(back(t) == f(t));
  }
  CHECK_THROWS_AS(control_from_json(json{{"kind", "cubic"}}), ConfigError);
}

TEST_CASE("reports") {
  ConstantReport r;
  r.name = "L";
  r.value = std::numeric_limits<double>::infinity();
  r.values["x"] = 2;
  r.witness = {Point(1, 2)};
  r.seed = 4;
  r.mesh = 0.1;
  json j = to_json(r);
  for (const char* key : {"constant_name", "value", "witness_points", "budget", "seed", "mesh_h"})
    CHECK(j.contains(key));
  CHECK(j.at("value") == "inf");

  DeltaReport d;
  d.delta = 0.25;
  json dj = to_json(d);
  for (const char* key : {"delta", "witness", "budget", "seed", "h"}) CHECK(dj.contains(key));
}

TEST_CASE("point CSV round trip") {
  auto pts = support::uniform_box(50, -3, 3, 1);
  std::stringstream ss;
  write_points_csv(ss, pts);
  CHECK(ss.str().rfind("x,y\n", 0) == 0);
  auto back = read_points_csv(ss);
  CHECK(back == pts);

  PointList p3{Point(1, 2, 3), Point(-0.5, 1e-17, 4)};
  std::stringstream s3;
  write_points_csv(s3, p3);
  CHECK(s3.str().rfind("x,y,z\n", 0) == 0);
  CHECK(read_points_csv(s3) == p3);

  std::stringstream bad("x,y\n1,2,3\n");
  CHECK_THROWS(read_points_csv(bad));
}

TEST_CASE("summary and control CSV") {
  Scenario s;
  s.name = "demo";
  s.check("a, quoted", 1.0, "<=", 2.0);
  s.finalize();
  std::vector<Scenario> all{s};
  std::stringstream ss;
  write_summary_csv(ss, all);
  CHECK(ss.str() == "scenario,check,computed,bound,pass\ndemo,\"a, quoted\",1,2,true\n");

  std::stringstream cs;
  write_control_csv(cs, ControlFunction::linear(2));
  std::string header;
  std::getline(cs, header);
  CHECK(header == "t,eta_hat");
}

TEST_CASE("config dialect") {
  auto j = parse_config(R"(# top
seed = 7
out = "out/x"   ; trailing comment
flags = [true, false]
scenarios = ["run_diam_lemma"]

[run_diam_lemma]
h = 2e-2
domains = [
  {kind = "Ball", center = [0, 0], radius = 1},
  {kind = "Rectangle", lo = [0, 0], hi = [1, 1]},
]

[a.b]
c = -1.5
)");
  CHECK(j.at("seed") == 7);
  CHECK(j.at("out") == "out/x");
  CHECK(j.at("flags") == json::array({true, false}));
  CHECK(j.at("run_diam_lemma").at("h").get<double>() == doctest::Approx(0.02));
  CHECK(j.at("run_diam_lemma").at("domains").size() == 2);
  CHECK(domain_from_json(j.at("run_diam_lemma").at("domains")[1]).kind() == "Rectangle");
  CHECK(j.at("a").at("b").at("c").get<double>() == -1.5);

  auto js = parse_config(R"({"seed": 3, "run_diam_lemma": {"h": 0.1}})");
  CHECK(js.at("seed") == 3);
}

TEST_CASE("config errors carry line numbers") {
  auto line_of = [](const std::string& text) -> std::string {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return e.what();
    }
    return "";
  };
  CHECK(line_of("seed = 1\n[open\n").find("line 2") != std::string::npos);
  CHECK(line_of("seed = 1\nseed = 2\n").find("line 2") != std::string::npos);
  CHECK(line_of("a = [1, 2\n").find("line") != std::string::npos);
  CHECK(line_of("a = \"unterminated\n").find("line 1") != std::string::npos);
  CHECK(line_of("= 4\n").find("line 1") != std::string::npos);
  CHECK(line_of("a = {b = 1\n").find("line") != std::string::npos);
  CHECK_THROWS_AS(parse_config("{not json"), ConfigError);
  CHECK_THROWS_AS(load_config_file("/nonexistent/file.cfg"), ConfigError);
}

} // TEST_SUITE
