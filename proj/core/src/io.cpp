#include "qhlab/io.hpp"

#include "qhlab/errors.hpp"

#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

namespace qhlab {

using nlohmann::json;

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// JSON has no infinities; they travel as strings.
json num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double get_num(const json& j, const std::string& key) {
  if (!j.contains(key)) throw ConfigError("missing field '" + key + "'");
  const json& v = j.at(key);
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    auto s = v.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  throw ConfigError("field '" + key + "' must be a number");
}

double num_or(const json& j, const std::string& key, double fallback) {
  return j.contains(key) ? get_num(j, key) : fallback;
}

std::string kind_of(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    throw ConfigError("record needs a string 'kind' field");
  return j.at("kind").get<std::string>();
}

void only_keys(const json& j, std::initializer_list<const char*> allowed) {
  std::set<std::string> ok{"kind"};
  for (auto* a : allowed) ok.insert(a);
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!ok.count(it.key())) throw ConfigError("unknown field '" + it.key() + "' in " + kind_of(j) + " record");
}

std::complex<double> complex_from(const json& j, const std::string& key, std::complex<double> fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw ConfigError("field '" + key + "' must be a number or [re, im]");
}

json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

} // namespace

json to_json(const Point& p) {
  json a = json::array();
  for (int i = 0; i < p.dim(); ++i) a.push_back(num(p[i]));
  return a;
}

Point point_from_json(const json& j) {
  if (!j.is_array() || (j.size() != 2 && j.size() != 3)) throw ConfigError("a point is an array of 2 or 3 numbers");
  for (const auto& v : j)
    if (!v.is_number()) throw ConfigError("point coordinates must be numbers");
  if (j.size() == 2) return Point(j[0].get<double>(), j[1].get<double>());
  return Point(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

json to_json(const DomainSpec& d) {
  return std::visit(overloaded{
                        [](const HalfPlane& v) { return json{{"kind", "HalfPlane"}, {"dim", v.dim}}; },
                        [](const Ball& v) {
                          return json{{"kind", "Ball"}, {"center", to_json(v.center)}, {"radius", v.radius}};
                        },
                        [](const PuncturedBall& v) {
                          return json{{"kind", "PuncturedBall"}, {"center", to_json(v.center)}, {"radius", v.radius}};
                        },
                        [](const BallExterior& v) {
                          return json{{"kind", "BallExterior"}, {"center", to_json(v.center)}, {"radius", v.radius}};
                        },
                        [](const Rectangle& v) {
                          return json{{"kind", "Rectangle"}, {"lo", to_json(v.lo)}, {"hi", to_json(v.hi)}};
                        },
                        [](const ArcComplement& v) {
                          return json{{"kind", "ArcComplement"}, {"t_begin", v.t_begin}, {"t_end", v.t_end}};
                        },
                    },
                    d.variant());
}

DomainSpec domain_from_json(const json& j) {
  const std::string k = kind_of(j);
  try {
    if (k == "HalfPlane") {
      only_keys(j, {"dim"});
      return DomainSpec(HalfPlane{static_cast<int>(num_or(j, "dim", 2))});
    }
    if (k == "Ball" || k == "PuncturedBall" || k == "BallExterior") {
      only_keys(j, {"center", "radius"});
      Point c = j.contains("center") ? point_from_json(j.at("center")) : Point(0, 0);
      double r = num_or(j, "radius", 1.0);
      if (k == "Ball") return DomainSpec(Ball{c, r});
      if (k == "PuncturedBall") return DomainSpec(PuncturedBall{c, r});
      return DomainSpec(BallExterior{c, r});
    }
    if (k == "Rectangle") {
      only_keys(j, {"lo", "hi"});
      if (!j.contains("lo") || !j.contains("hi")) throw ConfigError("Rectangle needs 'lo' and 'hi'");
      return DomainSpec(Rectangle{point_from_json(j.at("lo")), point_from_json(j.at("hi"))});
    }
    if (k == "ArcComplement") {
      only_keys(j, {"t_begin", "t_end"});
      return DomainSpec(ArcComplement{get_num(j, "t_begin"), get_num(j, "t_end")});
    }
  } catch (const ArgumentError& e) {
    throw ConfigError(std::string("invalid ") + k + ": " + e.what());
  }
  throw ConfigError("unknown domain kind '" + k + "'");
}

json to_json(const MapSpec& f) {
  return std::visit(overloaded{
                        [](const IdentityMap&) { return json{{"kind", "Identity"}}; },
                        [](const SimilarityMap& v) {
                          return json{{"kind", "Similarity"},
                                      {"scale", v.scale},
                                      {"rotation", v.rotation},
                                      {"translation", to_json(v.translation)}};
                        },
                        [](const RadialPowerMap& v) { return json{{"kind", "RadialPower"}, {"alpha", v.alpha}}; },
                        [](const InversionMap& v) { return json{{"kind", "Inversion"}, {"center", to_json(v.center)}}; },
                        [](const MobiusPlaneMap& v) {
                          return json{{"kind", "MobiusPlane"},
                                      {"a", complex_json(v.a)},
                                      {"b", complex_json(v.b)},
                                      {"c", complex_json(v.c)},
                                      {"d", complex_json(v.d)}};
                        },
                        [](const CompositionMap& v) {
                          json parts = json::array();
                          for (const auto& m : v.maps) parts.push_back(to_json(m));
                          return json{{"kind", "Composition"}, {"maps", parts}};
                        },
                    },
                    f.variant());
}

MapSpec map_from_json(const json& j) {
  const std::string k = kind_of(j);
  try {
    if (k == "Identity") {
      only_keys(j, {});
      return MapSpec::identity();
    }
    if (k == "Similarity") {
      only_keys(j, {"scale", "rotation", "translation"});
      Point t = j.contains("translation") ? point_from_json(j.at("translation")) : Point(0, 0);
      return MapSpec::similarity(num_or(j, "scale", 1.0), num_or(j, "rotation", 0.0), t);
    }
    if (k == "RadialPower") {
      only_keys(j, {"alpha"});
      return MapSpec::radial_power(get_num(j, "alpha"));
    }
    if (k == "Inversion") {
      only_keys(j, {"center"});
      return MapSpec::inversion(j.contains("center") ? point_from_json(j.at("center")) : Point(0, 0));
    }
    if (k == "MobiusPlane") {
      only_keys(j, {"a", "b", "c", "d"});
      return MapSpec::mobius(complex_from(j, "a", 1.0), complex_from(j, "b", 0.0), complex_from(j, "c", 0.0),
                             complex_from(j, "d", 1.0));
    }
    if (k == "Composition") {
      only_keys(j, {"maps"});
      if (!j.contains("maps") || !j.at("maps").is_array()) throw ConfigError("Composition needs a 'maps' array");
      std::vector<MapSpec> parts;
      for (const auto& m : j.at("maps")) parts.push_back(map_from_json(m));
      return MapSpec::compose(std::move(parts));
    }
  } catch (const ArgumentError& e) {
    throw ConfigError(std::string("invalid ") + k + ": " + e.what());
  }
  throw ConfigError("unknown map kind '" + k + "'");
}

json to_json(const ControlFunction& f) {
  return std::visit(overloaded{
                        [](const cf::LinearScale& v) { return json{{"kind", "linear"}, {"factor", v.factor}}; },
                        [](const cf::Power& v) {
                          return json{{"kind", "power"}, {"factor", v.factor}, {"alpha", v.alpha}};
                        },
                        [](const cf::Theta0&) { return json{{"kind", "theta0"}}; },
                        [](const cf::Table& v) {
                          json s = json::array();
                          for (auto [t, y] : v.samples) s.push_back(json::array({t, y}));
                          return json{{"kind", "table"}, {"samples", s}};
                        },
                        [](const cf::Composed& v) {
                          json parts = json::array();
                          for (const auto& p : v.parts) parts.push_back(to_json(p));
                          return json{{"kind", "composed"}, {"parts", parts}};
                        },
                        [](const cf::Inverse& v) { return json{{"kind", "inverse"}, {"of", to_json(*v.of)}}; },
                        [](const cf::ReciprocalConjugate& v) {
                          return json{{"kind", "reciprocal_conjugate"}, {"of", to_json(*v.of)}};
                        },
                    },
                    f.variant());
}

ControlFunction control_from_json(const json& j) {
  const std::string k = kind_of(j);
  try {
    if (k == "identity") {
      only_keys(j, {});
      return ControlFunction::identity();
    }
    if (k == "linear") {
      only_keys(j, {"factor"});
      return ControlFunction::linear(get_num(j, "factor"));
    }
    if (k == "power") {
      only_keys(j, {"factor", "alpha"});
      return ControlFunction::power(num_or(j, "factor", 1.0), get_num(j, "alpha"));
    }
    if (k == "theta0") {
      only_keys(j, {});
      return ControlFunction::theta0();
    }
    if (k == "table") {
      only_keys(j, {"samples"});
      if (!j.contains("samples") || !j.at("samples").is_array()) throw ConfigError("table needs a 'samples' array");
      std::vector<std::pair<double, double>> s;
      for (const auto& p : j.at("samples")) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
          throw ConfigError("table samples are [t, value] pairs");
        s.emplace_back(p[0].get<double>(), p[1].get<double>());
      }
      return ControlFunction::table(std::move(s));
    }
    if (k == "composed") {
      only_keys(j, {"parts"});
      if (!j.contains("parts") || !j.at("parts").is_array()) throw ConfigError("composed needs a 'parts' array");
      std::vector<ControlFunction> parts;
      for (const auto& p : j.at("parts")) parts.push_back(control_from_json(p));
      return ControlFunction(cf::Composed{std::move(parts)});
    }
    if (k == "inverse" || k == "reciprocal_conjugate") {
      only_keys(j, {"of"});
      if (!j.contains("of")) throw ConfigError(k + " needs an 'of' record");
      auto inner = control_from_json(j.at("of"));
      return k == "inverse" ? cf_inverse(inner) : cf_reciprocal_conjugate(inner);
    }
  } catch (const ArgumentError& e) {
    throw ConfigError("invalid " + k + " control: " + e.what());
  }
  throw ConfigError("unknown control kind '" + k + "'");
}

json to_json(const ConstantReport& r) {
  json values = json::object(), flags = json::object(), witness = json::array();
  for (const auto& [k, v] : r.values) values[k] = num(v);
  for (const auto& [k, v] : r.flags) flags[k] = v;
  for (const auto& p : r.witness) witness.push_back(to_json(p));
  return json{{"constant_name", r.name}, {"value", num(r.value)}, {"values", values},
              {"flags", flags},          {"witness_points", witness}, {"budget", r.budget},
              {"seed", r.seed},          {"mesh_h", r.mesh},      {"scanned", r.scanned},
              {"skipped", r.skipped}};
}

json to_json(const DeltaReport& r) {
  return json{{"delta", num(r.delta)}, {"witness", r.witness}, {"budget", r.budget},         {"seed", r.seed},
              {"h", r.mesh},           {"scanned", r.scanned}, {"exhaustive", r.exhaustive}};
}

json to_json(const Scenario& s) {
  json checks = json::array();
  for (const auto& c : s.checks)
    checks.push_back(json{{"description", c.description},
                          {"computed", num(c.computed)},
                          {"comparator", c.comparator},
                          {"bound", num(c.bound)},
                          {"tolerance", num(c.tolerance)},
                          {"pass", c.pass}});
  json obs = json::object();
  for (const auto& [k, v] : s.observations) obs[k] = num(v);
  return json{{"name", s.name},     {"pass", s.pass},          {"no_data", s.no_data},
              {"checks", checks},   {"observations", obs},     {"bindings", s.bindings}};
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(17);
  os << v;
  return os.str();
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  cells.push_back(cur);
  return cells;
}

double parse_double(const std::string& s) {
  std::istringstream is(s);
  is.imbue(std::locale::classic());
  double v = 0.0;
  is >> v;
  if (!is || !(is >> std::ws).eof()) throw ArgumentError("bad number in CSV: '" + s + "'");
  return v;
}

} // namespace

void write_points_csv(std::ostream& os, std::span<const Point> pts) {
  int dim = pts.empty() ? 2 : pts.front().dim();
  os << (dim == 3 ? "x,y,z\n" : "x,y\n");
  for (const auto& p : pts) {
    os << fmt(p[0]) << ',' << fmt(p[1]);
    if (dim == 3) os << ',' << fmt(p[2]);
    os << '\n';
  }
}

PointList read_points_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ArgumentError("empty point CSV");
  auto header = split_csv_line(line);
  std::size_t dim = header.size();
  if (!((dim == 2 && header[0] == "x" && header[1] == "y") ||
        (dim == 3 && header[0] == "x" && header[1] == "y" && header[2] == "z")))
    throw ArgumentError("point CSV header must be x,y or x,y,z");
  PointList out;
  while (std::getline(is, line)) {
    if (line.empty() || line == "\r") continue;
    auto cells = split_csv_line(line);
    if (cells.size() != dim) throw ArgumentError("point CSV row has the wrong number of fields");
    if (dim == 2) out.emplace_back(parse_double(cells[0]), parse_double(cells[1]));
    else out.emplace_back(parse_double(cells[0]), parse_double(cells[1]), parse_double(cells[2]));
  }
  return out;
}

void write_matrix_csv(std::ostream& os, const MetricOracle& m) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) os << (j ? "," : "") << fmt(m(i, j));
    os << '\n';
  }
}

MetricOracle read_matrix_csv(std::istream& is) {
  std::vector<double> t;
  std::size_t n = 0, rows = 0;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line == "\r") continue;
    auto cells = split_csv_line(line);
    if (rows == 0) n = cells.size();
    if (cells.size() != n) throw ArgumentError("matrix CSV rows differ in length");
    for (const auto& c : cells) t.push_back(parse_double(c));
    ++rows;
  }
  if (rows != n) throw ArgumentError("matrix CSV is not square");
  return MetricOracle(n, std::move(t));
}

void write_control_csv(std::ostream& os, const ControlFunction& f) {
  os << "t,eta_hat\n";
  for (int b = 1; b < DistortionEnvelope::kSlots; ++b) {
    double t = DistortionEnvelope::lower_edge(b);
    os << fmt(t) << ',' << fmt(f(t)) << '\n';
  }
}

void write_summary_csv(std::ostream& os, std::span<const Scenario> scenarios) {
  os << "scenario,check,computed,bound,pass\n";
  for (const auto& s : scenarios)
    for (const auto& c : s.checks)
      os << s.name << ',' << quote(c.description) << ',' << fmt(c.computed) << ',' << fmt(c.bound) << ','
         << (c.pass ? "true" : "false") << '\n';
}

} // namespace qhlab
