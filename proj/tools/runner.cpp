#include "runner.hpp"

#include "qhlab/config.hpp"
#include "qhlab/errors.hpp"
#include "qhlab/io.hpp"
#include "qhlab/scenarios.hpp"

#include <atomic>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

namespace qhlab::cli {

using nlohmann::json;

namespace {

void only_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!ok.count(it.key())) throw ConfigError("unknown key '" + it.key() + "' in " + where);
}

double number(const json& obj, const std::string& key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_number()) throw ConfigError("'" + key + "' must be a number");
  return obj.at(key).get<double>();
}

std::uint64_t count(const json& obj, const std::string& key, std::uint64_t fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) throw ConfigError("'" + key + "' must be a nonnegative integer");
  return v.get<std::uint64_t>();
}

double positive(double v, const std::string& what) {
  if (!(v > 0) || !std::isfinite(v)) throw ConfigError(what + " must be > 0");
  return v;
}

const json& required(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) throw ConfigError("missing '" + key + "' in " + where);
  return obj.at(key);
}

PointList point_set(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    throw ConfigError("'points' needs a record with a string 'kind'");
  const std::string kind = j.at("kind").get<std::string>();
  PointList out;
  if (kind == "circle") {
    only_keys(j, "circle points", {"kind", "n", "radius", "center"});
    auto n = count(j, "n", 48);
    double r = positive(number(j, "radius", 1.0), "radius");
    Point c = j.contains("center") ? point_from_json(j.at("center")) : Point(0, 0);
    for (std::uint64_t i = 0; i < n; ++i) {
      double t = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
      out.push_back(c + Point(r * std::cos(t), r * std::sin(t)));
    }
  } else if (kind == "square_boundary") {
    only_keys(j, "square_boundary points", {"kind", "n", "side"});
    auto n = count(j, "n", 48);
    double a = positive(number(j, "side", 2.0), "side") / 2.0;
    for (std::uint64_t i = 0; i < n; ++i) {
      double s = 8.0 * a * static_cast<double>(i) / static_cast<double>(n);
      int edge = static_cast<int>(s / (2.0 * a));
      double u = s - 2.0 * a * edge - a;
      switch (edge) {
      case 0: out.emplace_back(u, -a); break;
      case 1: out.emplace_back(a, u); break;
      case 2: out.emplace_back(-u, a); break;
      default: out.emplace_back(-a, -u); break;
      }
    }
  } else if (kind == "annulus") {
    only_keys(j, "annulus points", {"kind", "r0", "r1", "radii", "angles"});
    double r0 = positive(number(j, "r0", 0.1), "r0"), r1 = positive(number(j, "r1", 1.0), "r1");
    auto radii = count(j, "radii", 6), angles = count(j, "angles", 8);
    if (radii < 2 || angles < 1 || !(r1 > r0)) throw ConfigError("annulus needs r1 > r0, radii >= 2, angles >= 1");
    for (std::uint64_t i = 0; i < radii; ++i) {
      double r = r0 * std::pow(r1 / r0, static_cast<double>(i) / static_cast<double>(radii - 1));
      for (std::uint64_t k = 0; k < angles; ++k) {
        double t = 2.0 * std::numbers::pi * (static_cast<double>(k) + 0.5 * static_cast<double>(i % 2)) /
                   static_cast<double>(angles);
        out.emplace_back(r * std::cos(t), r * std::sin(t));
      }
    }
  } else if (kind == "list") {
    only_keys(j, "list points", {"kind", "points"});
    const auto& a = required(j, "points", "list points");
    if (!a.is_array()) throw ConfigError("'points' must be an array");
    for (const auto& p : a) out.push_back(point_from_json(p));
  } else if (kind == "csv") {
    only_keys(j, "csv points", {"kind", "path"});
    const auto& p = required(j, "path", "csv points");
    std::ifstream in(p.get<std::string>());
    if (!in) throw ConfigError("cannot open point file " + p.get<std::string>());
    out = read_points_csv(in);
  } else {
    throw ConfigError("unknown point set kind '" + kind + "'");
  }
  return out;
}

Box box_from(const json& j) {
  only_keys(j, "box", {"lo", "hi"});
  return Box{point_from_json(required(j, "lo", "box")), point_from_json(required(j, "hi", "box"))};
}

struct Settings {
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> budget;
  double mesh = 0.05;
  bool mesh_forced = false;
  unsigned jobs = 1;
};

double mesh_for(const json& sec, const Settings& st) {
  if (st.mesh_forced) return st.mesh;
  return positive(number(sec, "h", st.mesh), "h");
}

ScanOptions scan_for(const Settings& st) {
  ScanOptions o;
  o.seed = st.seed;
  if (st.budget) o.budget = *st.budget;
  return o;
}

using Job = std::function<std::vector<Scenario>()>;

// Builds the jobs for one config section; all validation happens here so
// configuration errors surface before anything runs.
std::vector<Job> jobs_for(const std::string& name, const json& sec, const Settings& st) {
  std::vector<Job> jobs;
  if (!sec.is_object()) throw ConfigError("section [" + name + "] must be a record");
  const std::string where = "[" + name + "]";
  if (name == "run_invariant_suites") {
    only_keys(sec, where, {"domain", "h", "box", "sources", "pairs", "quadruples", "visual_points", "delta_budget"});
    DomainSpec d = domain_from_json(required(sec, "domain", where));
    double h = mesh_for(sec, st);
    std::optional<Box> box;
    if (sec.contains("box")) box = box_from(sec.at("box"));
    if (!box && !d.bounded()) throw ConfigError(where + " needs a 'box' for an unbounded domain");
    SuiteOptions o;
    o.seed = st.seed;
    o.sources = count(sec, "sources", o.sources);
    o.pairs = count(sec, "pairs", o.pairs);
    o.quadruples = count(sec, "quadruples", o.quadruples);
    o.visual_points = count(sec, "visual_points", o.visual_points);
    o.delta_budget = st.budget ? *st.budget : count(sec, "delta_budget", o.delta_budget);
    jobs.push_back([d, h, box, o, seed = st.seed] {
      auto net = box ? sample_net(d, h, *box, seed) : sample_net(d, h, seed);
      return std::vector<Scenario>{run_invariant_suites(net, o)};
    });
  } else if (name == "run_diam_lemma") {
    only_keys(sec, where, {"domain", "domains", "h", "pairs"});
    std::vector<DomainSpec> ds;
    if (sec.contains("domain")) ds.push_back(domain_from_json(sec.at("domain")));
    if (sec.contains("domains")) {
      if (!sec.at("domains").is_array()) throw ConfigError("'domains' must be an array");
      for (const auto& d : sec.at("domains")) ds.push_back(domain_from_json(d));
    }
    if (ds.empty()) throw ConfigError(where + " needs 'domain' or 'domains'");
    for (const auto& d : ds)
      if (!d.bounded()) throw ConfigError(where + " needs bounded domains");
    double h = mesh_for(sec, st);
    auto pairs = count(sec, "pairs", 100);
    for (const auto& d : ds)
      jobs.push_back([d, h, pairs, seed = st.seed] { return std::vector<Scenario>{run_diam_lemma(d, h, seed, pairs)}; });
  } else if (name == "run_three_point_necessity" || name == "run_three_point_sufficiency") {
    bool nec = name == "run_three_point_necessity";
    const char* ctrl = nec ? "eta" : "theta";
    only_keys(sec, where, {"map", "points", ctrl});
    MapSpec f = map_from_json(required(sec, "map", where));
    PointList xs = point_set(required(sec, "points", where));
    if (xs.size() < 4) throw ConfigError(where + " needs at least four points");
    std::optional<ControlFunction> g;
    if (sec.contains(ctrl)) g = control_from_json(sec.at(ctrl));
    ThreePointOptions o{scan_for(st)};
    jobs.push_back([f, xs, g, o, nec] {
      if (g) return std::vector<Scenario>{nec ? run_three_point_necessity(f, xs, *g, o)
                                              : run_three_point_sufficiency(f, xs, *g, std::nullopt, o)};
      auto [n, s] = run_three_point_pair(f, xs, o);
      return std::vector<Scenario>{nec ? n : s};
    });
  } else if (name == "run_boundary_quasisymmetry") {
    only_keys(sec, where, {"map", "domain", "h"});
    MapSpec f = map_from_json(required(sec, "map", where));
    DomainSpec d = domain_from_json(required(sec, "domain", where));
    if (!d.bounded()) throw ConfigError(where + " needs a bounded domain");
    double h = mesh_for(sec, st);
    ThreePointOptions o{scan_for(st)};
    jobs.push_back([f, d, h, o] { return std::vector<Scenario>{run_boundary_quasisymmetry(f, d, h, o)}; });
  } else if (name == "run_counterexamples") {
    only_keys(sec, where, {"h", "levels", "growth_factor", "inner_radius"});
    CounterexampleOptions o;
    o.mesh = st.mesh_forced ? st.mesh : positive(number(sec, "h", o.mesh), "h");
    o.levels = static_cast<int>(count(sec, "levels", static_cast<std::uint64_t>(o.levels)));
    if (o.levels < 1) throw ConfigError("levels must be >= 1");
    o.growth_factor = positive(number(sec, "growth_factor", o.growth_factor), "growth_factor");
    o.inner_radius = positive(number(sec, "inner_radius", o.inner_radius), "inner_radius");
    o.seed = st.seed;
    jobs.push_back([o] { return run_counterexamples(o); });
  } else {
    throw ConfigError("unknown scenario '" + name + "'");
  }
  return jobs;
}

std::string timestamp() {
  auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

int run_validated(const json& config, const Overrides& flags, std::ostream& log) {
  if (!config.is_object()) throw ConfigError("config must be a record");
  std::set<std::string> known{"seed", "out", "budget", "mesh", "jobs", "scenarios"};
  for (const auto& info : scenario_registry()) known.insert(info.name);
  for (auto it = config.begin(); it != config.end(); ++it)
    if (!known.count(it.key())) throw ConfigError("unknown key '" + it.key() + "'");

  Settings st;
  if (flags.seed) st.seed = *flags.seed;
  else if (config.contains("seed")) st.seed = count(config, "seed", 0);
  else throw ConfigError("'seed' is mandatory");
  if (flags.budget) st.budget = *flags.budget;
  else if (config.contains("budget")) st.budget = count(config, "budget", 0);
  st.mesh = positive(flags.mesh ? *flags.mesh : number(config, "mesh", st.mesh), "mesh");
  st.mesh_forced = flags.mesh.has_value();
  st.jobs = flags.jobs ? *flags.jobs : static_cast<unsigned>(count(config, "jobs", 1));
  if (st.jobs == 0) throw ConfigError("jobs must be >= 1");
  std::string out = flags.out ? *flags.out : (config.contains("out") ? config.at("out").get<std::string>() : "qhlab_out");

  std::vector<std::string> names;
  if (config.contains("scenarios")) {
    const auto& a = config.at("scenarios");
    if (!a.is_array()) throw ConfigError("'scenarios' must be an array of names");
    for (const auto& n : a) {
      if (!n.is_string()) throw ConfigError("'scenarios' must be an array of names");
      names.push_back(n.get<std::string>());
    }
  } else {
    for (const auto& info : scenario_registry())
      if (config.contains(info.name)) names.push_back(info.name);
  }
  if (names.empty()) throw ConfigError("no scenarios selected");

  std::vector<std::pair<std::string, Job>> jobs;
  for (const auto& n : names) {
    json sec = config.contains(n) ? config.at(n) : json::object();
    for (auto& j : jobs_for(n, sec, st)) jobs.emplace_back(n, std::move(j));
  }

  std::vector<std::vector<Scenario>> results(jobs.size());
  std::vector<std::string> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        results[i] = jobs[i].second();
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < std::min<std::size_t>(st.jobs, jobs.size()); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (std::size_t i = 0; i < jobs.size(); ++i)
    if (!errors[i].empty()) {
      log << "error in " << jobs[i].first << ": " << errors[i] << "\n";
      return 2;
    }

  std::filesystem::create_directories(out);
  const std::string stamp = timestamp();
  std::vector<Scenario> all;
  std::map<std::string, int> used;
  bool ok = true;
  for (std::size_t i = 0; i < jobs.size(); ++i)
    for (const auto& s : results[i]) {
      int k = used[s.name]++;
      std::string file = s.name + (k ? "_" + std::to_string(k) : "") + ".json";
      json doc{{"schema_version", kReportSchemaVersion},
               {"generated_at", stamp},
               {"seed", st.seed},
               {"section", jobs[i].first},
               {"scenario", to_json(s)}};
      std::ofstream(std::filesystem::path(out) / file) << doc.dump(2) << "\n";
      log << (s.pass ? "PASS " : "FAIL ") << s.name << (s.no_data ? " (no data)" : "") << " -> " << file << "\n";
      for (const auto& c : s.checks)
        if (!c.pass)
          log << "  failed: " << c.description << ": " << c.computed << " " << c.comparator << " " << c.bound << "\n";
      ok = ok && s.pass;
      all.push_back(s);
    }
  std::ofstream summary(std::filesystem::path(out) / "summary.csv");
  write_summary_csv(summary, all);
  return ok ? 0 : 1;
}

} // namespace

int run_config(const json& config, const Overrides& flags, std::ostream& log) {
  try {
    return run_validated(config, flags, log);
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return 2;
  }
}

int run_config_file(const std::string& path, const Overrides& flags, std::ostream& log) {
  try {
    return run_config(load_config_file(path), flags, log);
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    return 2;
  }
}

void list_scenarios(std::ostream& os) {
  std::size_t w = 0;
  for (const auto& i : scenario_registry()) w = std::max(w, i.name.size());
  for (const auto& i : scenario_registry()) os << std::left << std::setw(static_cast<int>(w + 2)) << i.name << i.anchor << "\n";
}

} // namespace qhlab::cli
