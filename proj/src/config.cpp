#include "conduct/config.hpp"

#include <fstream>
#include <set>


#include "conduct/error.hpp"

namespace conduct {

using nlohmann::json;

namespace {

std::string_view sides_name(TestSides s) { return s == TestSides::Two ? "two" : "one"; }
std::string_view source_name(DemandSource s) { return s == DemandSource::Estimated ? "estimated" : "true"; }

void check_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
  if (!j.is_object()) throw Error(Errc::InvalidConfig, where + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) throw Error(Errc::InvalidConfig, where + "." + key + ": unknown field");
  }
}

template <typename T>
void read(const json& j, const std::string& where, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(Errc::InvalidConfig, where + "." + key + ": " + e.what());
  }
}

}  // namespace

bool RunConfig::operator==(const RunConfig& o) const {
  return params == o.params && T == o.T && seed == o.seed && out == o.out && regime == o.regime &&
         grid.T_values == o.grid.T_values && grid.theta_values == o.grid.theta_values &&
         grid.alpha2_values == o.grid.alpha2_values && grid.regimes == o.grid.regimes &&
         grid.replications == o.grid.replications && grid.base_seed == o.grid.base_seed &&
         grid.params == o.grid.params && grid.options == o.grid.options && analytic_V == o.analytic_V &&
         analytic_T_values == o.analytic_T_values && analytic_theta_values == o.analytic_theta_values;
}

json to_json(const RunConfig& cfg) {
  const auto& p = cfg.params;
  const auto& g = cfg.grid;
  json regimes = json::array();
  for (auto k : g.regimes) regimes.push_back(std::string(regime_name(k)));
  return json{
      {"params",
       {{"alpha0", p.alpha0}, {"alpha1", p.alpha1}, {"alpha2", p.alpha2}, {"alpha3", p.alpha3},
        {"gamma0", p.gamma0}, {"gamma1", p.gamma1}, {"gamma2", p.gamma2}, {"gamma3", p.gamma3},
        {"theta", p.theta}, {"sigma", p.sigma}}},
      {"T", cfg.T},
      {"seed", cfg.seed},
      {"out", cfg.out},
      {"regime", std::string(regime_name(cfg.regime))},
      {"grid",
       {{"T_values", g.T_values}, {"theta_values", g.theta_values}, {"alpha2_values", g.alpha2_values},
        {"regimes", regimes}, {"replications", g.replications}, {"base_seed", g.base_seed},
        {"significance", g.options.significance}}},
      {"demand_source", std::string(source_name(g.options.demand_source))},
      {"sides", std::string(sides_name(g.options.sides))},
      {"ratio_estimator", g.options.ratio_estimator},
      {"optimal_interaction_column", g.options.optimal_interaction_column},
      {"polynomial_supply_features", g.options.polynomial_supply_features},
      {"threads", g.options.threads},
      {"analytic", {{"V", cfg.analytic_V}, {"T_values", cfg.analytic_T_values},
                    {"theta_values", cfg.analytic_theta_values}}},
  };
}

RunConfig config_from_json(const json& j) {
  RunConfig cfg;
  check_keys(j, "config",
             {"params", "T", "seed", "out", "regime", "grid", "demand_source", "sides", "ratio_estimator",
              "optimal_interaction_column", "polynomial_supply_features", "threads", "analytic",
              "command", "version", "overrides"});

  if (j.contains("params")) {
    const json& jp = j.at("params");
    check_keys(jp, "params", {"alpha0", "alpha1", "alpha2", "alpha3", "gamma0", "gamma1", "gamma2",
                              "gamma3", "theta", "sigma"});
    auto& p = cfg.params;
    read(jp, "params", "alpha0", p.alpha0);
    read(jp, "params", "alpha1", p.alpha1);
    read(jp, "params", "alpha2", p.alpha2);
    read(jp, "params", "alpha3", p.alpha3);
    read(jp, "params", "gamma0", p.gamma0);
    read(jp, "params", "gamma1", p.gamma1);
    read(jp, "params", "gamma2", p.gamma2);
    read(jp, "params", "gamma3", p.gamma3);
    read(jp, "params", "theta", p.theta);
    read(jp, "params", "sigma", p.sigma);
  }
  read(j, "config", "T", cfg.T);
  read(j, "config", "seed", cfg.seed);
  read(j, "config", "out", cfg.out);
  if (j.contains("regime")) {
    std::string name;
    read(j, "config", "regime", name);
    cfg.regime = parse_regime(name);
  }

  auto& g = cfg.grid;
  if (j.contains("grid")) {
    const json& jg = j.at("grid");
    check_keys(jg, "grid", {"T_values", "theta_values", "alpha2_values", "regimes", "replications",
                            "base_seed", "significance"});
    read(jg, "grid", "T_values", g.T_values);
    read(jg, "grid", "theta_values", g.theta_values);
    read(jg, "grid", "alpha2_values", g.alpha2_values);
    if (jg.contains("regimes")) {
      std::vector<std::string> names;
      read(jg, "grid", "regimes", names);
      g.regimes.clear();
      for (const auto& n : names) g.regimes.push_back(parse_regime(n));
    }
    read(jg, "grid", "replications", g.replications);
    read(jg, "grid", "base_seed", g.base_seed);
    read(jg, "grid", "significance", g.options.significance);
  }
  if (j.contains("demand_source")) {
    std::string s;
    read(j, "config", "demand_source", s);
    if (s == "estimated") g.options.demand_source = DemandSource::Estimated;
    else if (s == "true") g.options.demand_source = DemandSource::True;
    else throw Error(Errc::InvalidConfig, "config.demand_source: expected estimated or true");
  }
  if (j.contains("sides")) {
    std::string s;
    read(j, "config", "sides", s);
    if (s == "two") g.options.sides = TestSides::Two;
    else if (s == "one") g.options.sides = TestSides::One;
    else throw Error(Errc::InvalidConfig, "config.sides: expected two or one");
  }
  read(j, "config", "ratio_estimator", g.options.ratio_estimator);
  read(j, "config", "optimal_interaction_column", g.options.optimal_interaction_column);
  read(j, "config", "polynomial_supply_features", g.options.polynomial_supply_features);
  read(j, "config", "threads", g.options.threads);

  if (j.contains("analytic")) {
    const json& ja = j.at("analytic");
    check_keys(ja, "analytic", {"V", "T_values", "theta_values"});
    read(ja, "analytic", "V", cfg.analytic_V);
    read(ja, "analytic", "T_values", cfg.analytic_T_values);
    read(ja, "analytic", "theta_values", cfg.analytic_theta_values);
  }

  g.params = cfg.params;
  if (cfg.T < 1) throw Error(Errc::InvalidConfig, "config.T: must be at least 1");
  if (g.options.threads < 0) throw Error(Errc::InvalidConfig, "config.threads: must be nonnegative");
  try {
    cfg.params.validate();
  } catch (const Error& e) {
    throw Error(Errc::InvalidConfig, std::string("config.params: ") + e.what());
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(Errc::InvalidConfig, path.string() + ": " + e.what());
  }
  return config_from_json(j);
}

void write_manifest(const std::filesystem::path& path, const RunConfig& cfg, const std::string& command,
                    const std::vector<std::string>& overrides) {
  json j = to_json(cfg);
  j["command"] = command;
  j["version"] = kVersion;
  j["overrides"] = overrides;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IoError, "cannot open " + path.string() + " for writing");
  out << j.dump(2) << '\n';
  if (!out) throw Error(Errc::IoError, "write failed for " + path.string());
}

}  // namespace conduct
