#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "mixrobust/errors.hpp"
#include "mixrobust/lab.hpp"
#include "mixrobust/metrics.hpp"

namespace mixrobust::lab {

using nlohmann::json;

namespace {

json parse_json(std::string_view text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(what + ": invalid JSON (" + e.what() + ")");
  }
}

void allow_keys(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  std::set<std::string> ok(keys.begin(), keys.end());
  for (const auto& [k, v] : j.items())
    if (!ok.count(k)) throw ConfigError(where + ": unknown key '" + k + "'");
}

template <class T>
T get(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ConfigError(where + ": missing key '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + ": bad value for '" + key + "'");
  }
}

template <class T>
T get_or(const json& j, const char* key, T fallback, const std::string& where) {
  return j.contains(key) ? get<T>(j, key, where) : fallback;
}

Distribution distribution_from(const json& j) {
  const std::string where = "distribution";
  const auto kind = get<std::string>(j, "kind", where);
  try {
    if (kind == "gaussian") {
      allow_keys(j, {"kind", "mean", "sd"}, where);
      return Distribution::gaussian(get_or<double>(j, "mean", 0.0, where), get_or<double>(j, "sd", 1.0, where));
    }
    if (kind == "uniform") {
      allow_keys(j, {"kind", "lo", "hi"}, where);
      return Distribution::uniform(get<double>(j, "lo", where), get<double>(j, "hi", where));
    }
    if (kind == "point-mass") {
      allow_keys(j, {"kind", "location"}, where);
      return Distribution::point_mass(get<double>(j, "location", where));
    }
    if (kind == "discrete") {
      allow_keys(j, {"kind", "atoms"}, where);
      std::vector<Atom> atoms;
      for (const auto& p : get<std::vector<std::vector<double>>>(j, "atoms", where)) {
        if (p.size() != 2) throw ConfigError("distribution: atoms are [location, weight] pairs");
        atoms.push_back({p[0], p[1]});
      }
      return Distribution::finite_discrete(std::move(atoms));
    }
    if (kind == "empirical") {
      allow_keys(j, {"kind", "sample"}, where);
      const auto xs = get<std::vector<double>>(j, "sample", where);
      return Distribution::empirical(xs);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string("distribution: ") + e.what());
  }
  throw ConfigError("distribution: unknown kind '" + kind + "'");
}

LinearProcessSpec process_from(const json& j) {
  const std::string where = "process";
  const auto kind = get<std::string>(j, "kind", where);
  Distribution noise = j.contains("noise") ? distribution_from(j.at("noise")) : Distribution::gaussian(0.0, 1.0);
  try {
    if (kind == "arma") {
      allow_keys(j, {"kind", "phi", "theta", "noise", "id"}, where);
      ArmaParams p{get_or<std::vector<double>>(j, "phi", {}, where), get_or<std::vector<double>>(j, "theta", {}, where)};
      return LinearProcessSpec::make(CoefficientGenerator::arma(p), noise);
    }
    if (kind == "iid") {
      allow_keys(j, {"kind", "noise", "id"}, where);
      return LinearProcessSpec::make(CoefficientGenerator::iid(), noise);
    }
    if (kind == "geometric") {
      allow_keys(j, {"kind", "a", "q", "noise", "id"}, where);
      return LinearProcessSpec::make(CoefficientGenerator::geometric(get<double>(j, "a", where), get<double>(j, "q", where)),
                                     noise);
    }
    if (kind == "explicit") {
      allow_keys(j, {"kind", "a", "noise", "id"}, where);
      return LinearProcessSpec::make(CoefficientGenerator::explicit_list(get<std::vector<double>>(j, "a", where)), noise);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string("process: ") + e.what());
  }
  throw ConfigError("process: unknown kind '" + kind + "'");
}

double halton(std::size_t i, std::size_t base) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= static_cast<double>(base);
    r += f * static_cast<double>(i % base);
    i /= base;
  }
  return r;
}

std::string member_id(std::size_t i) {
  std::string s = std::to_string(i);
  return "m" + std::string(s.size() < 2 ? 2 - s.size() : 0, '0') + s;
}

}  // namespace

Distribution parse_distribution(std::string_view text) { return distribution_from(parse_json(text, "distribution")); }

LinearProcessSpec parse_process(std::string_view text) { return process_from(parse_json(text, "process")); }

std::vector<ClassMember> arma_class(double c, std::size_t k, const Distribution& noise) {
  if (!(c > 0.0 && c < 1.0)) throw ConfigError("arma-class: c must lie in (0, 1)");
  if (k == 0) throw ConfigError("arma-class: empty class");
  std::vector<ClassMember> out;
  for (std::size_t i = 1; out.size() < k; ++i) {
    const double phi = c * (2.0 * halton(i, 2) - 1.0);
    const double theta = c * (2.0 * halton(i, 3) - 1.0);
    if (std::abs(phi + theta) < 0.01) continue;
    out.push_back({member_id(out.size()), LinearProcessSpec::make(CoefficientGenerator::arma({{phi}, {theta}}), noise)});
  }
  return out;
}

// ---------------------------------------------------------------------------

Metric Metric::parse(std::string_view d) {
  const std::string desc(d);
  auto gauge_after = [&](std::string_view prefix, GaugeFunction::Role role) {
    return GaugeFunction::parse(d.substr(prefix.size()), role);
  };
  try {
    if (d == "levy") return Metric(Kind::levy, std::nullopt, desc);
    if (d.starts_with("kolmogorov-phi:"))
      return Metric(Kind::kolmogorov_phi, gauge_after("kolmogorov-phi:", GaugeFunction::Role::u_shaped_phi), desc);
    if (d.starts_with("psi-vague:"))
      return Metric(Kind::psi_vague, gauge_after("psi-vague:", GaugeFunction::Role::psi_gauge), desc);
    if (d.starts_with("psi-levy:"))
      return Metric(Kind::psi_levy, gauge_after("psi-levy:", GaugeFunction::Role::psi_gauge), desc);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError("metric '" + desc + "': " + e.what());
  }
  throw ConfigError("unknown metric '" + desc + "'");
}

double Metric::operator()(const Distribution& mu, const Distribution& nu) const {
  switch (kind_) {
    case Kind::kolmogorov_phi:
      return kolmogorov_phi(mu, nu, *gauge_);
    case Kind::levy:
      return levy(mu, nu);
    case Kind::psi_vague: {
      static const DenseFamily family = DenseFamily::standard();
      return psi_vague(mu, nu, *gauge_, family);
    }
    case Kind::psi_levy:
      return psi_levy(mu, nu, *gauge_);
  }
  return 0.0;
}

std::string Metric::family_descriptor() const {
  return kind_ == Kind::psi_vague ? DenseFamily::standard().descriptor() : descriptor_;
}

std::string to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::ugc: return "ugc";
    case ExperimentKind::robustness: return "robustness";
    case ExperimentKind::rio_check: return "rio-check";
    case ExperimentKind::lln_check: return "lln-check";
    case ExperimentKind::bracket_check: return "bracket-check";
  }
  return "";
}

ExperimentConfig parse_config(std::string_view text) {
  const json j = parse_json(text, "config");
  const std::string where = "config";
  allow_keys(j,
             {"experiment", "class", "laws", "metric", "functional", "n_grid", "delta", "eps", "replicates",
              "master_seed", "timestamp", "reference_size", "x_grid", "psi", "K_grid", "batches", "max_atoms", "phi",
              "eps_grid", "marginals", "validation_points", "samples", "assert"},
             where);
  ExperimentConfig cfg;
  cfg.canonical = j.dump();

  const auto kind = get<std::string>(j, "experiment", where);
  if (kind == "ugc") cfg.kind = ExperimentKind::ugc;
  else if (kind == "robustness") cfg.kind = ExperimentKind::robustness;
  else if (kind == "rio-check") cfg.kind = ExperimentKind::rio_check;
  else if (kind == "lln-check") cfg.kind = ExperimentKind::lln_check;
  else if (kind == "bracket-check") cfg.kind = ExperimentKind::bracket_check;
  else throw ConfigError("config: unknown experiment '" + kind + "'");

  cfg.metric = get_or<std::string>(j, "metric", cfg.metric, where);
  Metric::parse(cfg.metric);
  cfg.functional = get_or<std::string>(j, "functional", cfg.functional, where);
  Functional::parse(cfg.functional);
  cfg.n_grid = get_or<std::vector<std::size_t>>(j, "n_grid", {}, where);
  cfg.delta = get_or<double>(j, "delta", cfg.delta, where);
  cfg.eps = get_or<double>(j, "eps", cfg.eps, where);
  cfg.replicates = get_or<std::size_t>(j, "replicates", cfg.replicates, where);
  cfg.master_seed = get_or<std::uint64_t>(j, "master_seed", cfg.master_seed, where);
  cfg.timestamp = get_or<std::string>(j, "timestamp", cfg.timestamp, where);
  cfg.reference_size = get_or<std::size_t>(j, "reference_size", cfg.reference_size, where);
  cfg.x_grid = get_or<std::vector<double>>(j, "x_grid", cfg.x_grid, where);
  cfg.psi = get_or<std::string>(j, "psi", cfg.psi, where);
  GaugeFunction::parse(cfg.psi, GaugeFunction::Role::psi_gauge);
  cfg.K_grid = get_or<std::vector<double>>(j, "K_grid", cfg.K_grid, where);
  cfg.batches = get_or<std::size_t>(j, "batches", cfg.batches, where);
  cfg.max_atoms = get_or<std::size_t>(j, "max_atoms", cfg.max_atoms, where);
  cfg.phi = get_or<std::string>(j, "phi", cfg.phi, where);
  GaugeFunction::parse(cfg.phi, GaugeFunction::Role::u_shaped_phi);
  cfg.eps_grid = get_or<std::vector<double>>(j, "eps_grid", cfg.eps_grid, where);
  cfg.marginals = get_or<std::size_t>(j, "marginals", cfg.marginals, where);
  cfg.validation_points = get_or<std::size_t>(j, "validation_points", cfg.validation_points, where);
  cfg.samples = get_or<std::size_t>(j, "samples", cfg.samples, where);
  if (j.contains("assert")) {
    const json& a = j.at("assert");
    allow_keys(a, {"monotone_se", "terminal_max", "floor_margin"}, "assert");
    if (a.contains("monotone_se")) cfg.assert_monotone_se = get<double>(a, "monotone_se", "assert");
    if (a.contains("terminal_max")) cfg.assert_terminal_max = get<double>(a, "terminal_max", "assert");
    if (a.contains("floor_margin")) cfg.assert_floor_margin = get<double>(a, "floor_margin", "assert");
  }

  if (j.contains("class")) {
    const json& c = j.at("class");
    if (c.is_array()) {
      for (std::size_t i = 0; i < c.size(); ++i)
        cfg.members.push_back({c[i].contains("id") ? get<std::string>(c[i], "id", "process") : member_id(i),
                               process_from(c[i])});
      cfg.class_descriptor = "list(" + std::to_string(c.size()) + ")";
    } else {
      allow_keys(c, {"kind", "c", "size", "noise"}, "class");
      if (get<std::string>(c, "kind", "class") != "arma-class") throw ConfigError("class: unknown kind");
      const double cc = get<double>(c, "c", "class");
      const auto k = get<std::size_t>(c, "size", "class");
      const Distribution noise = c.contains("noise") ? distribution_from(c.at("noise")) : Distribution::gaussian(0, 1);
      try {
        cfg.members = arma_class(cc, k, noise);
      } catch (const ConfigError&) {
        throw;
      } catch (const Error& e) {
        throw ConfigError(std::string("class: ") + e.what());
      }
      std::ostringstream os;
      os << "arma-class(" << cc << "," << k << ")";
      cfg.class_descriptor = os.str();
    }
  }
  if (j.contains("laws")) {
    const json& l = j.at("laws");
    allow_keys(l, {"P", "Q"}, "laws");
    cfg.members = {{"P", process_from(get<json>(l, "P", "laws"))}, {"Q", process_from(get<json>(l, "Q", "laws"))}};
    cfg.class_descriptor = "laws(P,Q)";
  }

  if (cfg.replicates < 1) throw ConfigError("config: replicates must be at least 1");
  if (cfg.n_grid.empty()) throw ConfigError("config: n_grid is empty");
  for (std::size_t i = 0; i < cfg.n_grid.size(); ++i) {
    if (cfg.n_grid[i] == 0) throw ConfigError("config: n_grid entries must be positive");
    if (i && cfg.n_grid[i] <= cfg.n_grid[i - 1]) throw ConfigError("config: n_grid must be strictly increasing");
  }
  if (!(cfg.delta > 0.0)) throw ConfigError("config: delta must be positive");
  if (!(cfg.eps > 0.0)) throw ConfigError("config: eps must be positive");
  if (cfg.kind != ExperimentKind::bracket_check && cfg.members.empty()) throw ConfigError("config: class is empty");
  if (cfg.kind == ExperimentKind::robustness && cfg.members.size() != 2)
    throw ConfigError("config: robustness needs \"laws\": {\"P\": .., \"Q\": ..}");
  if (cfg.kind == ExperimentKind::rio_check && cfg.x_grid.empty()) throw ConfigError("config: x_grid is empty");
  for (double x : cfg.x_grid)
    if (!(x > 0.0)) throw ConfigError("config: x_grid entries must be positive");
  for (double K : cfg.K_grid)
    if (!(K > 0.0)) throw ConfigError("config: K_grid entries must be positive");
  for (double e : cfg.eps_grid)
    if (!(e > 0.0)) throw ConfigError("config: eps_grid entries must be positive");
  if (cfg.batches < 2) throw ConfigError("config: batches must be at least 2");
  if (cfg.max_atoms < 1 || cfg.reference_size < 1) throw ConfigError("config: sizes must be positive");
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace mixrobust::lab
