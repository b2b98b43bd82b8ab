#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "detail/format.hpp"
#include "mixrobust/errors.hpp"
#include "mixrobust/lab.hpp"

namespace mixrobust::lab {

namespace {

LinearProcessSpec process_from_flags(const std::string& process, const std::vector<double>& phi,
                                     const std::vector<double>& theta, const std::string& noise) {
  if (!process.empty()) return parse_process(process);
  const Distribution z = noise.empty() ? Distribution::gaussian(0.0, 1.0) : parse_distribution(noise);
  try {
    return LinearProcessSpec::make(CoefficientGenerator::arma({phi, theta}), z);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

int run_config(const std::string& config, const std::string& out, std::string manifest, std::ostream& err) {
  const ExperimentConfig cfg = load_config(config);
  const RunResult result = run_experiment(cfg);
  result.table.write_csv(out);
  if (manifest.empty()) manifest = out + ".manifest.json";
  std::ofstream m(manifest, std::ios::binary);
  if (!m) throw ConfigError("cannot write '" + manifest + "'");
  m << manifest_json(cfg, result);
  for (const auto& v : result.violations) err << "violation: " << v << "\n";
  return result.violations.empty() ? 0 : 2;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Mixing-process robustness lab", "mixrobust"};
  app.require_subcommand(1);

  std::string kind, mu, nu;
  auto* metric = app.add_subcommand("metric", "Distance between two laws given as JSON");
  metric->add_option("--kind", kind, "levy | kolmogorov-phi:<gauge> | psi-vague:<gauge> | psi-levy:<gauge>")->required();
  metric->add_option("--mu", mu, "First law (JSON)")->required();
  metric->add_option("--nu", nu, "Second law (JSON)")->required();

  std::string process, noise;
  std::vector<double> phi, theta;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  auto* simulate = app.add_subcommand("simulate", "Emit a simulated path as CSV t,x");
  simulate->add_option("--process", process, "Process spec (JSON)");
  simulate->add_option("--phi", phi, "AR coefficients")->delimiter(',');
  simulate->add_option("--theta", theta, "MA coefficients")->delimiter(',');
  simulate->add_option("--noise", noise, "Noise law (JSON), default N(0,1)");
  simulate->add_option("--n", n, "Path length")->required()->check(CLI::PositiveNumber);
  simulate->add_option("--seed", seed, "Seed");

  bool profile = false;
  auto* bound = app.add_subcommand("mixing-bound", "Mixing coefficient bound alpha(n) of a linear process");
  bound->add_option("--process", process, "Process spec (JSON)");
  bound->add_option("--phi", phi, "AR coefficients")->delimiter(',');
  bound->add_option("--theta", theta, "MA coefficients")->delimiter(',');
  bound->add_option("--noise", noise, "Noise law (JSON), default N(0,1)");
  bound->add_option("--n", n, "Lag")->required();
  bound->add_flag("--profile", profile, "Print n,alpha for every lag 0..n");

  std::string config, out, manifest;
  std::vector<CLI::App*> experiments;
  for (const char* name : {"ugc", "robustness", "rio-check", "lln-check", "bracket-check"}) {
    auto* sub = app.add_subcommand(name, std::string("Run a ") + name + " experiment from a config file");
    sub->add_option("--config", config, "Experiment config (JSON)")->required();
    sub->add_option("--out", out, "Result CSV path")->required();
    sub->add_option("--manifest", manifest, "Manifest path, default <out>.manifest.json");
    experiments.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 1;
  }

  try {
    if (metric->parsed()) {
      const Metric d = Metric::parse(kind);
      std::cout << detail::format_double(d(parse_distribution(mu), parse_distribution(nu))) << "\n";
      return 0;
    }
    if (simulate->parsed()) {
      const auto spec = process_from_flags(process, phi, theta, noise);
      const auto path = simulate_linear(spec, n, seed);
      std::string text = "t,x\n";
      for (std::size_t t = 0; t < path.size(); ++t) text += std::to_string(t + 1) + "," + detail::format_double(path[t]) + "\n";
      std::cout << text;
      return 0;
    }
    if (bound->parsed()) {
      const auto spec = process_from_flags(process, phi, theta, noise);
      if (profile) {
        const MixingProfile alpha(spec);
        std::cout << "n,alpha\n";
        for (std::size_t k = 0; k <= n; ++k) std::cout << k << "," << detail::format_double(alpha(k)) << "\n";
      } else {
        std::cout << detail::format_double(mixing_bound(spec, n)) << "\n";
      }
      return 0;
    }
    for (auto* sub : experiments) {
      if (!sub->parsed()) continue;
      const ExperimentConfig cfg = load_config(config);
      if (to_string(cfg.kind) != sub->get_name())
        throw ConfigError("config describes a '" + to_string(cfg.kind) + "' experiment, not '" + sub->get_name() + "'");
      return run_config(config, out, manifest, std::cerr);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace mixrobust::lab
