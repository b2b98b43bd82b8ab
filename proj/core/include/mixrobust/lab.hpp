#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mixrobust/distribution.hpp"
#include "mixrobust/functionals.hpp"
#include "mixrobust/gauge.hpp"
#include "mixrobust/processes.hpp"

namespace mixrobust::lab {

inline constexpr const char* kCsvSchema = "mixrobust-results/1";

// ---------------------------------------------------------------------------
// Config

/// {"kind":"gaussian","mean":0,"sd":1}, {"kind":"uniform","lo":0,"hi":1},
/// {"kind":"point-mass","location":0}, {"kind":"discrete","atoms":[[x,w],...]},
/// {"kind":"empirical","sample":[...]}. Throws ConfigError.
Distribution parse_distribution(std::string_view json_text);

/// {"kind":"arma","phi":[..],"theta":[..],"noise":{..}}, {"kind":"iid",...},
/// {"kind":"geometric","a":..,"q":..,...}, {"kind":"explicit","a":[1,..],...}.
/// Noise defaults to N(0,1). Throws ConfigError.
LinearProcessSpec parse_process(std::string_view json_text);

struct ClassMember {
  std::string id;
  LinearProcessSpec spec;
};

/// k points (phi, theta) from the Halton sequence in bases 2 and 3 mapped to
/// (-c, c)^2, skipping |phi + theta| < 0.01.
std::vector<ClassMember> arma_class(double c, std::size_t k, const Distribution& noise);

/// A distance between two laws on the line, named by a descriptor:
/// kolmogorov-phi:<gauge>, levy, psi-vague:<gauge>, psi-levy:<gauge>.
class Metric {
 public:
  static Metric parse(std::string_view descriptor);  // ConfigError
  double operator()(const Distribution& mu, const Distribution& nu) const;
  const std::string& descriptor() const { return descriptor_; }
  /// The dense family for psi-vague, else the metric descriptor.
  std::string family_descriptor() const;

 private:
  enum class Kind { kolmogorov_phi, levy, psi_vague, psi_levy };
  Metric(Kind k, std::optional<GaugeFunction> g, std::string d)
      : kind_(k), gauge_(std::move(g)), descriptor_(std::move(d)) {}

  Kind kind_;
  std::optional<GaugeFunction> gauge_;
  std::string descriptor_;
};

enum class ExperimentKind { ugc, robustness, rio_check, lln_check, bracket_check };

std::string to_string(ExperimentKind k);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::ugc;
  std::string class_descriptor;
  std::vector<ClassMember> members;
  std::string metric = "kolmogorov-phi:one";
  std::string functional = "mean";
  std::vector<std::size_t> n_grid;
  double delta = 0.1;
  double eps = 0.05;
  std::size_t replicates = 1;
  std::uint64_t master_seed = 0;
  /// Logical timestamp written to every row.
  std::string timestamp = "1970-01-01T00:00:00Z";
  /// Size of a simulated reference law when the marginal has no closed form.
  std::size_t reference_size = 1000000;

  // rio-check
  std::vector<double> x_grid;
  // lln-check
  std::string psi = "square";
  std::vector<double> K_grid{1, 2, 4, 8, 16, 32, 64, 128};
  // robustness: members[0] is P, members[1] is Q
  std::size_t batches = 10;
  std::size_t max_atoms = 2000;
  // bracket-check
  std::string phi = "power:2";
  std::vector<double> eps_grid{0.1, 0.05};
  std::size_t marginals = 20;
  std::size_t validation_points = 100;
  std::size_t samples = 50;

  // optional assertions (exit code 2 when violated)
  std::optional<double> assert_monotone_se;
  std::optional<double> assert_terminal_max;
  std::optional<double> assert_floor_margin;

  /// Canonical JSON of the parsed config (sorted keys); hashed into the manifest.
  std::string canonical;
};

/// Throws ConfigError with the offending key.
ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::string& path);

// ---------------------------------------------------------------------------
// Results

struct ResultRow {
  std::string experiment;
  std::string member;
  std::size_t n = 0;
  std::string statistic;
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t seed = 0;
  std::string family;
  std::string timestamp;
};

struct ResultTable {
  std::vector<ResultRow> rows;

  /// Fixed header; floats with 17 significant digits.
  std::string to_csv() const;
  void write_csv(const std::string& path) const;
  /// Rows matching member and statistic, in table order.
  std::vector<const ResultRow*> select(std::string_view member, std::string_view statistic) const;
};

struct RunResult {
  ResultTable table;
  /// Failed assertions or bound violations; empty on success.
  std::vector<std::string> violations;
  /// Per-member notes (reference law accuracy, structured failures).
  std::vector<std::string> notes;
  std::string family;
};

/// JSON manifest: schema, tool version, config hash, seed, family, notes and
/// the wall-clock time of the run.
std::string manifest_json(const ExperimentConfig& cfg, const RunResult& result);

// ---------------------------------------------------------------------------
// Execution

/// Worker count from MIXROBUST_THREADS, else the hardware concurrency.
std::size_t thread_count();

/// Runs fn(0..count-1) on the worker pool. Exceptions are rethrown after all
/// workers stop; the one from the smallest index wins.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

RunResult run_ugc(const ExperimentConfig& cfg);
RunResult run_robustness(const ExperimentConfig& cfg);
RunResult run_rio_check(const ExperimentConfig& cfg);
RunResult run_lln_check(const ExperimentConfig& cfg);
RunResult run_bracket_check(const ExperimentConfig& cfg);
RunResult run_experiment(const ExperimentConfig& cfg);

/// Sorted values thinned to at most max_atoms by taking the middle of equal
/// strata; identity when already small enough.
std::vector<double> stratified_thin(std::vector<double> values, std::size_t max_atoms);

/// Command-line entry point: 0 success, 1 usage or config error, 2 failed
/// experiment assertion.
int run_cli(int argc, const char* const* argv);

}  // namespace mixrobust::lab
