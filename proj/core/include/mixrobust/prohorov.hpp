#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "mixrobust/distribution.hpp"

namespace mixrobust {

/// A finite metric space given by its distance matrix. The constructor checks
/// symmetry, zero diagonal and the triangle inequality (tolerance 1e-12) and
/// throws InvariantViolation otherwise.
class MetricSpace {
 public:
  explicit MetricSpace(std::vector<std::vector<double>> distances);

  std::size_t size() const { return d_.size(); }
  double distance(std::size_t i, std::size_t j) const { return d_[i][j]; }

 private:
  std::vector<std::vector<double>> d_;
};

/// Finitely supported probability law, either on the real line or on the
/// points of a shared MetricSpace. Weights are nonnegative and sum to one
/// within 1e-12. Line laws keep their atoms sorted by location.
class FiniteLaw {
 public:
  static FiniteLaw on_line(std::vector<double> points, std::vector<double> weights);
  /// Uniform weights over the (possibly repeated) points.
  static FiniteLaw empirical_on_line(std::vector<double> points);
  /// Atoms of a discrete Distribution.
  static FiniteLaw from_distribution(const Distribution& law);
  static FiniteLaw on_space(std::shared_ptr<const MetricSpace> space, std::vector<std::size_t> points,
                            std::vector<double> weights);

  std::size_t size() const { return weights_.size(); }
  double weight(std::size_t i) const { return weights_[i]; }
  std::span<const double> weights() const { return weights_; }
  bool is_on_line() const { return space_ == nullptr; }
  /// Line laws only.
  double location(std::size_t i) const { return locations_[i]; }
  std::span<const double> locations() const { return locations_; }
  const MetricSpace* space() const { return space_.get(); }
  std::size_t point(std::size_t i) const { return points_[i]; }

  /// Distance between atom i of this law and atom j of `other`. Throws
  /// InvariantViolation when the laws live in different spaces.
  double distance(std::size_t i, const FiniteLaw& other, std::size_t j) const;

 private:
  FiniteLaw() = default;

  std::vector<double> weights_;
  std::vector<double> locations_;
  std::shared_ptr<const MetricSpace> space_;
  std::vector<std::size_t> points_;
};

/// Joint law over (atoms of mu1) x (atoms of mu2).
struct Coupling {
  std::vector<std::vector<double>> joint;

  /// Row sums match mu1, column sums match mu2, entries nonnegative, all
  /// within `tol`.
  bool has_marginals(const FiniteLaw& mu1, const FiniteLaw& mu2, double tol = 1e-10) const;
  /// Mass on pairs at distance <= delta.
  double mass_within(const FiniteLaw& mu1, const FiniteLaw& mu2, double delta) const;
};

enum class FlowMethod {
  automatic,    // greedy sweep for line laws, Dinic otherwise
  line_greedy,  // line laws only
  dinic,
};

/// Slack added to eps in feasibility decisions: capacities are rounded to
/// multiples of 1e-12 and max flow is 1-Lipschitz in each capacity, so the
/// computed flow is within 0.5e-12 (m + n) of the exact one.
double strassen_tolerance(const FiniteLaw& mu1, const FiniteLaw& mu2);

/// max_A (mu1[A] - mu2[A^delta]) over subsets A, computed as 1 - (max flow)
/// on the bipartite graph joining atoms at distance <= delta.
double strassen_deficit(const FiniteLaw& mu1, const FiniteLaw& mu2, double delta,
                        FlowMethod method = FlowMethod::automatic);

/// A coupling with mass >= 1 - eps on {d <= delta}, or nullopt when none
/// exists (deficit > eps + strassen_tolerance). Throws ParameterError for
/// negative delta or eps.
std::optional<Coupling> strassen_feasible(const FiniteLaw& mu1, const FiniteLaw& mu2, double delta, double eps,
                                          FlowMethod method = FlowMethod::automatic);

/// inf{eps : mu1[A] <= mu2[A^eps] + eps for all A}, by 60 bisection steps on
/// [0, 1 + max distance]; returns the final midpoint.
double prohorov_distance(const FiniteLaw& mu1, const FiniteLaw& mu2, FlowMethod method = FlowMethod::automatic);

}  // namespace mixrobust
