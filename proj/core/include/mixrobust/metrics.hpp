#pragma once

#include <span>
#include <string>
#include <vector>

#include "mixrobust/distribution.hpp"
#include "mixrobust/gauge.hpp"

namespace mixrobust {

/// Weighted Kolmogorov distance sup_y |F_mu(y) - F_nu(y)| phi(y), the sup
/// taken over `range` (default: the whole line).
///
/// Exact (breakpoints and their left limits) when both laws are discrete, or
/// when phi is constant and the CDF difference is monotone or linear between
/// breakpoints. Otherwise a breakpoint + quantile + tail grid is refined by
/// golden-section search around its local maxima.
///
/// Throws NotInClassError when either law has d(., delta_0) divergent under
/// phi (running tail sup above 1e12).
double kolmogorov_phi(const Distribution& mu, const Distribution& nu, const GaugeFunction& phi,
                      const Interval& range = Interval::all());

/// Levy distance: inf{eps > 0 : F_mu(x-eps) - eps <= F_nu(x) <= F_mu(x+eps) + eps for all x}.
/// Exact up to 1e-15 when at least one law is discrete; grid-checked bisection
/// otherwise.
double levy(const Distribution& mu, const Distribution& nu);

/// sum_{k <= k_max} 2^-k min(1, |int f_k dmu - int f_k dnu|).
double vague_distance(const Distribution& mu, const Distribution& nu, const DenseFamily& family);

/// int psi dmu; throws NotInClassError when infinite.
double psi_moment(const Distribution& mu, const GaugeFunction& psi);

double psi_vague(const Distribution& mu, const Distribution& nu, const GaugeFunction& psi, const DenseFamily& family);
double psi_levy(const Distribution& mu, const Distribution& nu, const GaugeFunction& psi);

/// int g 1{g >= K} dmu (or 1{g > K} when strict).
double tail_moment(const Distribution& mu, const GaugeFunction& g, double K, bool strict = false);

/// Same, restricted to the nonpositive half-line.
double tail_moment_negative(const Distribution& mu, const GaugeFunction& g, double K, bool strict = false);

struct IntegrabilityTable {
  std::vector<double> K;
  /// sup over the (finite-moment) marginals, one per K.
  std::vector<double> sup;
  /// per_marginal[m][k]; +inf for a marginal whose moment is infinite.
  std::vector<std::vector<double>> per_marginal;
  /// Empty for good marginals, else the reason.
  std::vector<std::string> failures;
};

/// Tail moments sup_m int g 1{g >= K} dmu_m on a grid of K.
IntegrabilityTable uniform_phi_integrability(std::span<const Distribution> marginals, const GaugeFunction& gauge,
                                             std::span<const double> K_grid);

}  // namespace mixrobust
