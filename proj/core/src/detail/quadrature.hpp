#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace mixrobust::detail {

inline constexpr double kQuadTolerance = 1e-10;

/// Adaptive Gauss-Kronrod over [a, b]; either end may be infinite.
inline double integrate(const std::function<double(double)>& f, double a, double b) {
  if (!(a < b)) return 0.0;
  double error = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, kQuadTolerance, &error);
}

/// Same, split at the knots that fall strictly inside (a, b).
inline double integrate_piecewise(const std::function<double(double)>& f, double a, double b,
                                  std::span<const double> knots) {
  std::vector<double> cuts{a};
  for (double k : knots)
    if (k > a && k < b) cuts.push_back(k);
  cuts.push_back(b);
  std::sort(cuts.begin() + 1, cuts.end() - 1);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) total += integrate(f, cuts[i], cuts[i + 1]);
  return total;
}

}  // namespace mixrobust::detail
