#include "mixrobust/processes.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "detail/format.hpp"
#include "mixrobust/errors.hpp"
#include "mixrobust/random.hpp"

namespace mixrobust {

namespace {

constexpr double root_tol = 1e-9;
constexpr std::size_t max_degree = 8;

std::string fmt_root(std::complex<double> z) {
  std::ostringstream os;
  os.precision(6);
  os << z.real();
  if (z.imag() != 0.0) os << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  os << " (|z| = " << std::abs(z) << ")";
  return os.str();
}

std::vector<double> phi_poly(const ArmaParams& p) {
  std::vector<double> c{1.0};
  for (double v : p.phi) c.push_back(-v);
  return c;
}

std::vector<double> theta_poly(const ArmaParams& p) {
  std::vector<double> c{1.0};
  for (double v : p.theta) c.push_back(v);
  return c;
}

// c_0..c_S of num(z) / den(z), den[0] = 1.
std::vector<double> rational_series(const std::vector<double>& num, const std::vector<double>& den, std::size_t S) {
  std::vector<double> c(S + 1, 0.0);
  for (std::size_t s = 0; s <= S; ++s) {
    double v = s < num.size() ? num[s] : 0.0;
    for (std::size_t j = 1; j < den.size() && j <= s; ++j) v -= den[j] * c[s - j];
    c[s] = v;
  }
  return c;
}

}  // namespace

std::vector<std::complex<double>> polynomial_roots(const std::vector<double>& coefficients) {
  std::size_t d = coefficients.size();
  while (d > 0 && coefficients[d - 1] == 0.0) --d;
  if (d <= 1) return {};
  const std::size_t deg = d - 1;
  if (deg > max_degree) throw ParameterError("polynomial_roots: degree " + std::to_string(deg) + " exceeds 8");
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
  const double lead = coefficients[deg];
  for (std::size_t i = 0; i < deg; ++i) comp(0, i) = -coefficients[deg - 1 - i] / lead;
  for (std::size_t i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(comp, false);
  std::vector<std::complex<double>> roots;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) roots.push_back(solver.eigenvalues()[i]);
  std::sort(roots.begin(), roots.end(), [](auto a, auto b) { return std::abs(a) < std::abs(b); });
  return roots;
}

RootReport causality_invertibility_check(const ArmaParams& params) {
  if (params.phi.size() > max_degree || params.theta.size() > max_degree)
    return {false, {}, {}, "orders above 8 are not supported"};
  for (double v : params.phi)
    if (!std::isfinite(v)) return {false, {}, {}, "non-finite phi coefficient"};
  for (double v : params.theta)
    if (!std::isfinite(v)) return {false, {}, {}, "non-finite theta coefficient"};

  RootReport r;
  r.phi_roots = polynomial_roots(phi_poly(params));
  r.theta_roots = polynomial_roots(theta_poly(params));
  for (auto z : r.phi_roots)
    if (std::abs(z) <= 1.0 + root_tol) {
      r.reason = "not causal: phi root " + fmt_root(z) + " in the closed unit disk";
      return r;
    }
  for (auto z : r.theta_roots)
    if (std::abs(z) <= 1.0 + root_tol) {
      r.reason = "not invertible: theta root " + fmt_root(z) + " in the closed unit disk";
      return r;
    }
  for (auto z : r.phi_roots)
    for (auto w : r.theta_roots)
      if (std::abs(z - w) <= root_tol * std::max(1.0, std::abs(z))) {
        r.reason = "phi and theta share the zero " + fmt_root(z);
        return r;
      }
  r.pass = true;
  return r;
}

std::vector<double> arma_ma_coeffs(const ArmaParams& params, std::size_t s_max) {
  auto rep = causality_invertibility_check(params);
  if (!rep.pass) throw ParameterError("arma_ma_coeffs: " + rep.reason);
  return rational_series(theta_poly(params), phi_poly(params), s_max);
}

std::vector<double> invert_power_series(const std::vector<double>& a, std::size_t s_max) {
  if (a.empty() || a[0] == 0.0) throw ParameterError("invert_power_series: a_0 = 0, division by zero");
  std::vector<double> b(s_max + 1, 0.0);
  b[0] = 1.0 / a[0];
  for (std::size_t s = 1; s <= s_max; ++s) {
    double acc = 0.0;
    for (std::size_t j = 1; j <= s && j < a.size(); ++j) acc += a[j] * b[s - j];
    b[s] = -acc / a[0];
  }
  return b;
}

// ---------------------------------------------------------------------------

namespace {

// Power series of num/den summed exactly up to a cutoff S; beyond it
// |c_s| <= C r^s with r slightly above the reciprocal smallest root modulus
// of den, and C fitted on the second half of the computed terms.
struct Series {
  std::vector<double> c;
  double r = 0.0;
  double C = 0.0;
  bool finite = true;

  Series(const std::vector<double>& num, const std::vector<double>& den) {
    auto roots = polynomial_roots(den);
    if (roots.empty()) {
      c = rational_series(num, den, num.size());
      return;
    }
    finite = false;
    const double rho = 1.0 / std::abs(roots.front());
    r = rho + 0.25 * (1.0 - rho);
    std::size_t S = 64 + static_cast<std::size_t>(std::ceil(std::log(1e-17) / std::log(r)));
    S = std::min<std::size_t>(S, 200000);
    c = rational_series(num, den, S);
    for (std::size_t s = S / 2; s <= S; ++s) C = std::max(C, std::abs(c[s]) / std::pow(r, static_cast<double>(s)));
  }

  std::size_t cutoff() const { return c.size() - 1; }

  double abs_tail(std::size_t n) const {
    const std::size_t S = cutoff();
    if (n > S) return finite ? 0.0 : C * std::pow(r, static_cast<double>(n)) / (1.0 - r);
    double acc = 0.0;
    for (std::size_t s = n; s <= S; ++s) acc += std::abs(c[s]);
    if (!finite) acc += C * std::pow(r, static_cast<double>(S + 1)) / (1.0 - r);
    return acc;
  }

  double weighted_tail(std::size_t n) const {
    const std::size_t S = cutoff();
    if (n > S) return finite ? 0.0 : C * std::pow(r, static_cast<double>(n)) / ((1.0 - r) * (1.0 - r));
    double acc = 0.0;
    for (std::size_t s = n; s <= S; ++s) acc += static_cast<double>(s - n + 1) * std::abs(c[s]);
    if (!finite) {
      const double m = static_cast<double>(S + 2 - n);
      acc += C * std::pow(r, static_cast<double>(S + 1)) * (m / (1.0 - r) + r / ((1.0 - r) * (1.0 - r)));
    }
    return acc;
  }
};

bool is_arma11(const ArmaParams& p) { return p.phi.size() == 1 && p.theta.size() <= 1; }

}  // namespace

CoefficientGenerator CoefficientGenerator::iid() { return CoefficientGenerator(); }

CoefficientGenerator CoefficientGenerator::arma(ArmaParams params) {
  auto rep = causality_invertibility_check(params);
  if (!rep.pass) throw ParameterError("arma: " + rep.reason);
  CoefficientGenerator g;
  g.kind_ = Kind::arma;
  g.arma_ = std::move(params);
  return g;
}

CoefficientGenerator CoefficientGenerator::geometric(double a, double q) {
  if (!std::isfinite(a) || !std::isfinite(q)) throw ParameterError("geometric: non-finite parameter");
  if (std::abs(q) >= 1.0 / (1.0 + root_tol))
    throw ParameterError("geometric: |q| = " + detail::format_double(std::abs(q)) + " is not below 1");
  if (std::abs((1.0 - a) * q) >= 1.0 / (1.0 + root_tol))
    throw ParameterError("geometric: a(z) has the zero " + fmt_root(1.0 / ((1.0 - a) * q)) +
                         " in the closed unit disk");
  CoefficientGenerator g;
  g.kind_ = Kind::geometric;
  g.ga_ = a;
  g.gq_ = q;
  return g;
}

CoefficientGenerator CoefficientGenerator::explicit_list(std::vector<double> a) {
  if (a.empty() || a[0] != 1.0) throw ParameterError("explicit coefficient list must start with a_0 = 1");
  ArmaParams p;
  p.theta.assign(a.begin() + 1, a.end());
  while (!p.theta.empty() && p.theta.back() == 0.0) p.theta.pop_back();
  auto rep = causality_invertibility_check(p);
  if (!rep.pass) throw ParameterError("explicit coefficient list: " + rep.reason);
  CoefficientGenerator g;
  g.kind_ = Kind::explicit_list;
  g.arma_ = std::move(p);
  return g;
}

std::string CoefficientGenerator::describe() const {
  auto list = [](const std::vector<double>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + detail::format_double(v[i]);
    return s + "]";
  };
  switch (kind_) {
    case Kind::iid:
      return "iid";
    case Kind::arma:
      return "arma(phi=" + list(arma_.phi) + ",theta=" + list(arma_.theta) + ")";
    case Kind::geometric:
      return "geometric(a=" + detail::format_double(ga_) + ",q=" + detail::format_double(gq_) + ")";
    case Kind::explicit_list: {
      std::vector<double> a{1.0};
      a.insert(a.end(), arma_.theta.begin(), arma_.theta.end());
      return "explicit(" + list(a) + ")";
    }
  }
  return "";
}

std::vector<double> CoefficientGenerator::coefficients(std::size_t s_max) const {
  switch (kind_) {
    case Kind::iid: {
      std::vector<double> a(s_max + 1, 0.0);
      a[0] = 1.0;
      return a;
    }
    case Kind::geometric: {
      std::vector<double> a(s_max + 1, 0.0);
      a[0] = 1.0;
      double qs = 1.0;
      for (std::size_t s = 1; s <= s_max; ++s) a[s] = ga_ * (qs *= gq_);
      return a;
    }
    case Kind::arma:
    case Kind::explicit_list:
      return rational_series(theta_poly(arma_), phi_poly(arma_), s_max);
  }
  return {};
}

double CoefficientGenerator::tail_double_sum(std::size_t n) const {
  const double nd = static_cast<double>(n);
  switch (kind_) {
    case Kind::iid:
      return n == 0 ? 1.0 : 0.0;
    case Kind::geometric: {
      const double a = std::abs(ga_), q = std::abs(gq_);
      if (n == 0) return 1.0 + a * (1.0 / ((1.0 - q) * (1.0 - q)) - 1.0);
      return a * std::pow(q, nd) / ((1.0 - q) * (1.0 - q));
    }
    default:
      break;
  }
  if (is_arma11(arma_)) {
    const double phi = arma_.phi[0], theta = arma_.theta.empty() ? 0.0 : arma_.theta[0];
    const double k = std::abs(phi + theta), r = std::abs(phi);
    if (n == 0) return 1.0 + k * (1.0 / ((1.0 - r) * (1.0 - r)) + 1.0 / (1.0 - r));
    return k / ((1.0 - r) * (1.0 - r)) * std::pow(r, nd - 1.0);
  }
  return Series(theta_poly(arma_), phi_poly(arma_)).weighted_tail(n);
}

double CoefficientGenerator::abs_tail(std::size_t n) const {
  const double nd = static_cast<double>(n);
  switch (kind_) {
    case Kind::iid:
      return n == 0 ? 1.0 : 0.0;
    case Kind::geometric: {
      const double a = std::abs(ga_), q = std::abs(gq_);
      return (n == 0 ? 1.0 : 0.0) + a * std::pow(q, std::max(nd, 1.0)) / (1.0 - q);
    }
    default:
      break;
  }
  if (is_arma11(arma_)) {
    const double phi = arma_.phi[0], theta = arma_.theta.empty() ? 0.0 : arma_.theta[0];
    const double k = std::abs(phi + theta), r = std::abs(phi);
    return (n == 0 ? 1.0 : 0.0) + k * std::pow(r, std::max(nd, 1.0) - 1.0) / (1.0 - r);
  }
  return Series(theta_poly(arma_), phi_poly(arma_)).abs_tail(n);
}

double CoefficientGenerator::abs_sum_b() const {
  switch (kind_) {
    case Kind::iid:
      return 1.0;
    case Kind::geometric:
      return 1.0 + std::abs(ga_ * gq_) / (1.0 - std::abs((1.0 - ga_) * gq_));
    default:
      break;
  }
  if (is_arma11(arma_)) {
    const double phi = arma_.phi[0], theta = arma_.theta.empty() ? 0.0 : arma_.theta[0];
    return 1.0 + std::abs(phi + theta) / (1.0 - std::abs(theta));
  }
  return Series(phi_poly(arma_), theta_poly(arma_)).abs_tail(0);
}

double CoefficientGenerator::square_sum() const {
  switch (kind_) {
    case Kind::iid:
      return 1.0;
    case Kind::geometric:
      return 1.0 + ga_ * ga_ * gq_ * gq_ / (1.0 - gq_ * gq_);
    default:
      break;
  }
  if (is_arma11(arma_)) {
    const double phi = arma_.phi[0], theta = arma_.theta.empty() ? 0.0 : arma_.theta[0];
    return 1.0 + (phi + theta) * (phi + theta) / (1.0 - phi * phi);
  }
  Series s(theta_poly(arma_), phi_poly(arma_));
  double acc = 0.0;
  for (double v : s.c) acc += v * v;
  return acc;
}

double CoefficientGenerator::plain_sum() const {
  switch (kind_) {
    case Kind::iid:
      return 1.0;
    case Kind::geometric:
      return 1.0 + ga_ * gq_ / (1.0 - gq_);
    default:
      break;
  }
  // a(1) = theta(1) / phi(1)
  double num = 1.0, den = 1.0;
  for (double v : arma_.theta) num += v;
  for (double v : arma_.phi) den -= v;
  return num / den;
}

// ---------------------------------------------------------------------------

LinearProcessSpec LinearProcessSpec::make(CoefficientGenerator a, Distribution noise) {
  LinearProcessSpec spec;
  spec.a = std::move(a);
  switch (noise.kind()) {
    case Distribution::Kind::gaussian: {
      const double m = noise.gaussian_mean(), sd = noise.gaussian_sd();
      spec.M = std::sqrt(2.0 / std::numbers::pi) / sd;
      // E|Z| for Z ~ N(m, sd^2)
      spec.L = sd * std::sqrt(2.0 / std::numbers::pi) * std::exp(-0.5 * m * m / (sd * sd)) +
               m * std::erf(m / (sd * std::numbers::sqrt2));
      break;
    }
    case Distribution::Kind::uniform: {
      const double lo = noise.uniform_lo(), hi = noise.uniform_hi();
      spec.M = 2.0 / (hi - lo);
      if (lo >= 0.0)
        spec.L = 0.5 * (lo + hi);
      else if (hi <= 0.0)
        spec.L = -0.5 * (lo + hi);
      else
        spec.L = 0.5 * (lo * lo + hi * hi) / (hi - lo);
      break;
    }
    default: {
      double acc = 0.0;
      for (const Atom& at : noise.atoms()) acc += at.weight * std::abs(at.location);
      spec.L = acc;
      break;
    }
  }
  spec.noise = std::move(noise);
  return spec;
}

MixingProfile::MixingProfile(const LinearProcessSpec& spec) {
  if (!spec.M) throw ParameterError("mixing bound needs a noise density (constant M); " + spec.noise.describe() +
                                    " has none");
  generator_ = spec.a;
  constant_ = 2.0 * *spec.M * spec.L * spec.a.abs_sum_b();
}

MixingProfile MixingProfile::from_values(std::vector<double> values) {
  if (values.empty()) throw ParameterError("mixing profile: empty value list");
  for (double v : values)
    if (!(v >= 0.0 && v <= 0.25)) throw ParameterError("mixing profile: value outside [0, 1/4]");
  MixingProfile p;
  p.values_ = std::move(values);
  return p;
}

double MixingProfile::operator()(std::size_t n) const {
  if (!generator_) return values_[std::min(n, values_.size() - 1)];
  if (n == 0) return 0.25;
  return std::min(0.25, constant_ * generator_->tail_double_sum(n));
}

double mixing_bound(const LinearProcessSpec& spec, std::size_t n) { return MixingProfile(spec)(n); }

std::size_t default_s_max(const LinearProcessSpec& spec, double budget) {
  constexpr std::size_t cap = 10000;
  auto ok = [&](std::size_t s) { return spec.L * spec.a.abs_tail(s + 1) <= budget; };
  if (!ok(cap))
    throw ParameterError("truncation at s_max = 10000 exceeds the budget " + detail::format_double(budget));
  std::size_t lo = 0, hi = cap;  // ok(hi) holds
  if (ok(0)) return 0;
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

std::vector<double> simulate_linear(const LinearProcessSpec& spec, std::size_t n, std::uint64_t seed,
                                    std::optional<std::size_t> s_max, double budget) {
  std::size_t S;
  if (s_max) {
    S = *s_max;
    const double err = spec.L * spec.a.abs_tail(S + 1);
    if (err > budget)
      throw ParameterError("simulate_linear: truncation error " + detail::format_double(err) + " exceeds budget " +
                           detail::format_double(budget) + "; use a larger s_max");
  } else {
    S = default_s_max(spec, budget);
  }
  const auto a = spec.a.coefficients(S);
  Rng rng(seed);
  // z[k] holds Z_{1 - S + k}
  std::vector<double> z(S + n);
  for (double& v : z) v = spec.noise.sample(rng);
  std::vector<double> x(n);
  for (std::size_t t = 0; t < n; ++t) {
    // X_{t+1} = sum_s a_s Z_{t+1-s} = sum_s a_s z[t + S - s]
    const double* zt = z.data() + t + S;
    double acc = 0.0;
    for (std::size_t s = 0; s <= S; ++s) acc += a[s] * *(zt - s);
    x[t] = acc;
  }
  return x;
}

std::optional<Distribution> stationary_marginal(const LinearProcessSpec& spec) {
  if (spec.a.kind() == CoefficientGenerator::Kind::iid) return spec.noise;
  switch (spec.noise.kind()) {
    case Distribution::Kind::gaussian:
      return Distribution::gaussian(spec.noise.gaussian_mean() * spec.a.plain_sum(),
                                    spec.noise.gaussian_sd() * std::sqrt(spec.a.square_sum()));
    case Distribution::Kind::point_mass:
      return Distribution::point_mass(spec.noise.atoms()[0].location * spec.a.plain_sum());
    default:
      return std::nullopt;
  }
}

}  // namespace mixrobust
