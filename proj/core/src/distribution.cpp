#include "mixrobust/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/special_functions/erf.hpp>

#include "detail/format.hpp"
#include "detail/quadrature.hpp"

namespace mixrobust {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double std_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double std_normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }

// Phi^{-1}(t) for t in (0, 1).
double std_normal_quantile(double t) { return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * t); }

}  // namespace

double ExtendedReal::to_double() const {
  switch (state_) {
    case State::pos_infinity: return kInf;
    case State::neg_infinity: return -kInf;
    default: return value_;
  }
}

std::ostream& operator<<(std::ostream& os, const ExtendedReal& x) {
  if (x.is_pos_infinity()) return os << "+inf";
  if (x.is_neg_infinity()) return os << "-inf";
  return os << x.value_;
}

// ---------------------------------------------------------------------------
// EmpiricalMeasure

EmpiricalMeasure::EmpiricalMeasure(std::vector<double> sample) : sample_(std::move(sample)) {
  if (sample_.empty()) throw DomainError("empirical measure: empty sample");
  for (std::size_t i = 0; i < sample_.size(); ++i)
    if (!std::isfinite(sample_[i])) throw DomainError("empirical measure: non-finite observation at index " + std::to_string(i));
  sorted_ = sample_;
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalMeasure::cdf(double y) const {
  auto k = std::upper_bound(sorted_.begin(), sorted_.end(), y) - sorted_.begin();
  return static_cast<double>(k) / static_cast<double>(sorted_.size());
}

double EmpiricalMeasure::order_statistic(std::size_t k) const {
  if (k < 1 || k > sorted_.size()) throw DomainError("order statistic index out of range");
  return sorted_[k - 1];
}

Distribution EmpiricalMeasure::law() const { return Distribution::empirical(sorted_); }

// ---------------------------------------------------------------------------
// Distribution construction

Distribution Distribution::point_mass(double location) {
  if (!std::isfinite(location)) throw InvariantViolation("point mass: non-finite location");
  auto d = std::make_shared<Discrete>();
  d->atoms = {{location, 1.0}};
  d->cumulative = {1.0};
  return Distribution(Kind::point_mass, std::shared_ptr<const Discrete>(std::move(d)));
}

Distribution Distribution::uniform(double lo, double hi) {
  if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi)) throw InvariantViolation("uniform: need finite lo < hi");
  return Distribution(Kind::uniform, Uniform{lo, hi});
}

Distribution Distribution::gaussian(double mean, double sd) {
  if (!(std::isfinite(mean) && std::isfinite(sd) && sd > 0.0)) throw InvariantViolation("gaussian: need finite mean and sd > 0");
  return Distribution(Kind::gaussian, Gaussian{mean, sd});
}

Distribution Distribution::finite_discrete(std::vector<Atom> atoms) {
  if (atoms.empty()) throw InvariantViolation("finite-discrete: no atoms");
  double total = 0.0;
  for (const Atom& a : atoms) {
    if (!std::isfinite(a.location)) throw InvariantViolation("finite-discrete: non-finite location");
    if (!(a.weight >= 0.0)) throw InvariantViolation("finite-discrete: negative weight");
    total += a.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) throw InvariantViolation("finite-discrete: weights sum to " + detail::format_double(total));
  std::stable_sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.location < b.location; });

  auto d = std::make_shared<Discrete>();
  for (const Atom& a : atoms) {
    if (a.weight == 0.0) continue;
    if (!d->atoms.empty() && d->atoms.back().location == a.location)
      d->atoms.back().weight += a.weight;
    else
      d->atoms.push_back(a);
  }
  double run = 0.0;
  for (const Atom& a : d->atoms) {
    run += a.weight;
    d->cumulative.push_back(run / total);
  }
  d->cumulative.back() = 1.0;
  return Distribution(Kind::finite_discrete, std::shared_ptr<const Discrete>(std::move(d)));
}

Distribution Distribution::empirical(std::span<const double> sample) {
  if (sample.empty()) throw DomainError("empirical law: empty sample");
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  auto d = std::make_shared<Discrete>();
  std::size_t i = 0;
  while (i < sorted.size()) {
    if (!std::isfinite(sorted[i])) throw DomainError("empirical law: non-finite observation");
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    d->atoms.push_back({sorted[i], static_cast<double>(j - i) / n});
    // k/n exactly at the k-th order statistic.
    d->cumulative.push_back(static_cast<double>(j) / n);
    i = j;
  }
  return Distribution(Kind::empirical, std::shared_ptr<const Discrete>(std::move(d)));
}

// ---------------------------------------------------------------------------
// Distribution queries

double Distribution::cdf(double y) const {
  if (is_discrete()) {
    const auto& d = discrete();
    auto it = std::upper_bound(d.atoms.begin(), d.atoms.end(), y, [](double v, const Atom& a) { return v < a.location; });
    auto k = it - d.atoms.begin();
    return k == 0 ? 0.0 : d.cumulative[k - 1];
  }
  if (const auto* u = std::get_if<Uniform>(&law_)) {
    if (y <= u->lo) return 0.0;
    if (y >= u->hi) return 1.0;
    return (y - u->lo) / (u->hi - u->lo);
  }
  const auto& g = std::get<Gaussian>(law_);
  return std_normal_cdf((y - g.mean) / g.sd);
}

double Distribution::cdf_left(double y) const {
  if (!is_discrete()) return cdf(y);
  const auto& d = discrete();
  auto it = std::lower_bound(d.atoms.begin(), d.atoms.end(), y, [](const Atom& a, double v) { return a.location < v; });
  auto k = it - d.atoms.begin();
  return k == 0 ? 0.0 : d.cumulative[k - 1];
}

double Distribution::sf(double y) const {
  if (is_discrete()) return 1.0 - cdf(y);
  if (const auto* u = std::get_if<Uniform>(&law_)) {
    if (y <= u->lo) return 1.0;
    if (y >= u->hi) return 0.0;
    return (u->hi - y) / (u->hi - u->lo);
  }
  const auto& g = std::get<Gaussian>(law_);
  return std_normal_cdf(-(y - g.mean) / g.sd);
}

double Distribution::sf_left(double y) const {
  if (!is_discrete()) return sf(y);
  return 1.0 - cdf_left(y);
}

double Distribution::pdf(double y) const {
  if (is_discrete()) return 0.0;
  if (const auto* u = std::get_if<Uniform>(&law_)) return (y >= u->lo && y <= u->hi) ? 1.0 / (u->hi - u->lo) : 0.0;
  const auto& g = std::get<Gaussian>(law_);
  return std_normal_pdf((y - g.mean) / g.sd) / g.sd;
}

ExtendedReal Distribution::quantile(double t) const {
  if (t <= 0.0) return ExtendedReal::neg_infinity();
  if (t > 1.0) return ExtendedReal::pos_infinity();
  if (is_discrete()) {
    const auto& d = discrete();
    auto it = std::lower_bound(d.cumulative.begin(), d.cumulative.end(), t);
    if (it == d.cumulative.end()) return ExtendedReal::pos_infinity();
    return d.atoms[it - d.cumulative.begin()].location;
  }
  if (const auto* u = std::get_if<Uniform>(&law_)) return u->lo + t * (u->hi - u->lo);
  if (t >= 1.0) return ExtendedReal::pos_infinity();
  const auto& g = std::get<Gaussian>(law_);
  return g.mean + g.sd * std_normal_quantile(t);
}

std::span<const Atom> Distribution::atoms() const {
  if (!is_discrete()) return {};
  return discrete().atoms;
}

std::span<const double> Distribution::cumulative() const {
  if (!is_discrete()) return {};
  return discrete().cumulative;
}

std::vector<double> Distribution::breakpoints() const {
  std::vector<double> out;
  if (is_discrete()) {
    for (const Atom& a : discrete().atoms) out.push_back(a.location);
  } else if (const auto* u = std::get_if<Uniform>(&law_)) {
    out = {u->lo, u->hi};
  }
  return out;
}

Interval Distribution::support() const {
  if (is_discrete()) return {discrete().atoms.front().location, discrete().atoms.back().location};
  if (const auto* u = std::get_if<Uniform>(&law_)) return {u->lo, u->hi};
  return Interval::all();
}

double Distribution::expect(const std::function<double(double)>& f, const Interval& region,
                            std::span<const double> knots) const {
  if (is_discrete()) {
    double s = 0.0;
    for (const Atom& a : discrete().atoms)
      if (region.contains(a.location)) s += a.weight * f(a.location);
    return s;
  }
  if (const auto* u = std::get_if<Uniform>(&law_)) {
    const double a = std::max(region.lo, u->lo);
    const double b = std::min(region.hi, u->hi);
    const double density = 1.0 / (u->hi - u->lo);
    return density * detail::integrate_piecewise(f, a, b, knots);
  }
  const auto& g = std::get<Gaussian>(law_);
  std::vector<double> zknots;
  for (double k : knots) zknots.push_back((k - g.mean) / g.sd);
  // Gaussian mass beyond |z| = 40 is below the double range.
  const double za = std::max((region.lo - g.mean) / g.sd, -40.0);
  const double zb = std::min((region.hi - g.mean) / g.sd, 40.0);
  zknots.push_back(0.0);
  auto integrand = [&](double z) { return f(g.mean + g.sd * z) * std_normal_pdf(z); };
  return detail::integrate_piecewise(integrand, za, zb, zknots);
}

double Distribution::mean() const {
  if (is_discrete()) {
    double s = 0.0;
    for (const Atom& a : discrete().atoms) s += a.weight * a.location;
    return s;
  }
  if (const auto* u = std::get_if<Uniform>(&law_)) return 0.5 * (u->lo + u->hi);
  return std::get<Gaussian>(law_).mean;
}

double Distribution::second_moment() const {
  if (is_discrete()) {
    double s = 0.0;
    for (const Atom& a : discrete().atoms) s += a.weight * a.location * a.location;
    return s;
  }
  if (const auto* u = std::get_if<Uniform>(&law_)) return (u->lo * u->lo + u->lo * u->hi + u->hi * u->hi) / 3.0;
  const auto& g = std::get<Gaussian>(law_);
  return g.mean * g.mean + g.sd * g.sd;
}

double Distribution::sample(Rng& rng) const {
  if (is_discrete()) {
    const auto& d = discrete();
    if (d.atoms.size() == 1) return d.atoms.front().location;
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double t = 1.0 - unif(rng);  // (0, 1]
    auto it = std::lower_bound(d.cumulative.begin(), d.cumulative.end(), t);
    if (it == d.cumulative.end()) --it;
    return d.atoms[it - d.cumulative.begin()].location;
  }
  if (const auto* u = std::get_if<Uniform>(&law_)) {
    std::uniform_real_distribution<double> unif(u->lo, u->hi);
    return unif(rng);
  }
  const auto& g = std::get<Gaussian>(law_);
  std::normal_distribution<double> normal(g.mean, g.sd);
  return normal(rng);
}

void Distribution::sample(Rng& rng, std::span<double> out) const {
  if (const auto* g = std::get_if<Gaussian>(&law_)) {
    std::normal_distribution<double> normal(g->mean, g->sd);
    for (double& x : out) x = normal(rng);
    return;
  }
  for (double& x : out) x = sample(rng);
}

double Distribution::gaussian_mean() const { return std::get<Gaussian>(law_).mean; }
double Distribution::gaussian_sd() const { return std::get<Gaussian>(law_).sd; }
double Distribution::uniform_lo() const { return std::get<Uniform>(law_).lo; }
double Distribution::uniform_hi() const { return std::get<Uniform>(law_).hi; }

std::string Distribution::describe() const {
  using detail::format_double;
  std::ostringstream os;
  switch (kind_) {
    case Kind::point_mass:
      os << R"({"kind":"point-mass","location":)" << format_double(discrete().atoms[0].location) << "}";
      break;
    case Kind::uniform:
      os << R"({"kind":"uniform","lo":)" << format_double(uniform_lo()) << R"(,"hi":)" << format_double(uniform_hi()) << "}";
      break;
    case Kind::gaussian:
      os << R"({"kind":"gaussian","mean":)" << format_double(gaussian_mean()) << R"(,"sd":)" << format_double(gaussian_sd()) << "}";
      break;
    case Kind::finite_discrete:
    case Kind::empirical: {
      os << (kind_ == Kind::empirical ? R"({"kind":"empirical","atoms":[)" : R"({"kind":"finite-discrete","atoms":[)");
      bool first = true;
      for (const Atom& a : discrete().atoms) {
        os << (first ? "" : ",") << "[" << format_double(a.location) << "," << format_double(a.weight) << "]";
        first = false;
      }
      os << "]}";
      break;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Generalized inverses

ExtendedReal left_inverse(const Distribution& law, double t) { return law.quantile(t); }

ExtendedReal left_inverse(const std::function<double(double)>& cdf, double t, double lo, double hi, double tol) {
  if (cdf(hi) < t) return ExtendedReal::pos_infinity();
  if (cdf(lo) >= t) return lo;
  // Invariant: F(lo) < t <= F(hi).
  while (hi - lo > tol) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (cdf(mid) >= t)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

ExtendedReal right_inverse(const std::function<double(double)>& survival, double t, double hint, double tol) {
  if (!(survival(0.0) > t)) return 0.0;
  double lo = 0.0;
  double hi = hint > 0.0 ? hint : 1.0;
  while (survival(hi) > t) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) return ExtendedReal::pos_infinity();
  }
  // Invariant: H(lo) > t >= H(hi).
  while (hi - lo > tol) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (survival(mid) > t)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

ExtendedReal abs_upper_quantile(const Distribution& law, double t) {
  if (law.is_discrete()) {
    if (t >= 1.0 || 1.0 - law.cdf(0.0) + law.cdf_left(0.0) <= t) return 0.0;
    // Atoms of |X| in increasing order with their masses.
    std::vector<Atom> folded;
    for (const Atom& a : law.atoms()) folded.push_back({std::abs(a.location), a.weight});
    std::sort(folded.begin(), folded.end(), [](const Atom& a, const Atom& b) { return a.location < b.location; });
    double above = 1.0;  // P(|X| > y) for y just below the current atom
    for (std::size_t i = 0; i < folded.size();) {
      const double v = folded[i].location;
      while (i < folded.size() && folded[i].location == v) above -= folded[i++].weight;
      if (above <= t + 1e-15) return v;
    }
    return folded.back().location;
  }
  if (t <= 0.0) return ExtendedReal::pos_infinity();
  if (t >= 1.0) return 0.0;
  if (law.kind() == Distribution::Kind::gaussian && law.gaussian_mean() == 0.0)
    return law.gaussian_sd() * std::numbers::sqrt2 * boost::math::erfc_inv(t);
  auto survival = [&law](double y) { return 1.0 - (law.cdf(y) - law.cdf_left(-y)); };
  return right_inverse(survival, t);
}

std::vector<double> quantile_transform(const EmpiricalMeasure& sample, const Distribution& marginal, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> u;
  u.reserve(sample.size());
  const auto xs = sample.sample();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    const double upper = marginal.cdf(x);
    const double lower = marginal.cdf_left(x);
    if (upper > lower) {
      const double v = 1.0 - unif(rng);  // (0, 1]
      u.push_back(std::min(upper, lower + v * (upper - lower)));
    } else if (marginal.pdf(x) > 0.0 && upper > 0.0 && upper < 1.0) {
      u.push_back(upper);
    } else {
      throw DomainError("quantile transform: sample point at index " + std::to_string(i) + " (" +
                        detail::format_double(x) + ") carries no mass under the marginal");
    }
  }
  return u;
}

}  // namespace mixrobust
