#include "mixrobust/functionals.hpp"

#include <charconv>
#include <cmath>

#include "detail/format.hpp"
#include "mixrobust/errors.hpp"

namespace mixrobust {

PairedSample::PairedSample(std::vector<double> x, std::vector<double> y) : first(std::move(x)), second(std::move(y)) {
  if (first.empty()) throw DomainError("paired sample is empty");
  if (first.size() != second.size())
    throw DomainError("paired sample: " + std::to_string(first.size()) + " vs " + std::to_string(second.size()) +
                      " values");
}

Functional Functional::lower_quantile(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("quantile level must lie in (0, 1)");
  return Functional(Kind::lower_quantile, alpha);
}

Functional Functional::parse(std::string_view d) {
  if (d == "mean") return mean();
  if (d == "second-moment") return second_moment();
  if (d == "variance") return variance();
  if (d == "covariance") return covariance();
  if (d.starts_with("quantile:")) {
    const auto rest = d.substr(9);
    double a = 0.0;
    auto [p, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), a);
    if (ec != std::errc() || p != rest.data() + rest.size() || !(a > 0.0 && a < 1.0))
      throw ConfigError("bad quantile level in functional '" + std::string(d) + "'");
    return lower_quantile(a);
  }
  throw ConfigError("unknown functional '" + std::string(d) + "'");
}

std::string Functional::descriptor() const {
  switch (kind_) {
    case Kind::mean: return "mean";
    case Kind::second_moment: return "second-moment";
    case Kind::variance: return "variance";
    case Kind::lower_quantile: return "quantile:" + detail::format_double(alpha_);
    case Kind::covariance: return "covariance";
  }
  return "";
}

double Functional::evaluate(const Distribution& mu) const {
  double v = 0.0;
  switch (kind_) {
    case Kind::mean: v = mu.mean(); break;
    case Kind::second_moment: v = mu.second_moment(); break;
    case Kind::variance:
      if (mu.is_discrete()) {
        // centred sum, no cancellation
        const double m = mu.mean();
        for (const Atom& a : mu.atoms()) v += a.weight * (a.location - m) * (a.location - m);
      } else {
        v = std::max(0.0, mu.second_moment() - mu.mean() * mu.mean());
      }
      break;
    case Kind::lower_quantile: {
      auto q = left_inverse(mu, alpha_);
      if (!q.is_finite()) throw DomainError("quantile is not finite");
      return q.value();
    }
    case Kind::covariance:
      throw DomainError("covariance needs a paired sample");
  }
  if (!std::isfinite(v)) throw NotInClassError(descriptor() + ": moment is not finite");
  return v;
}

double Functional::evaluate(const EmpiricalMeasure& mu) const { return evaluate(mu.law()); }

double Functional::evaluate(const PairedSample& pairs) const {
  if (kind_ != Kind::covariance) throw DomainError(descriptor() + " is a functional on the real line, not on pairs");
  const double n = static_cast<double>(pairs.size());
  double m1 = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    m1 += pairs.first[i];
    m2 += pairs.second[i];
  }
  m1 /= n;
  m2 /= n;
  double c = 0.0;
  for (std::size_t i = 0; i < pairs.size(); ++i) c += (pairs.first[i] - m1) * (pairs.second[i] - m2);
  return c / n;
}

double Functional::plugin(std::span<const double> sample) const {
  if (sample.empty()) throw DomainError("plug-in estimator of an empty sample");
  return evaluate(EmpiricalMeasure(std::vector<double>(sample.begin(), sample.end())));
}

}  // namespace mixrobust
