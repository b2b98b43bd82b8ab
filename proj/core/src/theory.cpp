#include "mixrobust/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "detail/format.hpp"
#include "mixrobust/errors.hpp"
#include "mixrobust/metrics.hpp"

namespace mixrobust {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double interval_mass(const Distribution& law, const Interval& I) {
  const double upper = I.hi == kInf ? 1.0 : (I.hi_open ? law.cdf_left(I.hi) : law.cdf(I.hi));
  const double lower = I.lo == -kInf ? 0.0 : (I.lo_open ? law.cdf(I.lo) : law.cdf_left(I.lo));
  return std::max(0.0, upper - lower);
}

double finite_or_throw(double v, const std::string& what) {
  if (!std::isfinite(v)) throw DomainError(what + " is not finite");
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// MagnitudeLaw

MagnitudeLaw::MagnitudeLaw(Distribution law) : law_(std::move(law)) {}

MagnitudeLaw::MagnitudeLaw(Distribution law, GaugeFunction psi) : law_(std::move(law)), psi_(std::move(psi)) {}

std::string MagnitudeLaw::describe() const {
  return psi_ ? psi_->descriptor() + "(" + law_.describe() + ")" : law_.describe();
}

double MagnitudeLaw::survival(double y) const {
  if (y < 0.0) return 1.0;
  if (!psi_) return std::min(1.0, law_.sf(y) + law_.cdf_left(-y));
  const auto region = psi_->tail_region(y, true);
  double m = 0.0;
  if (region.left) m += interval_mass(law_, *region.left);
  if (region.right) m += interval_mass(law_, *region.right);
  return std::min(1.0, m);
}

double MagnitudeLaw::upper_quantile(double t) const {
  if (t >= 1.0) return 0.0;
  if (law_.is_discrete()) {
    std::vector<Atom> v;
    for (const Atom& a : law_.atoms()) v.push_back({std::abs(transform(a.location)), a.weight});
    std::sort(v.begin(), v.end(), [](const Atom& a, const Atom& b) { return a.location > b.location; });
    double mass = 0.0;
    for (std::size_t i = 0; i < v.size();) {
      const double y = v[i].location;
      while (i < v.size() && v[i].location == y) mass += v[i++].weight;
      // P(|xi| > y') = mass for y' just below y
      if (mass > t) return y;
    }
    return 0.0;
  }
  if (!psi_) return abs_upper_quantile(law_, t).to_double();
  return right_inverse([this](double y) { return survival(y); }, t).to_double();
}

double MagnitudeLaw::square_beyond(double q) const {
  if (law_.is_discrete()) {
    double acc = 0.0;
    for (const Atom& a : law_.atoms()) {
      const double v = std::abs(transform(a.location));
      if (v > q) acc += a.weight * v * v;
    }
    return acc;
  }
  if (!psi_) {
    auto sq = [](double x) { return x * x; };
    const double knots[] = {-q, 0.0, q};
    return law_.expect(sq, Interval{q, kInf, true, false}, knots) +
           law_.expect(sq, Interval{-kInf, -q, false, true}, knots);
  }
  const GaugeFunction& g = *psi_;
  auto sq = [&g](double x) { return g(x) * g(x); };
  const auto region = g.tail_region(q, true);
  double acc = 0.0;
  for (const auto& part : {region.left, region.right}) {
    if (!part) continue;
    const double knots[] = {part->lo, 0.0, part->hi};
    acc += law_.expect(sq, *part, knots);
  }
  return acc;
}

double MagnitudeLaw::square_quantile_integral(double a) const {
  if (a <= 0.0) return 0.0;
  a = std::min(a, 1.0);
  const double q = upper_quantile(a);
  return square_beyond(q) + q * q * std::max(0.0, a - survival(q));
}

double MagnitudeLaw::tail_moment(double K, bool strict) const {
  if (law_.is_discrete()) {
    double acc = 0.0;
    for (const Atom& a : law_.atoms()) {
      const double v = std::abs(transform(a.location));
      if (strict ? v > K : v >= K) acc += a.weight * v;
    }
    return acc;
  }
  if (psi_) return mixrobust::tail_moment(law_, *psi_, K, strict);
  auto ab = [](double x) { return std::abs(x); };
  if (K <= 0.0) {
    const double knots[] = {0.0};
    return law_.expect(ab, Interval::all(), knots);
  }
  const double knots[] = {-K, 0.0, K};
  return law_.expect(ab, Interval{K, kInf, strict, false}, knots) +
         law_.expect(ab, Interval{-kInf, -K, false, strict}, knots);
}

double MagnitudeLaw::mean() const { return psi_ ? psi_moment(law_, *psi_) : law_.mean(); }

double MagnitudeLaw::second_moment() const {
  if (!psi_) return law_.second_moment();
  const GaugeFunction& g = *psi_;
  const double knots[] = {0.0};
  return law_.expect([&g](double x) { return g(x) * g(x); }, Interval::all(), knots);
}

// ---------------------------------------------------------------------------
// Bounds

double rio_bound(const MagnitudeLaw& xi, const MixingProfile& alpha, std::size_t n, double x) {
  if (!(x > 0.0)) throw DomainError("rio_bound: x must be positive");
  finite_or_throw(xi.second_moment(), "rio_bound: second moment of " + xi.describe());
  double sum = 0.0, last_alpha = -1.0, last_val = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double a = alpha(j);
    if (a != last_alpha) {
      last_alpha = a;
      last_val = xi.square_quantile_integral(2.0 * a);
    }
    sum += last_val;
  }
  const double bound = 16.0 / (x * x) * static_cast<double>(n) * sum;
  return std::min(1.0, bound);
}

LlnTerms lln_tail_terms(const MagnitudeLaw& xi, const MixingProfile& alpha, std::size_t n, double delta, double K) {
  if (!(delta > 0.0)) throw DomainError("lln_tail_bound: delta must be positive");
  if (!(K > 0.0)) throw DomainError("lln_tail_bound: K must be positive");
  if (n == 0) throw DomainError("lln_tail_bound: n must be positive");
  double asum = 0.0;
  for (std::size_t j = 0; j < n; ++j) asum += alpha(j);
  LlnTerms t;
  t.s1 = 1152.0 * K * K / (delta * delta) * asum / static_cast<double>(n);
  t.s2 = 3.0 / delta * finite_or_throw(xi.tail_moment(K, false), "tail moment of " + xi.describe());
  t.s3 = xi.tail_moment(K, true) < delta / 3.0 ? 0.0 : 1.0;
  t.total = std::min(1.0, t.s1 + t.s2 + t.s3);
  return t;
}

double lln_tail_bound(const MagnitudeLaw& xi, const MixingProfile& alpha, std::size_t n, double delta, double K) {
  return lln_tail_terms(xi, alpha, n, delta, K).total;
}

// ---------------------------------------------------------------------------
// Brackets

Distribution reflected(const Distribution& law) {
  switch (law.kind()) {
    case Distribution::Kind::gaussian:
      return Distribution::gaussian(-law.gaussian_mean(), law.gaussian_sd());
    case Distribution::Kind::uniform:
      return Distribution::uniform(-law.uniform_hi(), -law.uniform_lo());
    case Distribution::Kind::point_mass:
      return Distribution::point_mass(-law.atoms()[0].location);
    default: {
      std::vector<Atom> atoms;
      for (const Atom& a : law.atoms()) atoms.push_back({-a.location, a.weight});
      std::reverse(atoms.begin(), atoms.end());
      return Distribution::finite_discrete(std::move(atoms));
    }
  }
}

double BracketFamily::w(double t) const {
  if (t > F0_ || F0_ <= 0.0) return 0.0;
  if (t <= 0.0) return w_right(0.0);
  return phi_(left_inverse(law_, t).to_double());
}

double BracketFamily::w_right(double t) const {
  if (t >= F0_) return 0.0;
  if (law_.is_discrete()) {
    const auto c = law_.cumulative();
    const auto atoms = law_.atoms();
    for (std::size_t k = 0; k < c.size(); ++k)
      if (c[k] > t) return phi_(atoms[k].location);
    return 0.0;
  }
  // continuous quantile: no jumps
  return phi_(left_inverse(law_, t).to_double());
}

double BracketFamily::h(double t) const {
  t = std::min(t, F0_);
  if (t <= 0.0) return 0.0;
  if (law_.is_discrete()) {
    const auto c = law_.cumulative();
    const auto atoms = law_.atoms();
    double acc = 0.0, prev = 0.0;
    for (std::size_t k = 0; k < c.size() && prev < t; ++k) {
      acc += phi_(atoms[k].location) * (std::min(t, c[k]) - prev);
      prev = c[k];
    }
    return acc;
  }
  const double q = std::min(0.0, left_inverse(law_, t).to_double());
  const double knots[] = {q};
  return law_.expect(phi_, Interval{-kInf, q, false, false}, knots);
}

double BracketFamily::h_inverse(double target) const {
  if (h(F0_) <= target) return 1.0;
  if (law_.is_discrete()) {
    const auto c = law_.cumulative();
    const auto atoms = law_.atoms();
    double acc = 0.0, prev = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
      const double rate = phi_(atoms[k].location);
      const double piece = rate * (c[k] - prev);
      if (acc + piece > target) return prev + (target - acc) / rate;
      acc += piece;
      prev = c[k];
    }
    return F0_;
  }
  double lo = 0.0, hi = F0_;  // h(lo) <= target < h(hi)
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (h(mid) <= target ? lo : hi) = mid;
  }
  return lo;
}

double BracketFamily::w_inverse(double y) const {
  const auto region = phi_.tail_region(y, true);
  if (!region.left) return 0.0;
  const Interval& L = *region.left;
  const double m = L.hi_open ? law_.cdf_left(L.hi) : law_.cdf(L.hi);
  return std::min(F0_, m);
}

double BracketFamily::band(double a, double b) const {
  const GaugeFunction& g = phi_;
  std::vector<double> knots{0.0};
  for (double level : {a, b}) {
    if (!std::isfinite(level)) continue;
    const auto r = g.tail_region(level, false);
    if (r.left) knots.push_back(r.left->hi);
  }
  auto f = [&g, a, b](double x) {
    const double v = g(x);
    return std::min(b, v) - std::min(a, v);
  };
  return law_.expect(f, Interval{-kInf, 0.0, false, false}, knots);
}

double BracketFamily::lower(std::size_t i, double x) const {
  const Bracket& br = brackets_[i];
  return x >= 0.0 && x <= br.t_lo ? br.lower_level : 0.0;
}

double BracketFamily::upper(std::size_t i, double x) const {
  const Bracket& br = brackets_[i];
  if (x < 0.0 || x > br.t_hi) return 0.0;
  if (x <= br.t_lo) return br.upper_level;
  return w(x);
}

double BracketFamily::width(std::size_t i) const { return upper_integral(i) - lower_integral(i); }

double BracketFamily::lower_integral(std::size_t i) const {
  const Bracket& br = brackets_[i];
  return br.t_lo > 0.0 ? br.lower_level * br.t_lo : 0.0;
}

double BracketFamily::upper_integral(std::size_t i) const {
  const Bracket& br = brackets_[i];
  return (br.t_lo > 0.0 ? br.upper_level * br.t_lo : 0.0) + h(br.t_hi) - h(br.t_lo);
}

BracketCheck BracketFamily::verify(std::span<const double> s_values) const {
  BracketCheck out;
  auto fail = [&out](std::string msg) {
    if (out.ok) out.failure = std::move(msg);
    out.ok = false;
  };
  for (std::size_t i = 0; i < brackets_.size(); ++i) {
    const double wd = width(i);
    out.max_width = std::max(out.max_width, wd);
    if (!(wd <= eps_ + 1e-8)) fail("bracket " + std::to_string(i) + " has width " + detail::format_double(wd));
  }
  if (brackets_.size() > k_eps() + l_eps())
    fail("bracket count " + std::to_string(brackets_.size()) + " exceeds k + l");
  auto le = [](double a, double b) { return a <= b + 1e-12 * (1.0 + std::abs(b)); };
  for (double s : s_values) {
    if (!(s > 0.0 && s <= 1.0)) continue;
    auto it = std::lower_bound(t_grid_.begin() + 1, t_grid_.end(), s);
    const std::size_t i = static_cast<std::size_t>(it - t_grid_.begin()) - 1;
    const Bracket& br = brackets_[i];
    const double ws = w(s);
    std::vector<double> xs{0.0, 0.5 * br.t_lo, br.t_lo, s, br.t_hi, 1.0};
    for (int k = 1; k <= 16; ++k) {
      xs.push_back(br.t_lo + (s - br.t_lo) * k / 16.0);
      xs.push_back(s + (br.t_hi - s) * k / 16.0);
    }
    for (double x : xs) {
      const double f = x <= s ? ws : 0.0;
      ++out.checked;
      if (!le(lower(i, x), f) || !le(f, upper(i, x))) {
        fail("w_s with s = " + detail::format_double(s) + " escapes bracket " + std::to_string(i) + " at x = " +
             detail::format_double(x));
        break;
      }
    }
  }
  return out;
}

double BracketFamily::domination_bound(std::span<const double> uniforms) const {
  if (uniforms.empty()) throw DomainError("domination_bound: no observations");
  const double n = static_cast<double>(uniforms.size());
  double worst = -kInf;
  for (std::size_t i = 0; i < brackets_.size(); ++i) {
    double su = 0.0, sl = 0.0;
    for (double u : uniforms) {
      su += upper(i, u);
      sl += lower(i, u);
    }
    worst = std::max({worst, su / n - upper_integral(i), lower_integral(i) - sl / n});
  }
  return worst + eps_;
}

BracketFamily build_brackets(const Distribution& marginal, const GaugeFunction& phi, double eps, HalfLine side) {
  if (!(eps > 0.0)) throw ParameterError("build_brackets: eps must be positive");
  if (side == HalfLine::positive) {
    GaugeFunction mirrored =
        phi.is_symmetric()
            ? phi
            : GaugeFunction::custom(phi.role(), [phi](double y) { return phi(-y); }, phi.descriptor() + ":reflected");
    return build_brackets(reflected(marginal), mirrored, eps, HalfLine::negative);
  }
  psi_moment(marginal, phi);  // NotInClassError when the phi-moment is infinite

  BracketFamily fam(marginal, phi, eps);
  fam.F0_ = marginal.cdf(0.0);
  const double half = 0.5 * eps;

  // s-grid: h increments <= eps/2
  fam.s_grid_ = {0.0};
  while (fam.s_grid_.back() < 1.0) {
    const double last = fam.s_grid_.back();
    double next = fam.h_inverse(fam.h(last) + half);
    if (!(next > last)) next = 1.0;
    fam.s_grid_.push_back(std::min(1.0, next));
  }

  // K: negative-side tail phi-moment <= eps/2
  auto tail = [&](double K) { return tail_moment_negative(marginal, phi, K); };
  double K = 1.0;
  for (int i = 0; i < 1100 && tail(K) > half; ++i) K *= 2.0;
  if (tail(K) > half) throw NotInClassError("build_brackets: no level K with tail phi-moment below eps/2");
  if (K > 1.0) {
    double lo = 0.5 * K, hi = K;
    for (int it = 0; it < 50; ++it) {
      const double mid = 0.5 * (lo + hi);
      (tail(mid) <= half ? hi : lo) = mid;
    }
    K = hi;
  }
  fam.K_ = K;

  // y-grid: band integrals <= eps/2 up to K, then +inf
  fam.y_grid_ = {0.0};
  while (fam.y_grid_.back() < K) {
    const double last = fam.y_grid_.back();
    if (fam.band(last, K) <= half) {
      fam.y_grid_.push_back(K);
      break;
    }
    double lo = last, hi = K;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      (fam.band(last, mid) <= half ? lo : hi) = mid;
    }
    fam.y_grid_.push_back(lo > last ? lo : hi);
  }
  fam.y_grid_.push_back(kInf);

  // merged t-grid
  fam.t_grid_ = fam.s_grid_;
  for (std::size_t j = 0; j + 1 < fam.y_grid_.size(); ++j) fam.t_grid_.push_back(fam.w_inverse(fam.y_grid_[j]));
  std::sort(fam.t_grid_.begin(), fam.t_grid_.end());
  fam.t_grid_.erase(std::unique(fam.t_grid_.begin(), fam.t_grid_.end()), fam.t_grid_.end());

  for (std::size_t i = 1; i < fam.t_grid_.size(); ++i) {
    const double a = fam.t_grid_[i - 1], b = fam.t_grid_[i];
    fam.brackets_.push_back({a, b, fam.w(b), fam.w_right(a)});
  }
  return fam;
}

}  // namespace mixrobust
