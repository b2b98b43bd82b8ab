#include "mixrobust/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "detail/format.hpp"
#include "mixrobust/errors.hpp"

namespace mixrobust {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDivergence = 1e12;
constexpr int kQuantileAnchors = 1024;

// |F_a - F_b| at y, or at y- when `left`. Right of zero the survival functions
// are compared instead, so heavy weights in the right tail do not amplify
// cancellation noise.
double cdf_gap(const Distribution& a, const Distribution& b, double y, bool left) {
  if (y < 0.0) return left ? std::abs(a.cdf_left(y) - b.cdf_left(y)) : std::abs(a.cdf(y) - b.cdf(y));
  return left ? std::abs(a.sf_left(y) - b.sf_left(y)) : std::abs(a.sf(y) - b.sf(y));
}

double weighted(double gap, double weight) { return gap == 0.0 ? 0.0 : gap * weight; }

std::vector<double> tail_grid() {
  std::vector<double> g;
  for (int j = -8; j <= 62; ++j) {
    g.push_back(std::ldexp(1.0, j));
    g.push_back(-std::ldexp(1.0, j));
  }
  return g;
}

void check_membership(const Distribution& law, const GaugeFunction& phi, const char* which) {
  if (law.is_discrete() || phi.bound()) return;
  for (double y : tail_grid()) {
    const double mass = y < 0.0 ? law.cdf(y) : law.sf(y);
    const double v = weighted(mass, phi(y));
    if (!(v <= kDivergence))
      throw NotInClassError(std::string("kolmogorov_phi: ") + which + " law " + law.describe() +
                            " has divergent phi-weighted tail under " + phi.descriptor() + " at y = " +
                            detail::format_double(y));
  }
}

void append_breakpoints(const Distribution& law, std::vector<double>& out) {
  auto b = law.breakpoints();
  out.insert(out.end(), b.begin(), b.end());
}

void sort_unique(std::vector<double>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

template <class F>
double golden_max(F&& f, double a, double b, int iters = 80) {
  const double r = std::numbers::phi - 1.0;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  double best = std::max(fc, fd);
  for (int i = 0; i < iters && b - a > 1e-14 * std::max(1.0, std::abs(a)); ++i) {
    if (fc < fd) {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    } else {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    }
    best = std::max({best, fc, fd});
  }
  return best;
}

}  // namespace

double kolmogorov_phi(const Distribution& mu, const Distribution& nu, const GaugeFunction& phi, const Interval& range) {
  check_membership(mu, phi, "first");
  check_membership(nu, phi, "second");

  std::vector<double> bps;
  append_breakpoints(mu, bps);
  append_breakpoints(nu, bps);
  sort_unique(bps);

  double best = 0.0;
  auto visit = [&](double y, bool left) {
    const double v = weighted(cdf_gap(mu, nu, y, left), phi(y));
    if (!(v <= kDivergence))
      throw NotInClassError("kolmogorov_phi: divergent supremum at y = " + detail::format_double(y));
    best = std::max(best, v);
    return v;
  };
  auto in_range = [&](double y) { return y >= range.lo && y <= range.hi; };

  // Range endpoints: the value at a closed end, the one-sided limit at an open one.
  if (std::isfinite(range.lo)) visit(range.lo, false);
  if (std::isfinite(range.hi)) {
    visit(range.hi, true);
    if (!range.hi_open) visit(range.hi, false);
  }
  for (double y : bps) {
    if (!in_range(y)) continue;
    if (!(range.hi_open && y == range.hi)) visit(y, false);
    if (y > range.lo) visit(y, true);
  }

  const bool both_discrete = mu.is_discrete() && nu.is_discrete();
  const bool has_gaussian = mu.kind() == Distribution::Kind::gaussian || nu.kind() == Distribution::Kind::gaussian;
  const bool some_discrete = mu.is_discrete() || nu.is_discrete();
  // Between consecutive breakpoints the CDF gap is constant, monotone or
  // linear in these cases, and phi is u-shaped, so endpoints carry the sup.
  if (both_discrete || (phi.is_constant() && (some_discrete || !has_gaussian))) return best;

  std::vector<double> grid = bps;
  for (const Distribution* law : {&mu, &nu}) {
    if (law->is_discrete()) continue;
    for (int k = 0; k < kQuantileAnchors; ++k) {
      const ExtendedReal q = law->quantile((k + 0.5) / kQuantileAnchors);
      if (q.is_finite()) grid.push_back(q.value());
    }
  }
  for (double y : tail_grid()) grid.push_back(y);
  if (std::isfinite(range.lo)) grid.push_back(range.lo);
  if (std::isfinite(range.hi)) grid.push_back(range.hi);
  std::erase_if(grid, [&](double y) { return !in_range(y); });
  sort_unique(grid);

  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = visit(grid[i], false);

  // Refine around the largest local maxima. Each open cell between grid
  // points holds no breakpoint, so the objective is continuous there.
  std::vector<std::size_t> peaks;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const bool left_ok = i == 0 || values[i] >= values[i - 1];
    const bool right_ok = i + 1 == grid.size() || values[i] >= values[i + 1];
    if (left_ok && right_ok) peaks.push_back(i);
  }
  std::sort(peaks.begin(), peaks.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  if (peaks.size() > 16) peaks.resize(16);
  auto objective = [&](double y) { return weighted(cdf_gap(mu, nu, y, false), phi(y)); };
  for (std::size_t i : peaks) {
    if (i > 0) best = std::max(best, golden_max(objective, grid[i - 1], grid[i]));
    if (i + 1 < grid.size()) best = std::max(best, golden_max(objective, grid[i], grid[i + 1]));
  }
  if (!(best <= kDivergence)) throw NotInClassError("kolmogorov_phi: divergent supremum");
  return best;
}

// ---------------------------------------------------------------------------
// Levy

namespace {

// S discrete with atoms x_k and cumulative c_k. The sandwich
// F_O(x-e) - e <= F_S(x) <= F_O(x+e) + e reduces, on each step of F_S, to
//   F_O((x_k - e)-) - e <= c_{k-1}   and   c_k <= F_O(x_k + e) + e,
// each monotone in e with a closed solution set [e_k, inf). The distance is
// max_k e_k; atoms are visited by decreasing gap at e = 0, which bounds e_k,
// so the scan stops once the running max exceeds the next gap.
double levy_discrete(const Distribution& s, const Distribution& o) {
  const auto atoms = s.atoms();
  const auto cum = s.cumulative();
  const std::size_t m = atoms.size();

  auto holds = [&](std::size_t k, double e) {
    const double prev = k == 0 ? 0.0 : cum[k - 1];
    const double x = atoms[k].location;
    return o.cdf_left(x - e) - e <= prev && cum[k] <= o.cdf(x + e) + e;
  };

  std::vector<double> gap(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double prev = k == 0 ? 0.0 : cum[k - 1];
    const double x = atoms[k].location;
    gap[k] = std::max({0.0, o.cdf_left(x) - prev, cum[k] - o.cdf(x)});
  }
  std::vector<std::size_t> order(m);
  for (std::size_t k = 0; k < m; ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return gap[a] > gap[b]; });

  double best = 0.0;
  for (std::size_t k : order) {
    if (gap[k] <= best) break;
    if (holds(k, best)) continue;
    double lo = best, hi = std::min(1.0, gap[k]);
    if (!holds(k, hi)) hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      (holds(k, mid) ? hi : lo) = mid;
    }
    best = hi;
  }
  return best;
}

double levy_continuous(const Distribution& mu, const Distribution& nu) {
  std::vector<double> anchors;
  append_breakpoints(mu, anchors);
  append_breakpoints(nu, anchors);
  const std::vector<double> bps = anchors;
  for (const Distribution* law : {&mu, &nu}) {
    for (int k = 0; k < 512; ++k) {
      const ExtendedReal q = law->quantile((k + 0.5) / 512);
      if (q.is_finite()) anchors.push_back(q.value());
    }
  }

  // Largest sandwich violation at x, both orientations.
  auto violation = [&](double x, double e) {
    const double fm = mu.cdf(x), fn = nu.cdf(x);
    return std::max({mu.cdf(x - e) - e - fn, fn - mu.cdf(x + e) - e, nu.cdf(x - e) - e - fm, fm - nu.cdf(x + e) - e});
  };
  auto worst = [&](double e) {
    std::vector<double> xs = anchors;
    for (double b : bps) {
      xs.push_back(b - e);
      xs.push_back(b + e);
    }
    sort_unique(xs);
    std::vector<double> v(xs.size());
    std::size_t arg = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      v[i] = violation(xs[i], e);
      if (v[i] > v[arg]) arg = i;
    }
    double w = v[arg];
    auto f = [&](double x) { return violation(x, e); };
    if (arg > 0) w = std::max(w, golden_max(f, xs[arg - 1], xs[arg]));
    if (arg + 1 < xs.size()) w = std::max(w, golden_max(f, xs[arg], xs[arg + 1]));
    return w;
  };

  double lo = 0.0, hi = 1.0;
  if (worst(0.0) <= 0.0) return 0.0;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (worst(mid) <= 0.0 ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace

double levy(const Distribution& mu, const Distribution& nu) {
  if (mu.is_discrete() && nu.is_discrete())
    return mu.atoms().size() <= nu.atoms().size() ? levy_discrete(mu, nu) : levy_discrete(nu, mu);
  if (mu.is_discrete()) return levy_discrete(mu, nu);
  if (nu.is_discrete()) return levy_discrete(nu, mu);
  return levy_continuous(mu, nu);
}

// ---------------------------------------------------------------------------
// Vague and psi metrics

double vague_distance(const Distribution& mu, const Distribution& nu, const DenseFamily& family) {
  double total = 0.0;
  for (std::size_t k = 0; k < family.k_max(); ++k) {
    const auto& f = family[k];
    const Interval supp = f.support();
    const auto knots = f.knots();
    const double a = mu.expect(f, supp, knots);
    const double b = nu.expect(f, supp, knots);
    total += std::ldexp(std::min(1.0, std::abs(a - b)), -static_cast<int>(k + 1));
  }
  return total;
}

double psi_moment(const Distribution& mu, const GaugeFunction& psi) {
  const double zero[] = {0.0};
  const double v = mu.expect(psi, Interval::all(), zero);
  if (!std::isfinite(v))
    throw NotInClassError("psi moment of " + mu.describe() + " under " + psi.descriptor() + " is infinite");
  return v;
}

double psi_vague(const Distribution& mu, const Distribution& nu, const GaugeFunction& psi, const DenseFamily& family) {
  return vague_distance(mu, nu, family) + std::abs(psi_moment(mu, psi) - psi_moment(nu, psi));
}

double psi_levy(const Distribution& mu, const Distribution& nu, const GaugeFunction& psi) {
  return levy(mu, nu) + std::abs(psi_moment(mu, psi) - psi_moment(nu, psi));
}

namespace {

double region_moment(const Distribution& mu, const GaugeFunction& g, const Interval& region) {
  const double knots[] = {0.0, region.lo, region.hi};
  const double v = mu.expect(g, region, knots);
  if (!std::isfinite(v))
    throw NotInClassError("tail moment of " + mu.describe() + " under " + g.descriptor() + " is infinite");
  return v;
}

}  // namespace

double tail_moment(const Distribution& mu, const GaugeFunction& g, double K, bool strict) {
  const auto region = g.tail_region(K, strict);
  double total = 0.0;
  if (region.left) total += region_moment(mu, g, *region.left);
  if (region.right) total += region_moment(mu, g, *region.right);
  return total;
}

double tail_moment_negative(const Distribution& mu, const GaugeFunction& g, double K, bool strict) {
  const auto region = g.tail_region(K, strict);
  return region.left ? region_moment(mu, g, *region.left) : 0.0;
}

IntegrabilityTable uniform_phi_integrability(std::span<const Distribution> marginals, const GaugeFunction& gauge,
                                             std::span<const double> K_grid) {
  IntegrabilityTable table;
  table.K.assign(K_grid.begin(), K_grid.end());
  table.sup.assign(K_grid.size(), 0.0);
  for (const Distribution& law : marginals) {
    std::vector<double> row(K_grid.size(), kInf);
    std::string failure;
    try {
      for (std::size_t j = 0; j < K_grid.size(); ++j) row[j] = tail_moment(law, gauge, K_grid[j]);
    } catch (const NotInClassError& e) {
      failure = e.what();
      std::fill(row.begin(), row.end(), kInf);
    }
    if (failure.empty())
      for (std::size_t j = 0; j < K_grid.size(); ++j) table.sup[j] = std::max(table.sup[j], row[j]);
    table.per_marginal.push_back(std::move(row));
    table.failures.push_back(std::move(failure));
  }
  return table;
}

}  // namespace mixrobust
