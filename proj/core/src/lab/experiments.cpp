#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "detail/format.hpp"
#include "mixrobust/errors.hpp"
#include "mixrobust/lab.hpp"
#include "mixrobust/metrics.hpp"
#include "mixrobust/prohorov.hpp"
#include "mixrobust/random.hpp"
#include "mixrobust/theory.hpp"

namespace mixrobust::lab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::uint64_t kReferenceTag = 0x5245464552454e43ULL;  // stream for reference laws
constexpr std::uint64_t kFloorTag = 0x464c4f4f52ULL;            // independent copy of P
constexpr std::uint64_t kBracketTag = 0x425241434b4554ULL;

std::uint64_t key(std::string_view id) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : id) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

// Short number for row labels.
std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

double binomial_se(double p, std::size_t r) { return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(r)); }

struct Summary {
  double mean = 0.0, sd = 0.0;
};

Summary summarize(std::span<const double> v) {
  Summary s;
  if (v.empty()) return s;
  s.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  if (v.size() > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - s.mean) * (x - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
  }
  return s;
}

struct Reference {
  Distribution law;
  bool exact;
};

Reference reference_marginal(const ExperimentConfig& cfg, const ClassMember& m, std::vector<std::string>& notes) {
  if (auto law = stationary_marginal(m.spec)) return {*law, true};
  const auto path = simulate_linear(m.spec, cfg.reference_size, derive_seed(cfg.master_seed, {key(m.id), kReferenceTag}));
  const double dkw = std::sqrt(std::log(2.0 / 0.05) / (2.0 * static_cast<double>(cfg.reference_size)));
  notes.push_back(m.id + ": reference marginal is a " + std::to_string(cfg.reference_size) +
                  "-point simulated path; nominal DKW 95% band for its CDF is +-" + detail::format_double(dkw) +
                  " (iid rate, the dependent path mixes geometrically)");
  return {Distribution::empirical(path), false};
}

// Reference laws for every member, or the error that stopped it.
void build_references(const ExperimentConfig& cfg, std::vector<std::optional<Reference>>& refs,
                      std::vector<std::string>& failures, std::vector<std::string>& notes) {
  const std::size_t M = cfg.members.size();
  refs.assign(M, std::nullopt);
  failures.assign(M, "");
  std::vector<std::vector<std::string>> per(M);
  parallel_for(M, [&](std::size_t m) {
    try {
      refs[m] = reference_marginal(cfg, cfg.members[m], per[m]);
    } catch (const Error& e) {
      failures[m] = e.what();
    }
  });
  for (auto& p : per) notes.insert(notes.end(), p.begin(), p.end());
}

struct RowSink {
  const ExperimentConfig& cfg;
  ResultTable& table;
  void add(std::string member, std::size_t n, std::string stat, double value, double se, std::string family) {
    table.rows.push_back({to_string(cfg.kind), std::move(member), n, std::move(stat), value, se, cfg.master_seed,
                          std::move(family), cfg.timestamp});
  }
};

void failure_row(RowSink& sink, const std::string& member, const std::string& what, const std::string& family,
                 std::vector<std::string>& notes) {
  sink.add(member, 0, "failure", kNaN, kNaN, family);
  notes.push_back(member + ": failed: " + what);
}

// Nonincreasing within k combined standard errors, and optional terminal cap.
void check_decay(const ExperimentConfig& cfg, const std::vector<const ResultRow*>& series, const std::string& label,
                 std::vector<std::string>& violations) {
  if (cfg.assert_monotone_se) {
    const double k = *cfg.assert_monotone_se;
    for (std::size_t i = 1; i < series.size(); ++i) {
      const auto& a = *series[i - 1];
      const auto& b = *series[i];
      const double slack = k * std::hypot(a.std_error, b.std_error);
      if (b.value > a.value + slack)
        violations.push_back(label + " increases from n=" + std::to_string(a.n) + " (" + detail::format_double(a.value) +
                             ") to n=" + std::to_string(b.n) + " (" + detail::format_double(b.value) + ") beyond " +
                             detail::format_double(k) + " standard errors");
    }
  }
  if (cfg.assert_terminal_max && !series.empty() && !(series.back()->value < *cfg.assert_terminal_max))
    violations.push_back(label + " at n=" + std::to_string(series.back()->n) + " is " +
                         detail::format_double(series.back()->value) + ", not below " +
                         detail::format_double(*cfg.assert_terminal_max));
}

// Max over members per n, for rows `stat`; ties keep the first member.
void sup_rows(RowSink& sink, const std::vector<std::string>& failures, const std::string& stat,
              const std::string& family) {
  const ExperimentConfig& cfg = sink.cfg;
  for (std::size_t n : cfg.n_grid) {
    const ResultRow* best = nullptr;
    for (std::size_t m = 0; m < cfg.members.size(); ++m) {
      if (!failures[m].empty()) continue;
      for (const auto* r : sink.table.select(cfg.members[m].id, stat))
        if (r->n == n && (!best || r->value > best->value)) best = r;
    }
    if (best) sink.add("sup", n, stat, best->value, best->std_error, family);
  }
}

std::vector<double> simulate(const ClassMember& m, std::size_t n, std::uint64_t seed) {
  return simulate_linear(m.spec, n, seed);
}

double estimate(const Functional& T, std::span<const double> path) {
  if (T.kind() != Functional::Kind::covariance) return T.plugin(path);
  if (path.size() < 2) throw DomainError("covariance functional needs a path of length >= 2");
  // lag-one pairs (X_t, X_{t+1})
  return T.plugin(PairedSample({path.begin(), path.end() - 1}, {path.begin() + 1, path.end()}));
}

}  // namespace

// ---------------------------------------------------------------------------

RunResult run_ugc(const ExperimentConfig& cfg) {
  const Metric metric = Metric::parse(cfg.metric);
  RunResult res;
  res.family = metric.family_descriptor();
  std::vector<std::optional<Reference>> refs;
  std::vector<std::string> failures;
  build_references(cfg, refs, failures, res.notes);

  const std::size_t M = cfg.members.size(), N = cfg.n_grid.size(), R = cfg.replicates;
  std::vector<double> dist(M * N * R, kNaN);
  std::vector<std::string> errs(M * N * R);
  parallel_for(M * N * R, [&](std::size_t idx) {
    const std::size_t m = idx / (N * R), j = idx / R % N, r = idx % R;
    if (!failures[m].empty()) return;
    const auto& mem = cfg.members[m];
    try {
      const auto path = simulate(mem, cfg.n_grid[j], derive_seed(cfg.master_seed, {key(mem.id), cfg.n_grid[j], r}));
      dist[idx] = metric(Distribution::empirical(path), refs[m]->law);
    } catch (const Error& e) {
      errs[idx] = e.what();
    }
  });
  for (std::size_t m = 0; m < M; ++m)
    for (std::size_t i = m * N * R; i < (m + 1) * N * R && failures[m].empty(); ++i)
      if (!errs[i].empty()) failures[m] = errs[i];

  RowSink sink{cfg, res.table};
  for (std::size_t m = 0; m < M; ++m) {
    const auto& id = cfg.members[m].id;
    if (!failures[m].empty()) {
      failure_row(sink, id, failures[m], res.family, res.notes);
      continue;
    }
    for (std::size_t j = 0; j < N; ++j) {
      std::span<const double> d(dist.data() + (m * N + j) * R, R);
      const auto hits = std::count_if(d.begin(), d.end(), [&](double v) { return v >= cfg.delta; });
      const double p = static_cast<double>(hits) / static_cast<double>(R);
      const Summary s = summarize(d);
      sink.add(id, cfg.n_grid[j], "exceed_prob", p, binomial_se(p, R), res.family);
      sink.add(id, cfg.n_grid[j], "mean_distance", s.mean, s.sd / std::sqrt(static_cast<double>(R)), res.family);
    }
  }
  sup_rows(sink, failures, "exceed_prob", res.family);
  check_decay(cfg, res.table.select("sup", "exceed_prob"), "sup exceed_prob", res.violations);
  return res;
}

RunResult run_robustness(const ExperimentConfig& cfg) {
  const Metric metric = Metric::parse(cfg.metric);
  const Functional T = Functional::parse(cfg.functional);
  RunResult res;
  res.family = T.descriptor() + "|" + metric.family_descriptor();
  const ClassMember& P = cfg.members.at(0);
  const ClassMember& Q = cfg.members.at(1);
  const std::size_t N = cfg.n_grid.size(), R = cfg.replicates;

  std::vector<std::string> failures;
  std::vector<std::optional<Reference>> refs;
  build_references(cfg, refs, failures, res.notes);
  for (std::size_t m = 0; m < 2; ++m)
    if (!failures[m].empty()) throw ParameterError(cfg.members[m].id + ": " + failures[m]);
  const double marginal_distance = metric(refs[0]->law, refs[1]->law);

  // est[(j * 3 + law) * R + r], law 0 = P, 1 = Q, 2 = independent copy of P
  std::vector<double> est(N * 3 * R);
  parallel_for(N * 3 * R, [&](std::size_t idx) {
    const std::size_t j = idx / (3 * R), which = idx / R % 3, r = idx % R;
    const std::size_t n = cfg.n_grid[j];
    const auto& mem = which == 1 ? Q : P;
    const std::uint64_t seed = which == 2 ? derive_seed(cfg.master_seed, {key(P.id), kFloorTag, n, r})
                                          : derive_seed(cfg.master_seed, {key(mem.id), n, r});
    est[idx] = estimate(T, simulate(mem, n, seed));
  });

  const std::size_t B = std::min(cfg.batches, R);
  auto prohorov_between = [&](std::span<const double> a, std::span<const double> b) {
    return prohorov_distance(FiniteLaw::empirical_on_line(stratified_thin({a.begin(), a.end()}, cfg.max_atoms)),
                             FiniteLaw::empirical_on_line(stratified_thin({b.begin(), b.end()}, cfg.max_atoms)));
  };
  // Prohorov on the full (thinned) laws; SE from the spread over B contiguous batches.
  auto prohorov_with_se = [&](std::span<const double> a, std::span<const double> b) {
    const double full = prohorov_between(a, b);
    if (B < 2) return std::pair{full, 0.0};
    std::vector<double> per(B);
    for (std::size_t k = 0; k < B; ++k) {
      const std::size_t lo = k * R / B, hi = (k + 1) * R / B;
      per[k] = prohorov_between(a.subspan(lo, hi - lo), b.subspan(lo, hi - lo));
    }
    return std::pair{full, summarize(per).sd / std::sqrt(static_cast<double>(B))};
  };

  RowSink sink{cfg, res.table};
  const std::string pq = P.id + "-vs-" + Q.id, floor_id = P.id + "-vs-" + P.id + "'";
  const auto one = GaugeFunction::one();
  for (std::size_t j = 0; j < N; ++j) {
    const std::size_t n = cfg.n_grid[j];
    std::span<const double> eP(est.data() + (j * 3 + 0) * R, R), eQ(est.data() + (j * 3 + 1) * R, R),
        eF(est.data() + (j * 3 + 2) * R, R);
    const auto lawP = Distribution::empirical(eP), lawQ = Distribution::empirical(eQ), lawF = Distribution::empirical(eF);
    const auto [pro, pro_se] = prohorov_with_se(eP, eQ);
    const auto [flo, flo_se] = prohorov_with_se(eP, eF);
    const double lev = levy(lawP, lawQ), kol = kolmogorov_phi(lawP, lawQ, one);
    sink.add(pq, n, "marginal_distance", marginal_distance, 0.0, metric.family_descriptor());
    sink.add(pq, n, "prohorov", pro, pro_se, "prohorov");
    sink.add(pq, n, "levy", lev, 0.0, "levy");
    sink.add(pq, n, "kolmogorov", kol, 0.0, "kolmogorov-phi:one");
    sink.add(floor_id, n, "prohorov", flo, flo_se, "prohorov");
    sink.add(floor_id, n, "levy", levy(lawP, lawF), 0.0, "levy");
    sink.add(floor_id, n, "kolmogorov", kolmogorov_phi(lawP, lawF, one), 0.0, "kolmogorov-phi:one");
    if (lev > kol + 1e-12)
      res.violations.push_back("levy exceeds kolmogorov between estimator laws at n=" + std::to_string(n));
    const std::pair<const std::string&, std::span<const double>> laws[] = {{P.id, eP}, {Q.id, eQ}};
    for (const auto& [id, e] : laws) {
      const Summary s = summarize(e);
      const double rr = static_cast<double>(R);
      sink.add(id, n, "estimator_mean", s.mean, s.sd / std::sqrt(rr), T.descriptor());
      sink.add(id, n, "estimator_sd", s.sd, R > 1 ? s.sd / std::sqrt(2.0 * (rr - 1.0)) : 0.0, T.descriptor());
    }
  }
  if (R < 2 * cfg.batches) res.notes.push_back("fewer than two replicates per batch; prohorov standard errors are rough");

  check_decay(cfg, res.table.select(pq, "prohorov"), pq + " prohorov", res.violations);
  if (cfg.assert_floor_margin) {
    const auto pr = res.table.select(pq, "prohorov");
    const auto fl = res.table.select(floor_id, "prohorov");
    if (pr.back()->value >= fl.back()->value + *cfg.assert_floor_margin)
      res.violations.push_back(pq + " prohorov at n=" + std::to_string(pr.back()->n) + " is " +
                               detail::format_double(pr.back()->value) + ", not below the noise floor " +
                               detail::format_double(fl.back()->value) + " + " +
                               detail::format_double(*cfg.assert_floor_margin));
  }
  return res;
}

RunResult run_rio_check(const ExperimentConfig& cfg) {
  RunResult res;
  res.family = "rio";
  std::vector<std::optional<Reference>> refs;
  std::vector<std::string> failures;
  build_references(cfg, refs, failures, res.notes);
  const std::size_t M = cfg.members.size(), N = cfg.n_grid.size(), R = cfg.replicates;

  std::vector<std::optional<MixingProfile>> alphas(M);
  for (std::size_t m = 0; m < M; ++m) {
    if (!failures[m].empty()) continue;
    try {
      alphas[m].emplace(cfg.members[m].spec);
      if (!std::isfinite(refs[m]->law.second_moment())) throw DomainError("infinite second moment");
    } catch (const Error& e) {
      failures[m] = e.what();
    }
  }

  // max_k |S_k - k E X| per replicate
  std::vector<double> dev(M * N * R, kNaN);
  parallel_for(M * N * R, [&](std::size_t idx) {
    const std::size_t m = idx / (N * R), j = idx / R % N, r = idx % R;
    if (!failures[m].empty()) return;
    const auto& mem = cfg.members[m];
    const auto path = simulate(mem, cfg.n_grid[j], derive_seed(cfg.master_seed, {key(mem.id), cfg.n_grid[j], r}));
    const double mu = refs[m]->law.mean();
    double s = 0.0, best = 0.0;
    for (double x : path) {
      s += x - mu;
      best = std::max(best, std::abs(s));
    }
    dev[idx] = best;
  });

  RowSink sink{cfg, res.table};
  for (std::size_t m = 0; m < M; ++m) {
    const auto& id = cfg.members[m].id;
    if (!failures[m].empty()) {
      failure_row(sink, id, failures[m], res.family, res.notes);
      continue;
    }
    const MagnitudeLaw xi(refs[m]->law);
    for (std::size_t j = 0; j < N; ++j) {
      std::span<const double> d(dev.data() + (m * N + j) * R, R);
      for (double x : cfg.x_grid) {
        const auto hits = std::count_if(d.begin(), d.end(), [&](double v) { return v >= 2.0 * x; });
        const double p = static_cast<double>(hits) / static_cast<double>(R);
        const double se = binomial_se(p, R);
        const double bound = rio_bound(xi, *alphas[m], cfg.n_grid[j], x);
        const bool bad = p > bound + 3.0 * se;
        const std::string stat = "x=" + label(x);
        sink.add(id, cfg.n_grid[j], "exceed_freq@" + stat, p, se, res.family);
        sink.add(id, cfg.n_grid[j], "rio_bound@" + stat, bound, 0.0, res.family);
        sink.add(id, cfg.n_grid[j], "violation@" + stat, bad ? 1.0 : 0.0, 0.0, res.family);
        if (bad)
          res.violations.push_back(id + ": exceedance " + detail::format_double(p) + " above rio bound " +
                                   detail::format_double(bound) + " + 3 SE at n=" + std::to_string(cfg.n_grid[j]) +
                                   ", " + stat);
      }
    }
  }
  return res;
}

RunResult run_lln_check(const ExperimentConfig& cfg) {
  const GaugeFunction psi = GaugeFunction::parse(cfg.psi, GaugeFunction::Role::psi_gauge);
  RunResult res;
  res.family = "psi:" + psi.descriptor();
  std::vector<std::optional<Reference>> refs;
  std::vector<std::string> failures;
  build_references(cfg, refs, failures, res.notes);
  const std::size_t M = cfg.members.size(), N = cfg.n_grid.size(), R = cfg.replicates;

  std::vector<std::optional<MixingProfile>> alphas(M);
  std::vector<double> target(M, kNaN);
  for (std::size_t m = 0; m < M; ++m) {
    if (!failures[m].empty()) continue;
    try {
      alphas[m].emplace(cfg.members[m].spec);
      target[m] = MagnitudeLaw(refs[m]->law, psi).mean();
      if (!std::isfinite(target[m])) throw NotInClassError("infinite psi-moment");
    } catch (const Error& e) {
      failures[m] = e.what();
    }
  }

  std::vector<double> gap(M * N * R, kNaN);
  parallel_for(M * N * R, [&](std::size_t idx) {
    const std::size_t m = idx / (N * R), j = idx / R % N, r = idx % R;
    if (!failures[m].empty()) return;
    const auto& mem = cfg.members[m];
    const auto path = simulate(mem, cfg.n_grid[j], derive_seed(cfg.master_seed, {key(mem.id), cfg.n_grid[j], r}));
    double s = 0.0;
    for (double x : path) s += psi(x);
    gap[idx] = std::abs(s / static_cast<double>(path.size()) - target[m]);
  });

  RowSink sink{cfg, res.table};
  for (std::size_t m = 0; m < M; ++m) {
    const auto& id = cfg.members[m].id;
    if (!failures[m].empty()) {
      failure_row(sink, id, failures[m], res.family, res.notes);
      continue;
    }
    const MagnitudeLaw xi(refs[m]->law, psi);
    for (std::size_t j = 0; j < N; ++j) {
      const std::size_t n = cfg.n_grid[j];
      std::span<const double> g(gap.data() + (m * N + j) * R, R);
      const auto hits = std::count_if(g.begin(), g.end(), [&](double v) { return v >= cfg.delta; });
      const double p = static_cast<double>(hits) / static_cast<double>(R);
      const double se = binomial_se(p, R);
      double bound = 1.0;
      for (double K : cfg.K_grid) bound = std::min(bound, lln_tail_bound(xi, *alphas[m], n, cfg.delta, K));
      const bool bad = p > bound + 3.0 * se;
      sink.add(id, n, "exceed_freq", p, se, res.family);
      sink.add(id, n, "lln_bound", bound, 0.0, res.family);
      sink.add(id, n, "violation", bad ? 1.0 : 0.0, 0.0, res.family);
      if (bad)
        res.violations.push_back(id + ": frequency " + detail::format_double(p) + " above lln bound " +
                                 detail::format_double(bound) + " + 3 SE at n=" + std::to_string(n));
    }
  }
  sup_rows(sink, failures, "exceed_freq", res.family);
  sup_rows(sink, failures, "lln_bound", res.family);
  check_decay(cfg, res.table.select("sup", "exceed_freq"), "sup exceed_freq", res.violations);
  return res;
}

RunResult run_bracket_check(const ExperimentConfig& cfg) {
  const GaugeFunction phi = GaugeFunction::parse(cfg.phi, GaugeFunction::Role::u_shaped_phi);
  RunResult res;
  res.family = "phi:" + phi.descriptor();
  const std::size_t K = cfg.marginals, E = cfg.eps_grid.size(), N = cfg.n_grid.size(), S = cfg.samples;

  std::vector<Distribution> laws;
  for (std::size_t i = 0; i < K; ++i) {
    Rng rng(derive_seed(cfg.master_seed, {kBracketTag, i}));
    std::uniform_int_distribution<int> count(1, 8);
    std::uniform_real_distribution<double> loc(-3.0, 3.0), wt(0.05, 1.0);
    std::vector<Atom> atoms(static_cast<std::size_t>(count(rng)));
    double total = 0.0;
    for (auto& a : atoms) {
      a.location = loc(rng);
      a.weight = wt(rng);
      total += a.weight;
    }
    for (auto& a : atoms) a.weight /= total;
    laws.push_back(Distribution::finite_discrete(std::move(atoms)));
  }

  std::vector<double> s_values(cfg.validation_points);
  for (std::size_t j = 0; j < s_values.size(); ++j)
    s_values[j] = s_values.size() == 1 ? 1.0 : static_cast<double>(j) / static_cast<double>(s_values.size() - 1);

  struct Cell {
    std::optional<BracketFamily> neg, pos;
    BracketCheck neg_check, pos_check;
    std::vector<std::size_t> dom_violations;
    std::string error;
  };
  std::vector<Cell> cells(K * E);
  parallel_for(K * E, [&](std::size_t idx) {
    const std::size_t i = idx / E, e = idx % E;
    Cell& c = cells[idx];
    try {
      c.neg = build_brackets(laws[i], phi, cfg.eps_grid[e]);
      c.pos = build_brackets(laws[i], phi, cfg.eps_grid[e], HalfLine::positive);
      c.neg_check = c.neg->verify(s_values);
      c.pos_check = c.pos->verify(s_values);
      c.dom_violations.assign(N, 0);
      for (std::size_t j = 0; j < N; ++j) {
        for (std::size_t r = 0; r < S; ++r) {
          Rng draw(derive_seed(cfg.master_seed, {kBracketTag, i, e, cfg.n_grid[j], r}));
          std::vector<double> xs(cfg.n_grid[j]);
          laws[i].sample(draw, xs);
          const EmpiricalMeasure emp(xs);
          const auto us = quantile_transform(emp, laws[i], derive_seed(cfg.master_seed, {kBracketTag, i, e, cfg.n_grid[j], r, 1}));
          const double lhs = kolmogorov_phi(emp.law(), laws[i], phi, Interval{-INFINITY, 0.0});
          if (lhs > c.neg->domination_bound(us) + 1e-12) ++c.dom_violations[j];
        }
      }
    } catch (const Error& ex) {
      c.error = ex.what();
    }
  });

  RowSink sink{cfg, res.table};
  char name[64];
  for (std::size_t e = 0; e < E; ++e) {
    const double eps = cfg.eps_grid[e];
    const std::string tag = "/eps=" + label(eps);
    for (std::size_t i = 0; i < K; ++i) {
      std::snprintf(name, sizeof name, "m%02zu", i);
      const std::string id = name + tag;
      const Cell& c = cells[i * E + e];
      if (!c.error.empty()) {
        failure_row(sink, id, c.error, res.family, res.notes);
        res.violations.push_back(id + ": " + c.error);
        continue;
      }
      const double width = std::max(c.neg_check.max_width, c.pos_check.max_width);
      const bool covered = c.neg_check.ok && c.pos_check.ok;
      sink.add(id, 0, "max_width", width, 0.0, res.family);
      sink.add(id, 0, "covered", covered ? 1.0 : 0.0, 0.0, res.family);
      sink.add(id, 0, "bracket_count", static_cast<double>(c.neg->brackets().size()), 0.0, res.family);
      sink.add(id, 0, "k_plus_l", static_cast<double>(c.neg->k_eps() + c.neg->l_eps()), 0.0, res.family);
      if (!covered)
        res.violations.push_back(id + ": " + (c.neg_check.ok ? c.pos_check.failure : c.neg_check.failure));
      for (std::size_t j = 0; j < N; ++j) {
        sink.add(id, cfg.n_grid[j], "domination_violations", static_cast<double>(c.dom_violations[j]), 0.0, res.family);
        if (c.dom_violations[j])
          res.violations.push_back(id + ": " + std::to_string(c.dom_violations[j]) +
                                   " domination violations at n=" + std::to_string(cfg.n_grid[j]));
      }
    }
  }
  return res;
}

RunResult run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.kind) {
    case ExperimentKind::ugc: return run_ugc(cfg);
    case ExperimentKind::robustness: return run_robustness(cfg);
    case ExperimentKind::rio_check: return run_rio_check(cfg);
    case ExperimentKind::lln_check: return run_lln_check(cfg);
    case ExperimentKind::bracket_check: return run_bracket_check(cfg);
  }
  throw ConfigError("unknown experiment");
}

}  // namespace mixrobust::lab
