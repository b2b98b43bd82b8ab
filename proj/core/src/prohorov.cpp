#include "mixrobust/prohorov.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <queue>

#include "detail/format.hpp"
#include "mixrobust/errors.hpp"

namespace mixrobust {

namespace {

constexpr double kScale = 1e12;

void check_weights(const std::vector<double>& w, const char* what) {
  if (w.empty()) throw InvariantViolation(std::string(what) + ": empty support");
  double total = 0.0;
  for (double v : w) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw InvariantViolation(std::string(what) + ": negative or non-finite weight");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw InvariantViolation(std::string(what) + ": weights sum to " + detail::format_double(total));
}

std::vector<std::int64_t> scaled(std::span<const double> w) {
  std::vector<std::int64_t> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = std::llround(w[i] * kScale);
  return out;
}

struct FlowEdge {
  std::size_t from, to;
  std::int64_t amount;
};

// Line case. Atoms of both laws are sorted, so the sinks reachable from
// source i form a window [L_i, R_i] with both ends nondecreasing in i. Filling
// each source into the leftmost sinks with spare capacity is then a maximum
// flow (exchange argument: any unit routed to a later sink can be swapped
// onto an earlier one without hurting later sources).
std::vector<FlowEdge> line_flow(const FiniteLaw& mu1, const FiniteLaw& mu2, double delta) {
  const auto x = mu1.locations(), y = mu2.locations();
  auto supply = scaled(mu1.weights());
  auto cap = scaled(mu2.weights());
  std::vector<FlowEdge> flow;
  std::size_t p = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    while (p < y.size() && (y[p] < x[i] && x[i] - y[p] > delta)) ++p;
    std::size_t j = p;
    while (supply[i] > 0 && j < y.size() && y[j] - x[i] <= delta) {
      if (cap[j] > 0) {
        const std::int64_t f = std::min(supply[i], cap[j]);
        supply[i] -= f;
        cap[j] -= f;
        flow.push_back({i, j, f});
      }
      ++j;
    }
    while (p < y.size() && cap[p] == 0) ++p;
  }
  return flow;
}

class Dinic {
 public:
  explicit Dinic(std::size_t n) : adj_(n), level_(n), it_(n) {}

  std::size_t add_edge(std::size_t u, std::size_t v, std::int64_t c) {
    adj_[u].push_back(edges_.size());
    edges_.push_back({v, c});
    adj_[v].push_back(edges_.size());
    edges_.push_back({u, 0});
    return edges_.size() - 2;
  }

  std::int64_t max_flow(std::size_t s, std::size_t t) {
    std::int64_t total = 0;
    while (bfs(s, t)) {
      std::fill(it_.begin(), it_.end(), 0);
      while (std::int64_t f = dfs(s, t, std::numeric_limits<std::int64_t>::max())) total += f;
    }
    return total;
  }

  // Flow carried by the forward edge with the given id.
  std::int64_t flow_on(std::size_t id) const { return edges_[id ^ 1].cap; }

 private:
  struct Edge {
    std::size_t to;
    std::int64_t cap;
  };

  bool bfs(std::size_t s, std::size_t t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<std::size_t> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop();
      for (std::size_t id : adj_[u]) {
        const Edge& e = edges_[id];
        if (e.cap > 0 && level_[e.to] < 0) {
          level_[e.to] = level_[u] + 1;
          q.push(e.to);
        }
      }
    }
    return level_[t] >= 0;
  }

  std::int64_t dfs(std::size_t u, std::size_t t, std::int64_t pushed) {
    if (u == t) return pushed;
    for (std::size_t& k = it_[u]; k < adj_[u].size(); ++k) {
      const std::size_t id = adj_[u][k];
      Edge& e = edges_[id];
      if (e.cap <= 0 || level_[e.to] != level_[u] + 1) continue;
      const std::int64_t got = dfs(e.to, t, std::min(pushed, e.cap));
      if (got > 0) {
        e.cap -= got;
        edges_[id ^ 1].cap += got;
        return got;
      }
    }
    return 0;
  }

  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<int> level_;
  std::vector<std::size_t> it_;
};

std::vector<FlowEdge> dinic_flow(const FiniteLaw& mu1, const FiniteLaw& mu2, double delta) {
  const std::size_t m = mu1.size(), n = mu2.size();
  const std::size_t s = m + n, t = m + n + 1;
  Dinic g(m + n + 2);
  const auto a = scaled(mu1.weights()), b = scaled(mu2.weights());
  for (std::size_t i = 0; i < m; ++i) g.add_edge(s, i, a[i]);
  std::vector<std::pair<std::pair<std::size_t, std::size_t>, std::size_t>> middle;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (mu1.distance(i, mu2, j) <= delta) middle.push_back({{i, j}, g.add_edge(i, m + j, a[i])});
  for (std::size_t j = 0; j < n; ++j) g.add_edge(m + j, t, b[j]);
  g.max_flow(s, t);
  std::vector<FlowEdge> flow;
  for (const auto& [ij, id] : middle)
    if (const std::int64_t f = g.flow_on(id); f > 0) flow.push_back({ij.first, ij.second, f});
  return flow;
}

std::vector<FlowEdge> compute_flow(const FiniteLaw& mu1, const FiniteLaw& mu2, double delta, FlowMethod method) {
  if (mu1.is_on_line() != mu2.is_on_line() || (!mu1.is_on_line() && mu1.space() != mu2.space()))
    throw InvariantViolation("Strassen: laws live in different spaces");
  if (!(delta >= 0.0)) throw ParameterError("Strassen: delta must be >= 0");
  const bool line = mu1.is_on_line();
  if (method == FlowMethod::line_greedy && !line) throw ParameterError("line_greedy flow needs laws on the real line");
  if (method == FlowMethod::dinic || !line) return dinic_flow(mu1, mu2, delta);
  return line_flow(mu1, mu2, delta);
}

double flow_value(const std::vector<FlowEdge>& flow) {
  std::int64_t total = 0;
  for (const auto& e : flow) total += e.amount;
  return static_cast<double>(total) / kScale;
}

double max_distance(const FiniteLaw& mu1, const FiniteLaw& mu2) {
  if (mu1.is_on_line() && mu2.is_on_line()) {
    const double lo = std::min(mu1.locations().front(), mu2.locations().front());
    const double hi = std::max(mu1.locations().back(), mu2.locations().back());
    return hi - lo;
  }
  double best = 0.0;
  for (std::size_t i = 0; i < mu1.size(); ++i)
    for (std::size_t j = 0; j < mu2.size(); ++j) best = std::max(best, mu1.distance(i, mu2, j));
  return best;
}

}  // namespace

MetricSpace::MetricSpace(std::vector<std::vector<double>> distances) : d_(std::move(distances)) {
  const std::size_t n = d_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (d_[i].size() != n) throw InvariantViolation("metric space: distance matrix is not square");
    if (d_[i][i] != 0.0) throw InvariantViolation("metric space: nonzero diagonal at " + std::to_string(i));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!(d_[i][j] >= 0.0) || !std::isfinite(d_[i][j]))
        throw InvariantViolation("metric space: negative or non-finite distance");
      if (d_[i][j] != d_[j][i]) throw InvariantViolation("metric space: asymmetric distances");
      for (std::size_t k = 0; k < n; ++k)
        if (d_[i][k] > d_[i][j] + d_[j][k] + 1e-12)
          throw InvariantViolation("metric space: triangle inequality fails at (" + std::to_string(i) + "," +
                                   std::to_string(j) + "," + std::to_string(k) + ")");
    }
}

FiniteLaw FiniteLaw::on_line(std::vector<double> points, std::vector<double> weights) {
  if (points.size() != weights.size()) throw InvariantViolation("finite law: points and weights differ in length");
  check_weights(weights, "finite law");
  for (double p : points)
    if (!std::isfinite(p)) throw InvariantViolation("finite law: non-finite location");
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return points[a] < points[b]; });
  FiniteLaw law;
  for (std::size_t k : order) {
    law.locations_.push_back(points[k]);
    law.weights_.push_back(weights[k]);
  }
  return law;
}

FiniteLaw FiniteLaw::empirical_on_line(std::vector<double> points) {
  if (points.empty()) throw InvariantViolation("finite law: empty support");
  std::sort(points.begin(), points.end());
  // Merge ties so weights stay exact multiples of 1/n.
  std::vector<double> loc, w;
  const double n = static_cast<double>(points.size());
  std::size_t i = 0;
  while (i < points.size()) {
    std::size_t j = i;
    while (j < points.size() && points[j] == points[i]) ++j;
    loc.push_back(points[i]);
    w.push_back(static_cast<double>(j - i) / n);
    i = j;
  }
  FiniteLaw law;
  for (double v : loc)
    if (!std::isfinite(v)) throw InvariantViolation("finite law: non-finite location");
  law.locations_ = std::move(loc);
  law.weights_ = std::move(w);
  double total = std::accumulate(law.weights_.begin(), law.weights_.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-12) throw InvariantViolation("finite law: weights do not sum to one");
  return law;
}

FiniteLaw FiniteLaw::from_distribution(const Distribution& law) {
  if (!law.is_discrete()) throw InvariantViolation("finite law: distribution is not discrete");
  FiniteLaw out;
  for (const Atom& a : law.atoms()) {
    out.locations_.push_back(a.location);
    out.weights_.push_back(a.weight);
  }
  return out;
}

FiniteLaw FiniteLaw::on_space(std::shared_ptr<const MetricSpace> space, std::vector<std::size_t> points,
                              std::vector<double> weights) {
  if (!space) throw InvariantViolation("finite law: null metric space");
  if (points.size() != weights.size()) throw InvariantViolation("finite law: points and weights differ in length");
  check_weights(weights, "finite law");
  for (std::size_t p : points)
    if (p >= space->size()) throw InvariantViolation("finite law: point index outside the metric space");
  FiniteLaw law;
  law.space_ = std::move(space);
  law.points_ = std::move(points);
  law.weights_ = std::move(weights);
  return law;
}

double FiniteLaw::distance(std::size_t i, const FiniteLaw& other, std::size_t j) const {
  if (is_on_line() && other.is_on_line()) return std::abs(locations_[i] - other.locations_[j]);
  if (space_ && space_ == other.space_) return space_->distance(points_[i], other.points_[j]);
  throw InvariantViolation("finite laws live in different spaces");
}

bool Coupling::has_marginals(const FiniteLaw& mu1, const FiniteLaw& mu2, double tol) const {
  if (joint.size() != mu1.size()) return false;
  std::vector<double> col(mu2.size(), 0.0);
  for (std::size_t i = 0; i < joint.size(); ++i) {
    if (joint[i].size() != mu2.size()) return false;
    double row = 0.0;
    for (std::size_t j = 0; j < joint[i].size(); ++j) {
      if (joint[i][j] < -tol) return false;
      row += joint[i][j];
      col[j] += joint[i][j];
    }
    if (std::abs(row - mu1.weight(i)) > tol) return false;
  }
  for (std::size_t j = 0; j < col.size(); ++j)
    if (std::abs(col[j] - mu2.weight(j)) > tol) return false;
  return true;
}

double Coupling::mass_within(const FiniteLaw& mu1, const FiniteLaw& mu2, double delta) const {
  double s = 0.0;
  for (std::size_t i = 0; i < joint.size(); ++i)
    for (std::size_t j = 0; j < joint[i].size(); ++j)
      if (mu1.distance(i, mu2, j) <= delta) s += joint[i][j];
  return s;
}

double strassen_tolerance(const FiniteLaw& mu1, const FiniteLaw& mu2) {
  return 0.5 * static_cast<double>(mu1.size() + mu2.size()) / kScale + 1e-15;
}

double strassen_deficit(const FiniteLaw& mu1, const FiniteLaw& mu2, double delta, FlowMethod method) {
  return std::max(0.0, 1.0 - flow_value(compute_flow(mu1, mu2, delta, method)));
}

std::optional<Coupling> strassen_feasible(const FiniteLaw& mu1, const FiniteLaw& mu2, double delta, double eps,
                                          FlowMethod method) {
  if (!(eps >= 0.0)) throw ParameterError("Strassen: eps must be >= 0");
  const auto flow = compute_flow(mu1, mu2, delta, method);
  if (1.0 - flow_value(flow) > eps + strassen_tolerance(mu1, mu2)) return std::nullopt;

  // Matched mass from the flow, the rest coupled independently.
  Coupling c;
  c.joint.assign(mu1.size(), std::vector<double>(mu2.size(), 0.0));
  for (const auto& e : flow) c.joint[e.from][e.to] += static_cast<double>(e.amount) / kScale;
  std::vector<double> r1(mu1.size()), r2(mu2.size());
  for (std::size_t i = 0; i < mu1.size(); ++i) {
    double row = 0.0;
    for (double v : c.joint[i]) row += v;
    r1[i] = std::max(0.0, mu1.weight(i) - row);
  }
  for (std::size_t j = 0; j < mu2.size(); ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < mu1.size(); ++i) col += c.joint[i][j];
    r2[j] = std::max(0.0, mu2.weight(j) - col);
  }
  const double rest = std::accumulate(r1.begin(), r1.end(), 0.0);
  if (rest > 0.0)
    for (std::size_t i = 0; i < mu1.size(); ++i)
      for (std::size_t j = 0; j < mu2.size(); ++j) c.joint[i][j] += r1[i] * r2[j] / rest;
  return c;
}

double prohorov_distance(const FiniteLaw& mu1, const FiniteLaw& mu2, FlowMethod method) {
  const double tol = strassen_tolerance(mu1, mu2);
  auto feasible = [&](double e) { return strassen_deficit(mu1, mu2, e, method) <= e + tol; };
  if (feasible(0.0)) return 0.0;
  double lo = 0.0, hi = 1.0 + max_distance(mu1, mu2);
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? hi : lo) = mid;
  }
  const double result = 0.5 * (lo + hi);
  if (!feasible(result + 1e-9))
    throw InvariantViolation("prohorov_distance: not feasible just above the returned value " + detail::format_double(result));
  return result;
}

}  // namespace mixrobust
