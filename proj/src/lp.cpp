#include "lp.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace sparsegap {

namespace {

// Dense two-phase simplex on min c.x, A x = b, x >= 0 (b >= 0). Bland's rule
// when tol == 0 (exact scalars); Dantzig pivoting with a Bland fallback for
// doubles.
template <typename S>
class Simplex {
 public:
  Simplex(std::vector<std::vector<S>> a, std::vector<S> b, std::vector<S> c,
          S tol)
      : m_(static_cast<int>(a.size())),
        n_(static_cast<int>(c.size())),
        tol_(tol),
        c_(std::move(c)) {
    // Tableau: n structural + m artificial columns + rhs.
    t_.assign(m_, std::vector<S>(n_ + m_ + 1, S(0)));
    basis_.resize(m_);
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < n_; ++j) t_[i][j] = a[i][j];
      t_[i][n_ + i] = S(1);
      t_[i][n_ + m_] = b[i];
      basis_[i] = n_ + i;
    }
  }

  // Returns false when infeasible; objective() and solution() valid otherwise.
  bool solve() {
    // Phase 1: minimize the artificial sum. Objective row priced out against
    // the artificial basis.
    obj_.assign(n_ + m_ + 1, S(0));
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j <= n_ + m_; ++j) obj_[j] -= t_[i][j];
    for (int i = 0; i < m_; ++i) obj_[n_ + i] = S(0);
    run(n_ + m_);
    if (obj_[n_ + m_] < -tol_ - tol_) return false;  // positive optimum
    // Pivot surviving artificials out where a structural column allows it;
    // fully zero rows are redundant and inert.
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      for (int j = 0; j < n_; ++j) {
        if (t_[i][j] > tol_ || t_[i][j] < -tol_) {
          pivot(i, j);
          break;
        }
      }
    }
    // Phase 2.
    obj_.assign(n_ + m_ + 1, S(0));
    for (int j = 0; j < n_; ++j) obj_[j] = c_[j];
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] >= n_) continue;
      S coef = obj_[basis_[i]];
      if (coef == S(0)) continue;
      for (int j = 0; j <= n_ + m_; ++j) obj_[j] -= coef * t_[i][j];
    }
    run(n_);
    return true;
  }

  S objective() const { return -obj_[n_ + m_]; }

  std::vector<S> solution() const {
    std::vector<S> x(n_, S(0));
    for (int i = 0; i < m_; ++i)
      if (basis_[i] < n_) x[basis_[i]] = t_[i][n_ + m_];
    return x;
  }

 private:
  void pivot(int row, int col) {
    S inv = t_[row][col];
    for (int j = 0; j <= n_ + m_; ++j) t_[row][j] /= inv;
    for (int i = 0; i < m_; ++i) {
      if (i == row) continue;
      S f = t_[i][col];
      if (f == S(0)) continue;
      for (int j = 0; j <= n_ + m_; ++j) t_[i][j] -= f * t_[row][j];
    }
    S f = obj_[col];
    if (f != S(0))
      for (int j = 0; j <= n_ + m_; ++j) obj_[j] -= f * t_[row][j];
    basis_[row] = col;
  }

  void run(int ncols) {
    bool bland = (tol_ == S(0));
    long iterations = 0;
    for (;;) {
      if (++iterations > 20000) bland = true;  // anti-cycling fallback
      if (iterations > 2000000)
        throw std::runtime_error("simplex iteration limit exceeded");
      int col = -1;
      if (bland) {
        for (int j = 0; j < ncols; ++j)
          if (obj_[j] < -tol_) { col = j; break; }
      } else {
        S best = -tol_;
        for (int j = 0; j < ncols; ++j)
          if (obj_[j] < best) { best = obj_[j]; col = j; }
      }
      if (col < 0) return;  // optimal
      int row = -1;
      S best_ratio = S(0);
      for (int i = 0; i < m_; ++i) {
        if (t_[i][col] <= tol_) continue;
        S ratio = t_[i][n_ + m_] / t_[i][col];
        if (row < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[row])) {
          row = i;
          best_ratio = ratio;
        }
      }
      if (row < 0) throw std::runtime_error("simplex: unbounded program");
      pivot(row, col);
    }
  }

  int m_, n_;
  S tol_;
  std::vector<S> c_;
  std::vector<std::vector<S>> t_;
  std::vector<S> obj_;
  std::vector<int> basis_;
};

template <typename S>
S scalar_from_rational(const Rational& r);
template <>
Rational scalar_from_rational<Rational>(const Rational& r) { return r; }
template <>
double scalar_from_rational<double>(const Rational& r) {
  return rational_double(r);
}

template <typename S>
struct RawResult {
  bool feasible = false;
  S value{};
  std::vector<S> x;
};

template <typename S>
RawResult<S> solve_congestion(int n, const std::vector<LpEdge>& edges,
                              const std::vector<LpCommodity>& commodities,
                              S tol) {
  int E = static_cast<int>(edges.size());
  int K = static_cast<int>(commodities.size());
  int nvar = 2 * K * E + 1 + E;  // arc flows, z, capacity slacks
  int zcol = 2 * K * E;
  std::vector<std::vector<S>> a;
  std::vector<S> b;
  auto fpos = [E](int k, int e) { return k * 2 * E + 2 * e; };

  for (int k = 0; k < K; ++k) {
    const auto& cm = commodities[k];
    for (int v = 0; v < n; ++v) {
      if (v == cm.t) continue;
      std::vector<S> row(nvar, S(0));
      for (int e = 0; e < E; ++e) {
        if (edges[e].u == v) {
          row[fpos(k, e)] += S(1);      // outgoing u -> v orientation
          row[fpos(k, e) + 1] -= S(1);
        } else if (edges[e].v == v) {
          row[fpos(k, e)] -= S(1);
          row[fpos(k, e) + 1] += S(1);
        }
      }
      bool any = false;
      for (const S& x : row) any = any || x != S(0);
      S rhs = (v == cm.s) ? scalar_from_rational<S>(cm.demand) : S(0);
      if (!any && rhs == S(0)) continue;  // isolated vertex, vacuous row
      a.push_back(std::move(row));
      b.push_back(rhs);
    }
  }
  for (int e = 0; e < E; ++e) {
    std::vector<S> row(nvar, S(0));
    for (int k = 0; k < K; ++k) {
      row[fpos(k, e)] = S(1);
      row[fpos(k, e) + 1] = S(1);
    }
    row[zcol] = -scalar_from_rational<S>(edges[e].cap);
    row[zcol + 1 + e] = S(1);
    a.push_back(std::move(row));
    b.push_back(S(0));
  }
  std::vector<S> c(nvar, S(0));
  c[zcol] = S(1);

  Simplex<S> lp(std::move(a), std::move(b), std::move(c), tol);
  RawResult<S> out;
  out.feasible = lp.solve();
  if (out.feasible) {
    out.value = lp.objective();
    out.x = lp.solution();
  }
  return out;
}

}  // namespace

LpResult lp_min_congestion(int n, const std::vector<LpEdge>& edges,
                           const std::vector<LpCommodity>& commodities,
                           bool exact_mode) {
  if (n > 200) throw std::invalid_argument("LP oracle guarded to n <= 200");
  std::set<int> endpoints;
  std::vector<LpCommodity> live;
  for (const auto& cm : commodities) {
    if (cm.demand == 0 || cm.s == cm.t) continue;
    if (cm.demand < 0) throw std::invalid_argument("negative demand");
    endpoints.insert(cm.s);
    endpoints.insert(cm.t);
    live.push_back(cm);
  }
  if (endpoints.size() > 12)
    throw std::invalid_argument("LP oracle guarded to <= 12 terminals");

  LpResult result;
  result.exact = exact_mode;
  int E = static_cast<int>(edges.size());
  int K = static_cast<int>(live.size());
  if (K == 0) {
    result.feasible = true;
    result.value = 0;
    result.value_d = 0.0;
    return result;
  }
  result.flow.assign(K, std::vector<double>(E, 0.0));
  if (exact_mode) {
    auto raw = solve_congestion<Rational>(n, edges, live, Rational(0));
    result.feasible = raw.feasible;
    if (raw.feasible) {
      result.value = raw.value;
      result.value_d = rational_double(raw.value);
      for (int k = 0; k < K; ++k)
        for (int e = 0; e < E; ++e)
          result.flow[k][e] = rational_double(raw.x[k * 2 * E + 2 * e] -
                                              raw.x[k * 2 * E + 2 * e + 1]);
    }
  } else {
    auto raw = solve_congestion<double>(n, edges, live, 1e-9);
    result.feasible = raw.feasible;
    if (raw.feasible) {
      result.value_d = raw.value;
      for (int k = 0; k < K; ++k)
        for (int e = 0; e < E; ++e)
          result.flow[k][e] =
              raw.x[k * 2 * E + 2 * e] - raw.x[k * 2 * E + 2 * e + 1];
    }
  }
  return result;
}

LpResult lp_min_congestion(const CapacitatedGraph& g, const Demand& d,
                           bool exact_mode) {
  std::vector<LpEdge> edges;
  for (const auto& e : g.edges)
    edges.push_back({e.u, e.v, Rational(e.cap)});
  std::vector<LpCommodity> commodities;
  for (const auto& [key, val] : d.entries)
    commodities.push_back({key.first, key.second, val});
  return lp_min_congestion(g.n, edges, commodities, exact_mode);
}

LpResult lp_min_congestion(const ContractedGraph& h,
                           const CapacitatedGraph& g, const Demand& d,
                           bool exact_mode) {
  std::vector<LpEdge> edges;
  for (const auto& e : h.edges) edges.push_back({e.a, e.b, Rational(e.cap)});
  std::map<int, int> cluster_of_terminal;
  for (std::size_t i = 0; i < g.terminals.size(); ++i)
    cluster_of_terminal[g.terminals[i]] = h.terminal_cluster[i];
  std::vector<LpCommodity> commodities;
  for (const auto& [key, val] : d.entries) {
    auto it = cluster_of_terminal.find(key.first);
    auto jt = cluster_of_terminal.find(key.second);
    if (it == cluster_of_terminal.end() || jt == cluster_of_terminal.end())
      throw std::invalid_argument("demand endpoint is not a terminal");
    commodities.push_back({it->second, jt->second, val});
  }
  return lp_min_congestion(h.f, edges, commodities, exact_mode);
}

}  // namespace sparsegap
