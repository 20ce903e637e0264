#include "routing.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>
#include <stdexcept>

namespace sparsegap {

namespace {

struct Arc {
  int to;
  std::int64_t cap;   // residual
  std::int64_t init;  // initial capacity
  int orig_edge;      // aux edge id
  int rev;            // index of the reverse arc in arcs[to]
};

class Dinic {
 public:
  explicit Dinic(int n) : adj_(n), level_(n), iter_(n) {}

  void add_undirected(int u, int v, std::int64_t cap, int edge_id) {
    add_pair(u, v, cap, cap, edge_id);
  }
  void add_directed(int u, int v, std::int64_t cap, int edge_id) {
    add_pair(u, v, cap, 0, edge_id);
  }

  std::int64_t max_flow(int s, int t) {
    std::int64_t flow = 0;
    while (bfs(s, t)) {
      std::fill(iter_.begin(), iter_.end(), 0);
      while (std::int64_t pushed =
                 dfs(s, t, std::numeric_limits<std::int64_t>::max()))
        flow += pushed;
    }
    return flow;
  }

  // Signed flow pushed through each arc (init - residual).
  std::vector<std::vector<Arc>>& arcs() { return adj_; }

  std::vector<int> source_side(int s) {
    bfs(s, -1);
    std::vector<int> side;
    for (std::size_t v = 0; v < adj_.size(); ++v)
      if (level_[v] >= 0) side.push_back(static_cast<int>(v));
    return side;
  }

 private:
  void add_pair(int u, int v, std::int64_t cap_fwd, std::int64_t cap_rev,
                int edge_id) {
    adj_[u].push_back(
        {v, cap_fwd, cap_fwd, edge_id, static_cast<int>(adj_[v].size())});
    adj_[v].push_back(
        {u, cap_rev, cap_rev, edge_id, static_cast<int>(adj_[u].size()) - 1});
  }

  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::deque<int> q{s};
    level_[s] = 0;
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      for (const Arc& a : adj_[v]) {
        if (a.cap > 0 && level_[a.to] < 0) {
          level_[a.to] = level_[v] + 1;
          q.push_back(a.to);
        }
      }
    }
    return t >= 0 && level_[t] >= 0;
  }

  std::int64_t dfs(int v, int t, std::int64_t limit) {
    if (v == t) return limit;
    for (int& i = iter_[v]; i < static_cast<int>(adj_[v].size()); ++i) {
      Arc& a = adj_[v][i];
      if (a.cap > 0 && level_[a.to] == level_[v] + 1) {
        std::int64_t got = dfs(a.to, t, std::min(limit, a.cap));
        if (got > 0) {
          a.cap -= got;
          adj_[a.to][a.rev].cap += got;
          return got;
        }
      }
    }
    return 0;
  }

  std::vector<std::vector<Arc>> adj_;
  std::vector<int> level_;
  std::vector<int> iter_;
};

}  // namespace

AuxGraph build_aux_graph(const CapacitatedGraph& g, const std::vector<int>& U,
                         int m) {
  for (int u : U)
    if (u < 0 || u >= g.n) throw std::invalid_argument("U id out of range");
  AuxGraph aux;
  aux.n = g.n + 2;
  aux.source = g.n;
  aux.sink = g.n + 1;
  aux.edges = g.edges;
  int next_id = g.m();
  for (int t : g.terminals)
    aux.edges.push_back({next_id++, aux.source, t,
                         static_cast<std::uint64_t>(m) + 1});
  for (int u : U)
    aux.edges.push_back({next_id++, aux.sink, u, 1});
  return aux;
}

std::uint64_t maxflow_value(const AuxGraph& aux) {
  Dinic dinic(aux.n);
  for (const auto& e : aux.edges) {
    bool terminal_side = (e.u == aux.source || e.v == aux.source ||
                          e.u == aux.sink || e.v == aux.sink);
    if (terminal_side) {
      int outer = (e.u == aux.source || e.u == aux.sink) ? e.u : e.v;
      int inner = (outer == e.u) ? e.v : e.u;
      if (outer == aux.source)
        dinic.add_directed(aux.source, inner, static_cast<std::int64_t>(e.cap),
                           e.id);
      else
        dinic.add_directed(inner, aux.sink, static_cast<std::int64_t>(e.cap),
                           e.id);
    } else {
      dinic.add_undirected(e.u, e.v, static_cast<std::int64_t>(e.cap), e.id);
    }
  }
  return static_cast<std::uint64_t>(dinic.max_flow(aux.source, aux.sink));
}

std::uint64_t mincut_brute_oracle(const AuxGraph& aux) {
  if (aux.n > 14)
    throw std::invalid_argument("brute mincut guarded to n(G*) <= 14");
  std::vector<int> inner;
  for (int v = 0; v < aux.n; ++v)
    if (v != aux.source && v != aux.sink) inner.push_back(v);
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  std::uint32_t subsets = 1u << inner.size();
  std::vector<char> side(aux.n, 0);
  for (std::uint32_t mask = 0; mask < subsets; ++mask) {
    std::fill(side.begin(), side.end(), 0);
    side[aux.source] = 1;
    for (std::size_t i = 0; i < inner.size(); ++i)
      if ((mask >> i) & 1) side[inner[i]] = 1;
    std::uint64_t cut = 0;
    for (const auto& e : aux.edges)
      if (side[e.u] != side[e.v]) cut += e.cap;
    best = std::min(best, cut);
  }
  return best;
}

RoutingResult route_to_terminals(const CapacitatedGraph& g,
                                 const std::vector<int>& U, int m) {
  std::set<int> distinct(U.begin(), U.end());
  if (distinct.size() != U.size())
    throw std::invalid_argument("U must contain distinct vertices");
  AuxGraph aux = build_aux_graph(g, U, m);
  Dinic dinic(aux.n);
  for (const auto& e : aux.edges) {
    if (e.u == aux.source)
      dinic.add_directed(aux.source, e.v, static_cast<std::int64_t>(e.cap),
                         e.id);
    else if (e.u == aux.sink)
      dinic.add_directed(e.v, aux.sink, static_cast<std::int64_t>(e.cap), e.id);
    else
      dinic.add_undirected(e.u, e.v, static_cast<std::int64_t>(e.cap), e.id);
  }
  RoutingResult result;
  result.flow_value =
      static_cast<std::uint64_t>(dinic.max_flow(aux.source, aux.sink));
  result.feasible = result.flow_value == U.size();
  if (!result.feasible) {
    for (int v : dinic.source_side(aux.source))
      if (v < g.n) result.cut_witness.push_back(v);
    return result;
  }

  // Per-arc pushed flow; mutual-reverse pairs mean one direction is already
  // nonpositive, so positive entries carry the whole decomposition.
  auto& arcs = dinic.arcs();
  std::vector<std::vector<std::int64_t>> flow(arcs.size());
  for (std::size_t v = 0; v < arcs.size(); ++v) {
    flow[v].resize(arcs[v].size());
    for (std::size_t i = 0; i < arcs[v].size(); ++i)
      flow[v][i] = arcs[v][i].init - arcs[v][i].cap;
  }

  std::map<int, std::vector<int>> path_of_u;  // routed u -> vertex path u..t
  std::map<int, std::vector<int>> edges_of_u;
  for (std::uint64_t unit = 0; unit < result.flow_value; ++unit) {
    // Trace source -> sink, lowest aux-edge id first, canceling cycles.
    std::vector<int> vpath{aux.source};
    std::vector<std::pair<int, int>> apath;  // (vertex, arc index)
    std::vector<int> seen_pos(aux.n, -1);
    seen_pos[aux.source] = 0;
    int v = aux.source;
    while (v != aux.sink) {
      int best_arc = -1, best_edge = std::numeric_limits<int>::max();
      for (std::size_t i = 0; i < arcs[v].size(); ++i) {
        if (flow[v][i] > 0 && arcs[v][i].orig_edge < best_edge) {
          best_edge = arcs[v][i].orig_edge;
          best_arc = static_cast<int>(i);
        }
      }
      if (best_arc < 0)
        throw std::logic_error("flow conservation violated during trace");
      int w = arcs[v][best_arc].to;
      if (seen_pos[w] >= 0 && w != aux.sink) {
        // Cancel the cycle w..v->w and resume from w.
        int pos = seen_pos[w];
        flow[v][best_arc] -= 1;
        while (static_cast<int>(apath.size()) > pos) {
          auto [pv, pi] = apath.back();
          apath.pop_back();
          seen_pos[vpath.back()] = -1;
          vpath.pop_back();
          flow[pv][pi] -= 1;
        }
        seen_pos[w] = pos;
        v = w;
        continue;
      }
      apath.emplace_back(v, best_arc);
      vpath.push_back(w);
      if (w != aux.sink) seen_pos[w] = static_cast<int>(apath.size());
      v = w;
    }
    for (auto [pv, pi] : apath) flow[pv][pi] -= 1;
    // vpath = source, t, ..., u, sink.
    int u = vpath[vpath.size() - 2];
    std::vector<int> gpath(vpath.rbegin() + 1, vpath.rend() - 1);  // u .. t
    std::vector<int> eids;
    for (std::size_t i = 1; i + 1 < apath.size(); ++i) {
      int eid = arcs[apath[i].first][apath[i].second].orig_edge;
      eids.push_back(eid);
      result.edge_usage[eid] += 1;
    }
    std::reverse(eids.begin(), eids.end());
    path_of_u[u] = std::move(gpath);
    edges_of_u[u] = std::move(eids);
  }
  for (int u : U) {
    auto it = path_of_u.find(u);
    if (it == path_of_u.end())
      throw std::logic_error("routed flow missed a requested vertex");
    result.paths.push_back(it->second);
    result.path_edges.push_back(edges_of_u[u]);
  }
  return result;
}

}  // namespace sparsegap
