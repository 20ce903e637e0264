#include "graph.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace sparsegap {

std::vector<std::vector<std::pair<int, int>>> CapacitatedGraph::adjacency()
    const {
  std::vector<std::vector<std::pair<int, int>>> adj(n);
  for (const auto& e : edges) {
    adj[e.u].emplace_back(e.v, e.id);
    adj[e.v].emplace_back(e.u, e.id);
  }
  return adj;
}

std::uint64_t CapacitatedGraph::total_capacity() const {
  std::uint64_t total = 0;
  for (const auto& e : edges) total += e.cap;
  return total;
}

void CapacitatedGraph::check_invariants() const {
  std::set<int> seen;
  for (int t : terminals) {
    if (t < 0 || t >= n) throw std::invalid_argument("terminal out of range");
    if (!seen.insert(t).second)
      throw std::invalid_argument("duplicate terminal");
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    if (e.id != static_cast<int>(i))
      throw std::invalid_argument("edge ids must be dense and ordered");
    if (e.u == e.v) throw std::invalid_argument("self-loop");
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
      throw std::invalid_argument("edge endpoint out of range");
  }
}

void Partition::check_invariants() const {
  std::vector<char> used(cluster_count, 0);
  for (int c : cluster_of) {
    if (c < 0 || c >= cluster_count)
      throw std::invalid_argument("cluster id out of range");
    used[c] = 1;
  }
  for (char u : used)
    if (!u) throw std::invalid_argument("cluster ids have gaps");
}

Partition singleton_partition(int n) {
  Partition p;
  p.cluster_of.resize(n);
  for (int i = 0; i < n; ++i) p.cluster_of[i] = i;
  p.cluster_count = n;
  return p;
}

std::optional<std::pair<int, int>> validate_partition(
    const CapacitatedGraph& g, const Partition& p) {
  if (static_cast<int>(p.cluster_of.size()) != g.n)
    throw std::invalid_argument("partition size mismatch");
  for (std::size_t i = 0; i < g.terminals.size(); ++i)
    for (std::size_t j = i + 1; j < g.terminals.size(); ++j)
      if (p.cluster_of[g.terminals[i]] == p.cluster_of[g.terminals[j]])
        return std::make_pair(g.terminals[i], g.terminals[j]);
  return std::nullopt;
}

int ContractedGraph::find_superedge(int a, int b) const {
  if (index_.empty() && !edges.empty()) build_index();
  auto it = index_.find({std::min(a, b), std::max(a, b)});
  return it == index_.end() ? -1 : it->second;
}

void ContractedGraph::build_index() const {
  for (const auto& e : edges) index_[{e.a, e.b}] = e.id;
}

std::vector<std::vector<std::pair<int, int>>> ContractedGraph::adjacency()
    const {
  std::vector<std::vector<std::pair<int, int>>> adj(f);
  for (const auto& e : edges) {
    adj[e.a].emplace_back(e.b, e.id);
    adj[e.b].emplace_back(e.a, e.id);
  }
  return adj;
}

ContractedGraph contract(const CapacitatedGraph& g, const Partition& p) {
  if (static_cast<int>(p.cluster_of.size()) != g.n)
    throw std::invalid_argument("partition size mismatch");
  std::map<std::pair<int, int>, std::vector<int>> crossing;
  for (const auto& e : g.edges) {
    int a = p.cluster_of[e.u], b = p.cluster_of[e.v];
    if (a == b) continue;
    crossing[{std::min(a, b), std::max(a, b)}].push_back(e.id);
  }
  ContractedGraph h;
  h.f = p.cluster_count;
  int next_id = 0;
  for (auto& [key, ids] : crossing) {
    SuperEdge se;
    se.id = next_id++;
    se.a = key.first;
    se.b = key.second;
    std::sort(ids.begin(), ids.end());
    se.orig_edges = ids;
    se.cap = 0;
    for (int eid : ids) se.cap += g.edges[eid].cap;
    h.edges.push_back(std::move(se));
  }
  for (int t : g.terminals) h.terminal_cluster.push_back(p.cluster_of[t]);
  return h;
}

std::vector<int> bfs_distances(const CapacitatedGraph& g,
                               const std::vector<int>& sources) {
  if (sources.empty()) throw std::invalid_argument("no BFS sources");
  for (int s : sources)
    if (s < 0 || s >= g.n) throw std::invalid_argument("source out of range");
  auto adj = g.adjacency();
  std::vector<int> dist(g.n, kUnreachable);
  std::deque<int> queue;
  for (int s : sources) {
    if (dist[s] == kUnreachable) {
      dist[s] = 0;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (auto [w, eid] : adj[v]) {
      (void)eid;
      if (dist[w] == kUnreachable) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

InducedPath induce_path(const std::vector<int>& gpath, const Partition& p,
                        const ContractedGraph& h) {
  InducedPath out;
  for (int v : gpath) {
    int c = p.cluster_of[v];
    if (out.supernodes.empty() || out.supernodes.back() != c) {
      if (!out.supernodes.empty()) {
        int se = h.find_superedge(out.supernodes.back(), c);
        if (se < 0)
          throw std::logic_error("induced hop without a superedge");
        out.superedges.push_back(se);
      }
      out.supernodes.push_back(c);
    }
  }
  return out;
}

void Demand::add(int t, int t2, const Rational& value) {
  if (t == t2) throw std::invalid_argument("self-pair demand");
  if (value < 0) throw std::invalid_argument("negative demand");
  auto key = std::make_pair(std::min(t, t2), std::max(t, t2));
  entries[key] += value;
}

Rational Demand::total() const {
  Rational sum = 0;
  for (const auto& [key, v] : entries) sum += v;
  return sum;
}

bool Demand::empty_or_zero() const {
  for (const auto& [key, v] : entries)
    if (v > 0) return false;
  return true;
}

}  // namespace sparsegap
