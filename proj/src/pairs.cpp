#include "pairs.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>
#include <stdexcept>

#include "routing.hpp"

namespace sparsegap {

long long PairBook::useless_count() const {
  long long c = 0;
  for (char f : useless) c += f;
  return c;
}

long long PairBook::dist_sum() const {
  long long s = 0;
  for (const auto& pr : pairs) s += pr.dist_g;
  return s;
}

namespace {

std::vector<std::vector<int>> base_friendship(const CapacitatedGraph& g,
                                              const Partition& p,
                                              const std::vector<char>& useless) {
  std::vector<std::set<int>> nb(p.cluster_count);
  for (const auto& e : g.edges) {
    if (useless[e.u] || useless[e.v]) continue;
    int a = p.cluster_of[e.u], b = p.cluster_of[e.v];
    if (a == b) continue;
    nb[a].insert(b);
    nb[b].insert(a);
  }
  std::vector<std::vector<int>> adj(p.cluster_count);
  for (int c = 0; c < p.cluster_count; ++c)
    adj[c].assign(nb[c].begin(), nb[c].end());
  return adj;
}

// Canonical shortest cluster path: BFS distances from src, then walk back
// from dst always taking the lowest-id neighbor one step closer.
std::vector<int> shortest_cluster_path(const std::vector<std::vector<int>>& adj,
                                       int src, int dst) {
  std::vector<int> dist(adj.size(), -1);
  std::deque<int> q{src};
  dist[src] = 0;
  while (!q.empty()) {
    int c = q.front();
    q.pop_front();
    for (int w : adj[c])
      if (dist[w] < 0) {
        dist[w] = dist[c] + 1;
        q.push_back(w);
      }
  }
  if (dist[dst] < 0)
    throw std::logic_error("typical pair clusters disconnected at level 0");
  std::vector<int> rev{dst};
  int cur = dst;
  while (cur != src) {
    int next = -1;
    for (int w : adj[cur])
      if (dist[w] == dist[cur] - 1) { next = w; break; }  // ids ascending
    if (next < 0) throw std::logic_error("broken BFS tree");
    rev.push_back(next);
    cur = next;
  }
  std::reverse(rev.begin(), rev.end());
  return rev;
}

std::vector<int> bfs_from(const CapacitatedGraph& g, int src) {
  std::vector<int> dist(g.n, kUnreachable);
  auto adj = g.adjacency();
  std::deque<int> q{src};
  dist[src] = 0;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (auto [w, eid] : adj[v])
      if (dist[w] == kUnreachable) {
        dist[w] = dist[v] + 1;
        q.push_back(w);
      }
  }
  return dist;
}

}  // namespace

TypicalPair find_typical_pair(const CapacitatedGraph& g, const Partition& p,
                              const std::vector<char>& useless,
                              const HierarchyResult& hierarchy) {
  const auto& groups = hierarchy.state.groups;
  if (groups.empty())
    throw std::runtime_error("no surviving cluster at the final level");

  // Expanded vertex lists per base cluster.
  std::vector<std::vector<int>> members(p.cluster_count);
  for (int v = 0; v < g.n; ++v) members[p.cluster_of[v]].push_back(v);

  // Pick the surviving cluster with the highest non-useless fraction.
  int best = -1;
  long long best_num = 0, best_den = 1;
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    long long live = 0, total = 0;
    for (int c : groups[gi].members) {
      total += static_cast<long long>(members[c].size());
      for (int v : members[c]) live += !useless[v];
    }
    if (total == 0) continue;
    // live/total > best_num/best_den, cross-multiplied.
    if (best < 0 || live * best_den > best_num * total) {
      best = static_cast<int>(gi);
      best_num = live;
      best_den = total;
    }
  }
  if (best < 0 || best_num == 0)
    throw std::runtime_error("no non-useless vertex in any surviving cluster");

  std::vector<int> live_vertices;
  for (int c : groups[best].members)
    for (int v : members[c])
      if (!useless[v]) live_vertices.push_back(v);
  std::sort(live_vertices.begin(), live_vertices.end());

  TypicalPair pair;
  pair.a = live_vertices.front();
  auto dist = bfs_from(g, pair.a);
  long long far = -1;
  for (int v : live_vertices) {
    if (dist[v] == kUnreachable) continue;
    if (dist[v] > far) {  // ties keep the earlier (lower) id
      far = dist[v];
      pair.b = v;
    }
  }
  if (pair.b < 0)
    throw std::runtime_error("typical endpoints disconnected in G");
  pair.dist_g = far;

  auto adj0 = base_friendship(g, p, useless);
  pair.hpath =
      shortest_cluster_path(adj0, p.cluster_of[pair.a], p.cluster_of[pair.b]);
  return pair;
}

std::vector<int> supporting_edge_set(const std::vector<int>& hpath,
                                     const CapacitatedGraph& g,
                                     const Partition& p,
                                     const std::vector<char>& useless) {
  std::vector<int> support;
  if (hpath.size() < 2) return support;
  for (std::size_t i = 0; i + 1 < hpath.size(); ++i) {
    int ca = hpath[i], cb = hpath[i + 1];
    int chosen = -1;
    for (const auto& e : g.edges) {
      if (useless[e.u] || useless[e.v]) continue;
      int fu = p.cluster_of[e.u], fv = p.cluster_of[e.v];
      if ((fu == ca && fv == cb) || (fu == cb && fv == ca)) {
        chosen = e.id;  // edges scanned in ascending id order
        break;
      }
    }
    if (chosen < 0)
      throw std::logic_error("cluster-path hop without a live crossing edge");
    support.push_back(chosen);
  }
  return support;
}

PairBook harvest_pairs(const CapacitatedGraph& g, const Partition& p,
                       const ClusterParams& cparams, int m) {
  PairBook book;
  book.m_target = m;
  book.useless.assign(g.n, 0);
  for (int it = 0; it < m; ++it) {
    if (double(book.useless_count()) > cparams.useless_budget) {
      book.abort = {true, it, -1, {}, "useless budget exhausted"};
      return book;
    }
    HierarchyResult hier;
    try {
      hier = run_hierarchy(g, p, book.useless, cparams);
    } catch (const std::exception& e) {
      book.abort = {true, it, -1, {}, e.what()};
      return book;
    }
    if (hier.aborted) {
      book.abort = {true, it, hier.abort_level, hier.state.bad_counts,
                    "bad budget exceeded"};
      return book;
    }
    book.last_bad_counts = hier.state.bad_counts;
    TypicalPair pair;
    try {
      pair = find_typical_pair(g, p, book.useless, hier);
      pair.support = supporting_edge_set(pair.hpath, g, p, book.useless);
    } catch (const std::exception& e) {
      book.abort = {true, it, hier.state.level, hier.state.bad_counts,
                    e.what()};
      return book;
    }
    book.useless[pair.a] = 1;
    book.useless[pair.b] = 1;
    for (int eid : pair.support) {
      book.useless[g.edges[eid].u] = 1;
      book.useless[g.edges[eid].v] = 1;
    }
    book.pairs.push_back(std::move(pair));
  }
  return book;
}

DemandAssembly assemble_demand(const CapacitatedGraph& g, const Partition& p,
                               const ContractedGraph& h, const PairBook& book,
                               int m) {
  DemandAssembly out;
  std::vector<int> A, B;
  for (const auto& pr : book.pairs) {
    A.push_back(pr.a);
    B.push_back(pr.b);
  }
  if (A.empty()) {
    out.routed = true;
    return out;
  }
  RoutingResult ra = route_to_terminals(g, A, m);
  if (!ra.feasible) {
    out.infeasible_side = 'A';
    out.cut_witness = ra.cut_witness;
    return out;
  }
  RoutingResult rb = route_to_terminals(g, B, m);
  if (!rb.feasible) {
    out.infeasible_side = 'B';
    out.cut_witness = rb.cut_witness;
    return out;
  }
  out.routed = true;

  std::set<int> q_superedges;
  for (const auto& pr : book.pairs)
    for (std::size_t i = 0; i + 1 < pr.hpath.size(); ++i) {
      int se = h.find_superedge(pr.hpath[i], pr.hpath[i + 1]);
      if (se >= 0) q_superedges.insert(se);
    }

  for (std::size_t i = 0; i < book.pairs.size(); ++i) {
    const auto& pr = book.pairs[i];
    const auto& pa = ra.paths[i];   // a_i .. t_i
    const auto& pb = rb.paths[i];   // b_i .. t'_i
    int ti = pa.back(), tip = pb.back();
    out.term_a.push_back(ti);
    out.term_b.push_back(tip);
    out.qa_paths.push_back(pa);
    out.qa_edges.push_back(ra.path_edges[i]);
    out.qb_paths.push_back(pb);
    out.qb_edges.push_back(rb.path_edges[i]);

    // Three segments in H: t_i -> F(a_i), the typical cluster path, and
    // F(b_i) -> t'_i. Induce the endpoint segments from their G-paths.
    std::vector<int> rev_a(pa.rbegin(), pa.rend());  // t_i .. a_i
    InducedPath seg1 = induce_path(rev_a, p, h);
    InducedPath seg3 = induce_path(pb, p, h);  // F(b_i) .. t'_i as clusters
    for (int se : seg1.superedges)
      if (q_superedges.count(se)) out.overlap_q_qa += 1;
    for (int se : seg3.superedges)
      if (q_superedges.count(se)) out.overlap_q_qb += 1;

    FlowPath fp;
    fp.value = 1;
    fp.commodity = {std::min(ti, tip), std::max(ti, tip)};
    // Concatenate, collapsing the shared junction supernodes.
    auto append = [&fp](const std::vector<int>& nodes,
                        const std::vector<int>& eids) {
      for (std::size_t j = 0; j < nodes.size(); ++j) {
        if (!fp.vertices.empty() && j == 0) {
          if (fp.vertices.back() != nodes[0])
            throw std::logic_error("H-path segments do not join");
          continue;
        }
        fp.vertices.push_back(nodes[j]);
      }
      fp.edge_ids.insert(fp.edge_ids.end(), eids.begin(), eids.end());
    };
    append(seg1.supernodes, seg1.superedges);
    // Typical segment: cluster path with its (merged) superedges.
    std::vector<int> mid_edges;
    for (std::size_t j = 0; j + 1 < pr.hpath.size(); ++j) {
      int se = h.find_superedge(pr.hpath[j], pr.hpath[j + 1]);
      if (se < 0) throw std::logic_error("typical hop missing in H");
      mid_edges.push_back(se);
    }
    append(pr.hpath, mid_edges);
    append(seg3.supernodes, seg3.superedges);
    out.h_routing.push_back(std::move(fp));

    if (ti != tip) out.demand.add(ti, tip, Rational(1));
  }
  return out;
}

}  // namespace sparsegap
