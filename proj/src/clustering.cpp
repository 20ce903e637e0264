#include "clustering.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <stdexcept>

namespace sparsegap {

double ClusterParams::threshold(int i) const {
  return std::pow(s, std::pow(growth, double(i)));
}

ClusterParams ClusterParams::defaults(const InstanceParams& params) {
  ClusterParams cp;
  double log2n = std::log2(double(params.n));
  cp.s = std::exp2(std::pow(log2n, params.beta()));
  double eta = 1.0 - params.epsilon / 2.0;
  cp.growth = std::exp2(eta);
  double l = ((1.0 - params.beta()) * std::log2(log2n) - 7.0) / eta;
  cp.levels = std::max(1, static_cast<int>(std::floor(l)));
  cp.useless_budget = params.n / 200.0;
  cp.bad_budget = 0.96 * params.n;
  cp.bad0_budget = 0.24 * params.n;
  cp.small_cluster = cp.s / 200.0;
  return cp;
}

void ClusterParams::check() const {
  if (s < 2.0) throw std::invalid_argument("cluster size base s must be >= 2");
  if (growth <= 1.0) throw std::invalid_argument("growth exponent must exceed 1");
  if (levels < 1) throw std::invalid_argument("levels must be >= 1");
}

std::vector<std::vector<int>> build_friendship_graph(
    const CapacitatedGraph& g, const Partition& p,
    const std::vector<char>& useless, const std::vector<ClusterGroup>& groups) {
  if (static_cast<int>(useless.size()) != g.n)
    throw std::invalid_argument("useless flag vector has wrong size");
  std::vector<int> group_of(p.cluster_count, -1);
  for (std::size_t gi = 0; gi < groups.size(); ++gi)
    for (int c : groups[gi].members) {
      if (c < 0 || c >= p.cluster_count || group_of[c] != -1)
        throw std::invalid_argument("groups must partition live base clusters");
      group_of[c] = static_cast<int>(gi);
    }
  std::vector<std::set<int>> nb(groups.size());
  for (const auto& e : g.edges) {
    if (useless[e.u] || useless[e.v]) continue;
    int a = group_of[p.cluster_of[e.u]];
    int b = group_of[p.cluster_of[e.v]];
    if (a < 0 || b < 0 || a == b) continue;
    nb[a].insert(b);
    nb[b].insert(a);
  }
  std::vector<std::vector<int>> friends(groups.size());
  for (std::size_t gi = 0; gi < groups.size(); ++gi)
    friends[gi].assign(nb[gi].begin(), nb[gi].end());
  return friends;
}

std::vector<char> classify_level(const std::vector<ClusterGroup>& groups,
                                 const std::vector<std::vector<int>>& friends,
                                 double threshold) {
  std::vector<char> good(groups.size(), 0);
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    long long mass = groups[gi].vertex_count;  // reflexive friendship
    for (int f : friends[gi]) mass += groups[f].vertex_count;
    good[gi] = (double(mass) > threshold) ? 1 : 0;
  }
  return good;
}

ClusteringState cluster_level(const CapacitatedGraph& g, const Partition& p,
                              const std::vector<char>& useless,
                              const ClusteringState& state,
                              const ClusterParams& params) {
  const auto& groups = state.groups;
  auto friends = build_friendship_graph(g, p, useless, groups);
  auto good = classify_level(groups, friends, params.threshold(state.level + 1));

  // Phase 1: centers. A good cluster whose friends (itself included) are all
  // unmarked swallows its friend set.
  std::vector<int> next_of(groups.size(), -1);  // group -> new cluster index
  std::vector<ClusterGroup> next;
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    if (!good[gi] || next_of[gi] != -1) continue;
    bool clear = true;
    for (int f : friends[gi])
      if (next_of[f] != -1) { clear = false; break; }
    if (!clear) continue;
    int idx = static_cast<int>(next.size());
    next.push_back({});
    next_of[gi] = idx;
    for (int f : friends[gi]) next_of[f] = idx;
  }

  // Phase 2: adoption, against the phase-one marks (no cascading).
  std::vector<int> phase1 = next_of;
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    if (!good[gi] || next_of[gi] != -1) continue;
    for (int f : friends[gi]) {
      if (phase1[f] != -1) {
        next_of[gi] = phase1[f];
        break;  // friends list is ascending, so lowest id wins
      }
    }
  }

  // Phase 3: everything still unassigned is discarded.
  ClusteringState out;
  out.level = state.level + 1;
  out.discarded = state.discarded;
  out.bad_counts = state.bad_counts;
  std::vector<int> bad;
  long long bad_vertices = 0;
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    if (next_of[gi] == -1) {
      bad.insert(bad.end(), groups[gi].members.begin(),
                 groups[gi].members.end());
      bad_vertices += groups[gi].vertex_count;
    } else {
      auto& dst = next[next_of[gi]];
      dst.members.insert(dst.members.end(), groups[gi].members.begin(),
                         groups[gi].members.end());
      dst.vertex_count += groups[gi].vertex_count;
    }
  }
  std::sort(bad.begin(), bad.end());
  for (auto& grp : next) std::sort(grp.members.begin(), grp.members.end());
  out.groups = std::move(next);
  out.discarded.push_back(std::move(bad));
  out.bad_counts.push_back(bad_vertices);
  return out;
}

HierarchyResult run_hierarchy(const CapacitatedGraph& g, const Partition& p,
                              const std::vector<char>& useless,
                              const ClusterParams& params) {
  params.check();
  p.check_invariants();
  if (static_cast<int>(p.cluster_of.size()) != g.n)
    throw std::invalid_argument("partition does not cover the vertex set");

  // Level-0 clusters: one group per base cluster, expanded sizes counted with
  // useless vertices included.
  std::vector<long long> sizes(p.cluster_count, 0);
  for (int v = 0; v < g.n; ++v) sizes[p.cluster_of[v]] += 1;
  ClusteringState state;
  state.level = 0;
  state.groups.resize(p.cluster_count);
  for (int c = 0; c < p.cluster_count; ++c)
    state.groups[c] = {{c}, sizes[c]};

  HierarchyResult result;
  long long bad_total = 0;
  for (int i = 0; i < params.levels; ++i) {
    state = cluster_level(g, p, useless, state, params);
    result.level_groups.push_back(state.groups);
    bad_total += state.bad_counts.back();
    if (double(bad_total) > params.bad_budget) {
      result.aborted = true;
      result.abort_level = state.level;
      break;
    }
  }
  result.state = std::move(state);
  return result;
}

namespace {

// Level-0 friendship adjacency over base clusters (all of them, discarded or
// not, since dist_0 is measured in the full level-0 graph).
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

}  // namespace

DiameterReport cluster_diameter_check(const CapacitatedGraph& g,
                                      const Partition& p,
                                      const std::vector<char>& useless,
                                      const HierarchyResult& hierarchy) {
  auto adj = base_friendship(g, p, useless);
  DiameterReport report;
  report.max_by_level.assign(hierarchy.level_groups.size() + 1, 0);
  std::vector<int> dist(p.cluster_count);
  for (std::size_t li = 0; li < hierarchy.level_groups.size(); ++li) {
    int level = static_cast<int>(li) + 1;
    long long bound = 1;
    for (int i = 0; i < level; ++i) bound *= 5;
    bound -= 1;  // 5^i - 1
    for (const auto& grp : hierarchy.level_groups[li]) {
      for (int src : grp.members) {
        std::fill(dist.begin(), dist.end(), -1);
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
        for (int other : grp.members) {
          int d = dist[other];
          if (d < 0 || d > bound) {
            report.ok = false;
            report.witness_level = level;
            report.witness_pair = {src, other};
            return report;
          }
          report.max_by_level[level] =
              std::max(report.max_by_level[level], d);
        }
      }
    }
  }
  return report;
}

}  // namespace sparsegap
