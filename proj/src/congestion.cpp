#include "congestion.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace sparsegap {

LowerBound congestion_lower_bound(const CapacitatedGraph& g, const Demand& d) {
  std::uint64_t ce = g.total_capacity();
  if (ce == 0) throw std::invalid_argument("graph has zero total capacity");
  LowerBound out;
  std::map<int, std::vector<int>> dist_from;
  Rational sum = 0;
  for (const auto& [key, val] : d.entries) {
    if (val == 0) continue;
    auto it = dist_from.find(key.first);
    if (it == dist_from.end())
      it = dist_from.emplace(key.first, bfs_distances(g, {key.first})).first;
    int dist = it->second[key.second];
    if (dist == kUnreachable) {
      out.infinite = true;
      return out;
    }
    sum += val * dist;
  }
  out.value = sum / Rational(ce);
  return out;
}

LowerBound average_congestion_lower_bound(const CapacitatedGraph& g,
                                          const Demand& d) {
  // Shortest-path routing minimizes total flow-length, so the average bound
  // collapses to the same formula.
  return congestion_lower_bound(g, d);
}

Rational routing_congestion(const RationalGraph& graph, const PathFlow& routing,
                            const Demand& demand,
                            const std::vector<std::pair<int, int>>& to_node) {
  std::map<int, int> node_of;
  for (auto [t, node] : to_node) node_of[t] = node;
  std::vector<Rational> load(graph.edges.size(), Rational(0));
  std::map<std::pair<int, int>, Rational> routed;
  for (const auto& path : routing) {
    if (path.value < 0) throw std::invalid_argument("negative path value");
    if (path.vertices.size() != path.edge_ids.size() + 1 ||
        path.vertices.empty())
      throw std::invalid_argument("malformed path");
    for (std::size_t i = 0; i < path.edge_ids.size(); ++i) {
      int eid = path.edge_ids[i];
      if (eid < 0 || eid >= static_cast<int>(graph.edges.size()))
        throw std::invalid_argument("path uses a nonexistent edge");
      const auto& e = graph.edges[eid];
      int a = path.vertices[i], b = path.vertices[i + 1];
      if (!((e.u == a && e.v == b) || (e.u == b && e.v == a)))
        throw std::invalid_argument("path hop does not match its edge");
      load[eid] += path.value;
    }
    auto [t, t2] = path.commodity;
    auto it = node_of.find(t), jt = node_of.find(t2);
    if (it == node_of.end() || jt == node_of.end())
      throw std::invalid_argument("path commodity is not a known terminal");
    int front = path.vertices.front(), back = path.vertices.back();
    bool forward = (front == it->second && back == jt->second);
    bool backward = (front == jt->second && back == it->second);
    if (!forward && !backward)
      throw std::invalid_argument("path endpoints do not match its commodity");
    if (t != t2) routed[{std::min(t, t2), std::max(t, t2)}] += path.value;
  }
  // Exact demand match, both directions.
  for (const auto& [key, val] : demand.entries) {
    auto it = routed.find(key);
    Rational got = (it == routed.end()) ? Rational(0) : it->second;
    if (got != val)
      throw std::invalid_argument("routed totals do not meet the demand");
  }
  for (const auto& [key, val] : routed) {
    if (val == 0) continue;
    auto it = demand.entries.find(key);
    if (it == demand.entries.end() || it->second != val)
      throw std::invalid_argument("routing carries demand not in the matrix");
  }
  Rational cong = 0;
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    if (load[e] == 0) continue;
    if (graph.edges[e].cap <= 0)
      throw std::invalid_argument("positive load on a zero-capacity edge");
    Rational c = load[e] / graph.edges[e].cap;
    if (c > cong) cong = c;
  }
  return cong;
}

Rational routing_congestion(const ContractedGraph& h,
                            const CapacitatedGraph& g, const PathFlow& routing,
                            const Demand& demand) {
  RationalGraph view;
  view.n = h.f;
  for (const auto& e : h.edges)
    view.edges.push_back({e.a, e.b, Rational(e.cap)});
  std::vector<std::pair<int, int>> to_node;
  for (std::size_t i = 0; i < g.terminals.size(); ++i)
    to_node.emplace_back(g.terminals[i], h.terminal_cluster[i]);
  return routing_congestion(view, routing, demand, to_node);
}

namespace {

std::string rational_or_inf(const Rational& r, bool infinite) {
  return infinite ? std::string("inf") : rational_str(r);
}

}  // namespace

std::string certificate_json(const GapCertificate& cert) {
  nlohmann::ordered_json j;
  j["format"] = "sparsegap-cert-1";
  j["params"] = {
      {"n", cert.params.n},
      {"d", cert.params.d},
      {"epsilon", cert.params.epsilon},
      {"seed", cert.params.seed},
      {"k", cert.params.n > 0 ? cert.params.k() : 0},
      {"m", cert.m_target},
      {"cluster_s", cert.cparams.s},
      {"cluster_growth", cert.cparams.growth},
      {"cluster_levels", cert.cparams.levels},
      {"useless_budget", cert.cparams.useless_budget},
      {"bad_budget", cert.cparams.bad_budget},
  };
  j["hashes"] = {
      {"graph", cert.graph_hash},
      {"partition", cert.partition_hash},
      {"demand", cert.demand_hash},
  };
  j["r"] = cert.r;
  j["degenerate_r"] = cert.degenerate_r;
  j["m_achieved"] = cert.m_achieved;
  j["dist_sum"] = cert.dist_sum;
  j["lower_g"] = rational_or_inf(cert.lower_g, cert.lower_infinite);
  j["upper_h"] = rational_str(cert.upper_h);
  j["ratio"] = rational_or_inf(cert.ratio, cert.lower_infinite);
  if (cert.has_lp) {
    nlohmann::ordered_json lp;
    lp["exact"] = cert.lp_exact;
    if (cert.lp_exact) {
      lp["lp_g"] = cert.lp_g_feasible ? rational_str(cert.lp_g) : "infeasible";
      lp["lp_h"] = cert.lp_h_feasible ? rational_str(cert.lp_h) : "infeasible";
    } else {
      if (cert.lp_g_feasible) lp["lp_g"] = cert.lp_g_d;
      else lp["lp_g"] = "infeasible";
      if (cert.lp_h_feasible) lp["lp_h"] = cert.lp_h_d;
      else lp["lp_h"] = "infeasible";
    }
    j["lp"] = lp;
  }
  j["partial"] = cert.partial;
  j["bad_node_vector"] = cert.bad_node_vector;
  j["overlap_q_qa"] = cert.overlap_q_qa;
  j["overlap_q_qb"] = cert.overlap_q_qb;
  j["deviations"] = cert.deviations;
  j["paths"] = {
      {"a", cert.paths_a_file},
      {"b", cert.paths_b_file},
      {"h", cert.paths_h_file},
  };
  return j.dump(2) + "\n";
}

CertifyOutcome certify_gap(const CapacitatedGraph& g, const Partition& p,
                           const CertifyOptions& options) {
  if (auto bad = validate_partition(g, p)) {
    throw std::invalid_argument("terminals " + std::to_string(bad->first) +
                                " and " + std::to_string(bad->second) +
                                " share a cluster");
  }
  CertifyOutcome out;
  out.h = contract(g, p);
  out.book = harvest_pairs(g, p, options.cparams, options.m);
  out.assembly = assemble_demand(g, p, out.h, out.book, options.m);

  GapCertificate& cert = out.cert;
  cert.cparams = options.cparams;
  cert.m_target = options.m;
  cert.m_achieved = static_cast<int>(out.book.pairs.size());
  cert.dist_sum = out.book.dist_sum();
  cert.bad_node_vector = out.book.abort.aborted ? out.book.abort.bad_counts
                                                : out.book.last_bad_counts;
  cert.overlap_q_qa = out.assembly.overlap_q_qa;
  cert.overlap_q_qb = out.assembly.overlap_q_qb;
  if (out.book.abort.aborted) {
    cert.partial = true;
    cert.deviations.push_back(
        "harvest aborted at iteration " +
        std::to_string(out.book.abort.iteration) + ": " +
        out.book.abort.reason);
  }
  if (!out.assembly.routed) {
    cert.partial = true;
    cert.deviations.push_back(std::string("endpoint family ") +
                              out.assembly.infeasible_side +
                              " cannot reach the terminals edge-disjointly");
    return out;
  }
  if (out.assembly.demand.empty_or_zero()) {
    cert.partial = true;
    cert.deviations.push_back("assembled demand is empty");
    return out;
  }

  LowerBound lower = congestion_lower_bound(g, out.assembly.demand);
  cert.lower_infinite = lower.infinite;
  cert.lower_g = lower.value;
  cert.upper_h =
      routing_congestion(out.h, g, out.assembly.h_routing, out.assembly.demand);
  if (!lower.infinite && cert.upper_h != 0)
    cert.ratio = cert.lower_g / cert.upper_h;

  if (options.lp_oracle) {
    cert.has_lp = true;
    cert.lp_exact = options.lp_exact;
    try {
      LpResult lg = lp_min_congestion(g, out.assembly.demand, options.lp_exact);
      cert.lp_g_feasible = lg.feasible;
      cert.lp_g = lg.value;
      cert.lp_g_d = lg.value_d;
      LpResult lh =
          lp_min_congestion(out.h, g, out.assembly.demand, options.lp_exact);
      cert.lp_h_feasible = lh.feasible;
      cert.lp_h = lh.value;
      cert.lp_h_d = lh.value_d;
    } catch (const std::exception& e) {
      cert.has_lp = false;
      cert.deviations.push_back(std::string("lp oracle skipped: ") + e.what());
    }
  }
  return out;
}

ConvexOutcome convex_combine(const CapacitatedGraph& g,
                             const ConvexCombination& mu,
                             const CertifyOptions& options) {
  Rational total = 0;
  for (const auto& [p, pr] : mu.atoms) {
    if (pr <= 0) throw std::invalid_argument("probabilities must be positive");
    total += pr;
  }
  if (total != 1)
    throw std::invalid_argument("probabilities must sum to 1");

  ConvexOutcome out;
  int k = g.k();
  out.h_mu.n = k;
  std::vector<std::pair<int, int>> to_node;
  for (int i = 0; i < k; ++i) to_node.emplace_back(g.terminals[i], i);

  for (const auto& [p, pr] : mu.atoms) {
    CertifyOutcome atom = certify_gap(g, p, options);
    out.partial = out.partial || atom.cert.partial;
    const ContractedGraph& h = atom.h;

    // Relabel: terminal supernodes glue onto 0..k-1; the rest get fresh ids.
    std::vector<int> glued(h.f, -1);
    for (int i = 0; i < k; ++i) glued[h.terminal_cluster[i]] = i;
    for (int c = 0; c < h.f; ++c)
      if (glued[c] < 0) glued[c] = out.h_mu.n++;

    int edge_offset = static_cast<int>(out.h_mu.edges.size());
    for (const auto& e : h.edges)
      out.h_mu.edges.push_back({glued[e.a], glued[e.b], pr * Rational(e.cap)});

    for (const auto& path : atom.assembly.h_routing) {
      FlowPath scaled;
      scaled.value = pr * path.value;
      scaled.commodity = path.commodity;
      for (int v : path.vertices) scaled.vertices.push_back(glued[v]);
      for (int e : path.edge_ids) scaled.edge_ids.push_back(edge_offset + e);
      out.routing.push_back(std::move(scaled));
    }
    for (const auto& [key, val] : atom.assembly.demand.entries)
      out.d_mu.add(key.first, key.second, pr * val);
    out.per_atom.push_back(std::move(atom));
  }

  if (!out.d_mu.empty_or_zero()) {
    LowerBound lower = congestion_lower_bound(g, out.d_mu);
    out.lower_infinite = lower.infinite;
    out.lower_g = lower.value;
    out.upper_h = routing_congestion(out.h_mu, out.routing, out.d_mu, to_node);
    if (!lower.infinite && out.upper_h != 0)
      out.ratio = out.lower_g / out.upper_h;
  } else {
    out.partial = true;
  }
  return out;
}

}  // namespace sparsegap
