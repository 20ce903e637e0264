#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "clustering.hpp"
#include "graph.hpp"
#include "lp.hpp"
#include "pairs.hpp"
#include "rational.hpp"
#include "surgery.hpp"

namespace sparsegap {

struct LowerBound {
  bool infinite = false;  // demand between disconnected terminals
  Rational value = 0;
};

// Distance dual: sum of demand * hop distance, divided by total capacity.
LowerBound congestion_lower_bound(const CapacitatedGraph& g, const Demand& d);

// Same value by the shortest-path argument; kept as its own entry point
// because the convex-combination bound is stated through it.
LowerBound average_congestion_lower_bound(const CapacitatedGraph& g,
                                          const Demand& d);

// Rational-capacity multigraph, internal to congestion accounting (used for
// glued convex combinations; instance files stay integral).
struct RationalEdge {
  int u, v;
  Rational cap;
};
struct RationalGraph {
  int n = 0;
  std::vector<RationalEdge> edges;
};

// Max over edges of load/capacity. Verifies each path walks real edges and
// that per-commodity routed totals equal the demand exactly; paths whose
// commodity is a self-pair carry load but no demand obligation. to_node maps
// demand endpoints (terminal vertex ids) into the routing graph's vertices.
Rational routing_congestion(const RationalGraph& graph, const PathFlow& routing,
                            const Demand& demand,
                            const std::vector<std::pair<int, int>>& to_node);

// Convenience: routing in the contracted graph against a terminal demand.
Rational routing_congestion(const ContractedGraph& h,
                            const CapacitatedGraph& g, const PathFlow& routing,
                            const Demand& demand);

struct GapCertificate {
  InstanceParams params;
  ClusterParams cparams;
  int m_target = 0;
  int m_achieved = 0;
  int r = 0;
  bool degenerate_r = false;
  std::string graph_hash, partition_hash, demand_hash;
  bool partial = false;
  std::vector<std::string> deviations;
  std::vector<long long> bad_node_vector;
  long long dist_sum = 0;
  std::uint64_t overlap_q_qa = 0, overlap_q_qb = 0;
  bool lower_infinite = false;
  Rational lower_g = 0;
  Rational upper_h = 0;
  Rational ratio = 0;  // lower_g / upper_h, 0 when upper_h == 0
  bool has_lp = false;
  bool lp_exact = false;
  bool lp_g_feasible = false, lp_h_feasible = false;
  Rational lp_g = 0, lp_h = 0;      // exact mode
  double lp_g_d = 0.0, lp_h_d = 0.0;
  std::string paths_a_file, paths_b_file, paths_h_file;
};

// Canonical JSON bytes (fixed key order, rationals as "num/den" strings).
std::string certificate_json(const GapCertificate& cert);

struct CertifyOptions {
  ClusterParams cparams;
  int m = 1;
  bool lp_oracle = false;
  bool lp_exact = false;
};

struct CertifyOutcome {
  GapCertificate cert;
  ContractedGraph h;
  PairBook book;
  DemandAssembly assembly;
};

// contract -> harvest -> assemble -> both bounds (+ optional LP oracles).
// Aborts surface as partial certificates, never exceptions.
CertifyOutcome certify_gap(const CapacitatedGraph& g, const Partition& p,
                           const CertifyOptions& options);

struct ConvexCombination {
  std::vector<std::pair<Partition, Rational>> atoms;  // probabilities sum to 1
};

struct ConvexOutcome {
  RationalGraph h_mu;
  // Glued vertex ids: terminal i of g -> i; per-copy non-terminal supernodes
  // follow, copy by copy.
  Demand d_mu;
  PathFlow routing;  // per-copy scaled routings, relabeled into h_mu
  bool partial = false;
  bool lower_infinite = false;
  Rational lower_g = 0, upper_h = 0, ratio = 0;
  std::vector<CertifyOutcome> per_atom;
};

ConvexOutcome convex_combine(const CapacitatedGraph& g,
                             const ConvexCombination& mu,
                             const CertifyOptions& options);

}  // namespace sparsegap
