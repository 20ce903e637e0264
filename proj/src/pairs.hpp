#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "clustering.hpp"
#include "graph.hpp"
#include "surgery.hpp"

namespace sparsegap {

struct TypicalPair {
  int a = -1;
  int b = -1;
  std::vector<int> hpath;    // base cluster ids, F(a) .. F(b)
  std::vector<int> support;  // one G-edge id per hop
  long long dist_g = 0;      // hop distance of (a, b) in G
};

struct HarvestAbort {
  bool aborted = false;
  int iteration = -1;  // 0-based iteration that failed
  int level = -1;
  std::vector<long long> bad_counts;
  std::string reason;
};

struct PairBook {
  std::vector<TypicalPair> pairs;
  std::vector<char> useless;  // V_U after the last completed iteration
  int m_target = 0;
  HarvestAbort abort;
  std::vector<long long> last_bad_counts;  // b_i of the last clean clustering

  long long useless_count() const;
  long long dist_sum() const;  // sum of dist_g over pairs
};

// Deterministic typical pair off a finished hierarchy: the surviving level-l
// cluster with the highest non-useless fraction (ties: first group), its
// lowest-id non-useless vertex, and the non-useless vertex of the cluster
// farthest from it in G (ties: lowest id). The returned cluster path is a
// canonical shortest path in the level-0 friendship graph.
// Throws std::runtime_error when no surviving cluster has a usable vertex.
TypicalPair find_typical_pair(const CapacitatedGraph& g, const Partition& p,
                              const std::vector<char>& useless,
                              const HierarchyResult& hierarchy);

// One lowest-id G-edge between non-useless vertices per cluster-path hop.
std::vector<int> supporting_edge_set(const std::vector<int>& hpath,
                                     const CapacitatedGraph& g,
                                     const Partition& p,
                                     const std::vector<char>& useless);

// m rounds of cluster + extract; the useless set absorbs the supporting edge
// endpoints and both pair endpoints after each round. Stops early (partial
// book) when clustering aborts or the useless budget is exhausted.
PairBook harvest_pairs(const CapacitatedGraph& g, const Partition& p,
                       const ClusterParams& cparams, int m);

struct DemandAssembly {
  bool routed = false;
  char infeasible_side = 0;        // 'A' or 'B' when !routed
  std::vector<int> cut_witness;    // from the failing routing call
  std::vector<int> term_a, term_b;  // t_i, t'_i per pair
  // G-paths a_i -> t_i and b_i -> t'_i with their edge ids.
  std::vector<std::vector<int>> qa_paths, qb_paths;
  std::vector<std::vector<int>> qa_edges, qb_edges;
  Demand demand;        // multiplicity over unordered (t_i, t'_i), self-pairs dropped
  PathFlow h_routing;   // one unit path per pair, t_i .. t'_i over supernodes
  // Diagnostic overlap counts: superedges shared between the typical segments
  // and each endpoint family.
  std::uint64_t overlap_q_qa = 0, overlap_q_qb = 0;
};

// Routes both endpoint families to the terminals edge-disjointly, builds the
// three-segment H-paths, and reads off the demand.
DemandAssembly assemble_demand(const CapacitatedGraph& g, const Partition& p,
                               const ContractedGraph& h, const PairBook& book,
                               int m);

}  // namespace sparsegap
