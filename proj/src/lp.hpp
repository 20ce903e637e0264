#pragma once

#include <vector>

#include "graph.hpp"
#include "rational.hpp"

namespace sparsegap {

struct LpEdge {
  int u, v;
  Rational cap;
};

struct LpCommodity {
  int s, t;
  Rational demand;
};

struct LpResult {
  bool feasible = false;
  bool exact = false;      // true: value is exact rational; false: value_d
  Rational value = 0;      // exact mode only
  double value_d = 0.0;
  // Net flow per commodity per edge, oriented u -> v (double view in both
  // modes; a witness, not part of any certificate).
  std::vector<std::vector<double>> flow;
};

// Minimum congestion routing the commodities simultaneously: edge-based
// formulation, one directed flow pair per (commodity, edge), per-edge capacity
// rows cap*z, minimize z. Two-phase dense simplex; exact rationals with
// Bland's rule, or doubles with Dantzig pivoting and 1e-9 tolerances.
// Guarded to oracle scale (n <= 200, <= 12 commodities).
LpResult lp_min_congestion(int n, const std::vector<LpEdge>& edges,
                           const std::vector<LpCommodity>& commodities,
                           bool exact_mode);

// Convenience wrappers. Demand keys are terminal vertex ids; the contracted
// wrapper maps them through the partition's terminal clusters.
LpResult lp_min_congestion(const CapacitatedGraph& g, const Demand& d,
                           bool exact_mode);
LpResult lp_min_congestion(const ContractedGraph& h,
                           const CapacitatedGraph& g, const Demand& d,
                           bool exact_mode);

}  // namespace sparsegap
