#pragma once

#include <cstdint>
#include <vector>

#include "graph.hpp"
#include "rng.hpp"

namespace sparsegap {

struct ExpanderSpec {
  int n = 0;           // even, >= 2
  int d = 10;          // number of matchings
  std::uint64_t seed = 0;
};

// Union of d independent uniform perfect matchings, all capacities 1.
// Each matching is sampled by a Fisher-Yates shuffle of the vertex array and
// pairing positions (2i, 2i+1), which is exactly uniform. Duplicate pairs
// across rounds stay as parallel edges so every degree is exactly d.
CapacitatedGraph gen_matching_union(const ExpanderSpec& spec);

// Exact conductance by subset enumeration; guarded to 2 <= n <= 20.
// Volumes are degree sums with edge multiplicity.
Rational conductance_brute(const CapacitatedGraph& g);

// lambda_2 / 2 of the normalized Laplacian; a Cheeger lower bound on the
// conductance. Throws on a disconnected graph.
double spectral_lower_bound(const CapacitatedGraph& g);

struct ExpansionReport {
  Rational min_ratio;        // worst observed |N(U)| / |U|
  std::vector<int> witness;  // the achieving set U
  bool exhaustive = false;
};

// For n <= 16 exhaustive over all U with |U| <= n/2; otherwise `trials`
// random subsets plus every BFS ball of size <= n/2.
ExpansionReport expansion_check(const CapacitatedGraph& g, int trials,
                                std::uint64_t seed);

}  // namespace sparsegap
