#pragma once

#include <cstdint>
#include <vector>

#include "loopmc/bp.hpp"
#include "loopmc/log_signed.hpp"
#include "loopmc/model.hpp"
#include "loopmc/rng.hpp"
#include "loopmc/subgraph.hpp"

namespace loopmc {

enum class BasisMode { MinWeight, Fundamental };

// Proposal moves for the generalized-loop chain: a cycle basis (m - n + 1
// simple cycles) plus one shortest path per unordered vertex pair, both under
// edge cost c(e) = -log magnitude(e) (zero-magnitude edges get a large finite
// cost so paths always exist). XORing any subset of moves can reach every
// subgraph with an even or two-odd defect pattern; Theorem-3 style
// decomposition picks paths by defect pairing and solves the rest in the
// cycle space over GF(2).
struct MoveSet {
    int n = 0;
    std::vector<EdgeSubgraph> cycles;          // basis, each a simple cycle
    std::vector<EdgeSubgraph> paths;           // index via path_index(u,v)
    std::vector<std::pair<int, int>> path_ends;
    int path_index(int u, int v) const;        // u != v, order-insensitive

    int num_moves() const { return static_cast<int>(cycles.size() + paths.size()); }
    const EdgeSubgraph& move(int i) const {
        return i < static_cast<int>(cycles.size())
                   ? cycles[i]
                   : paths[i - static_cast<int>(cycles.size())];
    }
};

// MinWeight: Horton-family candidate cycles filtered to a minimum-cost basis
// by greedy GF(2) independence. Fundamental: cycles induced by the non-tree
// edges of a minimum-cost spanning tree. Ties break by edge index.
MoveSet build_moveset(const PairwiseModel& model, const std::vector<double>& edge_cost,
                      BasisMode mode);
MoveSet build_moveset(const PairwiseModel& model, const BPFixedPoint& fp, BasisMode mode);

// Expresses a generalized loop as a XOR of moves: odd-degree vertices are
// paired in ascending order (v1,v2), (v3,v4), ...; the paired paths reduce F
// to an even subgraph, which is solved in the cycle basis over GF(2).
// Returned indices address MoveSet::move. Throws std::logic_error if the
// residual leaves the cycle space (impossible for a valid basis).
std::vector<int> decompose_loop(const PairwiseModel& model, const MoveSet& moves,
                                const EdgeSubgraph& subgraph);

// Metropolis chain on the generalized-loop family (empty set included) with
// stationary law pi(F) ∝ |w(F)|^beta:
//   B ~ Uniform(moves); accept F ⊕ B with min(1, (|w(F⊕B)|/|w(F)|)^beta)
//   when F ⊕ B stays in the family, otherwise stay.
struct LoopChainState {
    EdgeSubgraph subgraph;
    double log_abs_weight = 0.0; // log |w(F)| at beta = 1

    static LoopChainState empty(const PairwiseModel& model);
};

bool loop_chain_step(LoopChainState& state, const PairwiseModel& model,
                     const BPFixedPoint& fp, const MoveSet& moves, double beta,
                     Rng& rng);

// Single-chain sampling: burn_in steps from the empty set, then `count`
// states taken every `thin` steps.
std::vector<EdgeSubgraph> sample_generalized_loops(const PairwiseModel& model,
                                                   const BPFixedPoint& fp,
                                                   const MoveSet& moves, double beta,
                                                   std::int64_t count,
                                                   std::int64_t burn_in,
                                                   std::int64_t thin, Rng& rng);

} // namespace loopmc
