#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "loopmc/bp.hpp"
#include "loopmc/log_signed.hpp"
#include "loopmc/model.hpp"
#include "loopmc/subgraph.hpp"

namespace loopmc {

// Loop-series term for F in the generalized-loop family:
//   w(empty) = 1,
//   w(F) = prod_{(u,v) in F} (tau_uv(1,1) / (tau_u(1) tau_v(1)) - 1)
//        * prod_{v: d_F(v)>=1} [ tau_v + (-1)^{d_F(v)}
//              (tau_v / (1 - tau_v))^{d_F(v)-1} tau_v ],  tau_v = tau_v(1).
// Computed as sign and log magnitude. Throws std::invalid_argument when F is
// not in the family and degenerate_marginal_error on tau_v within 1e-12 of
// {0,1}.
LogSigned loop_weight(const PairwiseModel& model, const BPFixedPoint& fp,
                      const EdgeSubgraph& subgraph);

// Single-vertex factor of w(F), exposed for direct checks:
// tau + (-1)^d (tau/(1-tau))^{d-1} tau for degree d >= 1.
LogSigned loop_vertex_term(double tau, int d);

// Exhaustive enumeration of subgraphs by class. Guard: m <= 22.
// filter = nullopt keeps every subset (the empty set classifies as Empty).
std::vector<EdgeSubgraph> enumerate_loops(const PairwiseModel& model,
                                          std::optional<LoopClass> filter);

// Guarded exhaustive visitor over all 2^m edge subsets in ascending mask
// order; fn receives (mask, class). Guard: m <= 22.
void for_each_subset(const PairwiseModel& model,
                     const std::function<void(std::uint64_t, LoopClass)>& fn);

enum class SeriesTruncation { Full, TwoRegular };

// Exact series total by enumeration:
//   Full:        sum of w(F) over the empty set and all generalized loops,
//   TwoRegular:  sum over the empty set and all 2-regular loops.
// Fixed ascending-mask order with compensated signed accumulation.
// Guard: m <= 22.
LogSigned ls_oracle(const PairwiseModel& model, const BPFixedPoint& fp,
                    SeriesTruncation truncation);

} // namespace loopmc
