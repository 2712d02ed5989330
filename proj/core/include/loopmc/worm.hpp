#pragma once

#include <cstdint>
#include <vector>

#include "loopmc/model.hpp"
#include "loopmc/rng.hpp"
#include "loopmc/subgraph.hpp"

namespace loopmc {

// Worm chain over edge subsets whose odd-degree vertex count is 0 or 2.
// Stationary law: pi(F) ∝ Psi(F) * prod_{e in F} w(e) with Psi = n on the
// even class and 2 on the two-odd class, where w(e) = exp(log_edge_weight[e]).
//
// One step:
//   even F:    v ~ Uniform(V), u ~ Uniform(N(v)), accept flip of {v,u} with
//              min(1, r);
//   two-odd F: v ~ Uniform(odd(F)), u ~ Uniform(N(v));
//              u = other defect: accept with min(1, r)          (closes),
//              otherwise:        accept with min(1, (d(v)/d(u)) r),
//   r = prod w(e) after the flip / before it.
struct WormState {
    EdgeSubgraph subgraph;
    int odd[2] = {-1, -1}; // defects when odd_degree_count() == 2
    double log_weight = 0.0; // sum of log_edge_weight over present edges

    static WormState empty(const PairwiseModel& model);
};

// Advances the chain by one proposal; returns true when the flip is accepted.
bool worm_step(WormState& state, const PairwiseModel& model,
               const std::vector<double>& log_edge_weight, Rng& rng);

struct WormParams {
    std::int64_t trials = 0;     // N: restarts before giving up
    std::int64_t iterations = 0; // T: worm steps per restart
};

struct WormParamChoice {
    WormParams theorem;
    WormParams practical;
};

// Trial/iteration budgets for failure probability delta in (0,1):
//   theorem:   N = ceil(1.2 n ln(3/delta)),
//              T = ceil((m-n+1) ln 2 + 4 Delta m n^4 ln(3n/delta)),
//   practical: N as above, T = 200 m.
// Throws std::invalid_argument unless 0 < delta < 1.
WormParamChoice default_worm_params(const PairwiseModel& model, double delta);

struct WormStats {
    std::int64_t failed_trials = 0;  // restarts that ended outside the target class
    std::int64_t total_steps = 0;
    std::int64_t accepted_steps = 0;
};

// Rejection sampler for pi restricted to {empty} ∪ {2-regular loops}
// (on that set pi(F) ∝ prod_{e in F} w(e)): restarts the chain from the
// empty set, runs T steps, and keeps the state iff it classifies as Empty or
// TwoRegular; after N failed restarts returns the empty set (counted in
// stats). Throws std::invalid_argument on a zero edge weight.
EdgeSubgraph sample_2regular(const PairwiseModel& model,
                             const std::vector<double>& log_edge_weight,
                             const WormParams& params, Rng& rng,
                             WormStats* stats = nullptr);

} // namespace loopmc
