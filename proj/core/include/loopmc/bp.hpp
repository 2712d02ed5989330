#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "loopmc/model.hpp"

namespace loopmc {

struct BPOptions {
    double damping = 0.5;     // in [0,1): new = (1-damping)*update + damping*old
    double tol = 1e-10;       // max absolute message change at convergence
    std::int64_t max_iters = 10000;
    // Optional warm start; messages indexed like BPFixedPoint::message.
    std::optional<std::vector<std::array<double, 2>>> init_messages;
};

// Fixed point (or last iterate) of damped synchronous belief propagation.
// Directed message m_{u->v} for edge e=(u,v) lives at message[2e] and
// m_{v->u} at message[2e+1]; each is normalized to sum 1.
struct BPFixedPoint {
    std::vector<std::array<double, 2>> message;
    std::vector<double> tau_v;                  // vertex belief tau_v(1)
    std::vector<std::array<double, 4>> tau_uv;  // edge belief at 2*x_u + x_v
    double bethe_log_z = 0.0;
    double residual = 0.0;             // last max absolute message change
    std::int64_t iterations = 0;
    bool converged = false;
    std::int64_t degenerate_resets = 0; // all-zero message updates re-centered to uniform
    double consistency_gap = 0.0;      // max |sum_xu tau_uv - tau_v| over edges
};

// Damped synchronous BP from uniform messages (or options.init_messages).
// Non-convergence is reported through the flag, never thrown.
BPFixedPoint run_bp(const PairwiseModel& model, const BPOptions& options = {});

// Loop-series edge weights derived from the BP beliefs:
//   signed_corr(e) = (tau_uv(1,1) - tau_u(1) tau_v(1)) / sqrt(prod tau (1-tau)),
//   magnitude(e)   = |signed_corr(e)|  (<= 1; clamped when it exceeds 1 by
//                    less than 1e-12, rejected beyond that).
// Throws degenerate_marginal_error if some tau_v(1) is within 1e-12 of 0 or 1.
struct EdgeWeights {
    std::vector<double> signed_corr;
    std::vector<double> magnitude;
    std::vector<double> log_magnitude; // -infinity where magnitude = 0
    double w_min = 0.0;                // smallest magnitude
};

EdgeWeights edge_weight_magnitudes(const PairwiseModel& model, const BPFixedPoint& fp);

// Fixed-point file round trip (beliefs and Bethe value; messages are not
// persisted and reload as uniform placeholders).
void write_fixed_point(std::ostream& out, const PairwiseModel& model, const BPFixedPoint& fp);
void save_fixed_point(const std::string& path, const PairwiseModel& model, const BPFixedPoint& fp);
BPFixedPoint read_fixed_point(std::istream& in, const PairwiseModel& model);
BPFixedPoint load_fixed_point(const std::string& path, const PairwiseModel& model);

} // namespace loopmc
