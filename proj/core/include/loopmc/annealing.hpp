#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "loopmc/bp.hpp"
#include "loopmc/log_signed.hpp"
#include "loopmc/loop_chain.hpp"
#include "loopmc/model.hpp"
#include "loopmc/worm.hpp"

namespace loopmc {

// Inverse-temperature ladder. Increasing ladders start at 0 and end at 1
// (two-regular estimator); decreasing ladders start above 1 and end at 1
// (whole-series estimator). validate() throws std::invalid_argument.
struct AnnealSchedule {
    std::vector<double> betas;
    bool increasing = true;

    void validate() const;
    static AnnealSchedule uniform_increasing(int stages);            // 0, 1/k, ..., 1
    static AnnealSchedule geometric_decreasing(double beta0, int stages); // beta0^(1-i/k)
};

enum class EstimateStatus { Ok, SignCollapse, ModeStarvation, BpNonconverged };

const char* estimate_status_name(EstimateStatus s);

struct EstimateReport {
    std::string method;
    EstimateStatus status = EstimateStatus::Ok;
    double log_abs_estimate = 0.0; // log |series estimate|
    int sign = 1;
    std::vector<double> stage_ratios;  // H_i per ladder stage
    double kappa = 0.0;                // negative-sign fraction at beta = 1
    double u_log = 0.0;                // log U normalization (whole-series only)
    double bethe_log_z = 0.0;
    std::int64_t worm_failures = 0;
    std::uint64_t seed = 0;
    double wall_time_s = 0.0;
    std::map<std::string, double> params_used;
};

void write_report(std::ostream& out, const EstimateReport& report);
void save_report(const std::string& path, const EstimateReport& report);

struct Z2LoopOptions {
    std::int64_t s1 = 100;      // samples per ladder stage
    std::int64_t s2 = 100;      // samples for the sign fraction at beta = 1
    double sign_collapse_threshold = 0.02; // flag when |1 - 2 kappa| falls below
    int threads = 1;
};

// Annealed estimator of the 2-regular series total
//   Z_hat = (1 - 2 kappa) * 2^{m-n+1} * prod_i H_i,
//   H_i   = mean over s1 draws at beta_i of |w(F)|^{beta_{i+1} - beta_i},
// with draws from sample_2regular under edge weights w(e)^{beta_i} and kappa
// the fraction of negative loop weights among s2 draws at beta = 1.
// Requires max degree <= 3 (transform first) and an increasing ladder.
EstimateReport estimate_z2loop(const PairwiseModel& model, const BPFixedPoint& fp,
                               const AnnealSchedule& schedule, const Z2LoopOptions& options,
                               const WormParams& worm_params, std::uint64_t seed);

// The six sample-complexity lower bounds for accuracy eps, failure nu,
// minimum edge weight w_min and plug-in negative-mass guess zeta in [0, 1/2):
//   s1 >= 18144 n^2 eps^-2 w_min^-1 ceil(ln(6n/nu))
//   N1 >= 1.2 n ln(144 n eps^-1 w_min^-1)
//   T1 >= (m-n+1) ln 2 + 4 Delta m n^4 ln(48 n eps^-1 w_min^-1)
//   s2 >= 18144 zeta (1-2 zeta)^-2 eps^-2 ceil(ln(3/nu))
//   N2 >= 1.2 n ln(144 eps^-1 (1-2 zeta)^-1)
//   T2 >= (m-n+1) ln 2 + 4 Delta m n^4 ln(48 eps^-1 (1-2 zeta)^-1)
// Reported budgets, not defaults.
struct Theorem2Params {
    std::int64_t s1 = 0, s2 = 0;
    std::int64_t n1 = 0, n2 = 0;
    std::int64_t t1 = 0, t2 = 0;
};

Theorem2Params theorem2_params(const PairwiseModel& model, double eps, double nu,
                               double w_min, double zeta_guess);

struct ZLoopOptions {
    std::int64_t s0 = 100;        // draws for the U normalization at beta_0
    std::int64_t s1 = 100;        // draws per ladder stage
    std::int64_t s2 = 100;        // draws for the sign fraction at beta = 1
    std::int64_t chain_iters = 1000; // steps per draw (fresh chain from empty)
    BasisMode basis = BasisMode::MinWeight;
    double sign_collapse_threshold = 0.02;
    double mode_floor = 0.05;     // flag ModeStarvation when s*/s0 drops below
    int threads = 1;
};

// Annealed estimator of the whole-series total
//   Z_hat = (1 - 2 kappa) * U * prod_i H_i,
//   U     = (s0 / s*) |w(F*)|^{beta_0} from draws at beta_0 (F* the max-|w|
//           draw, ties by ascending bitmask; s* its multiplicity),
//   H_i   = mean over s1 draws at beta_i of |w(F)|^{beta_{i+1} - beta_i},
// with draws from the generalized-loop chain and a decreasing ladder ending
// at 1.
EstimateReport estimate_zloop(const PairwiseModel& model, const BPFixedPoint& fp,
                              const AnnealSchedule& schedule, const ZLoopOptions& options,
                              std::uint64_t seed);

struct AisOptions {
    std::int64_t schedule_points = 1000; // intermediate temperatures K, beta_k = k/K
    std::int64_t samples = 100;          // independent particles
    std::int64_t sweeps_per_point = 1;   // full Gibbs sweeps per temperature
    int threads = 1;
};

// Annealed-importance-sampling estimate of log Z along the geometric path
// p_beta(x) ∝ prod psi^beta from the uniform law (Z_0 = 2^n) to the model,
// with single-site Gibbs updates. Deterministic under a fixed seed.
double ais_gibbs_baseline(const PairwiseModel& model, const AisOptions& options,
                          std::uint64_t seed);

// log Z_hat = bethe_log_z + log_abs_estimate. Throws sign_collapse_error on a
// collapsed report and negative_series_error when the sign is not positive.
double combine_bp_mcmc(const BPFixedPoint& fp, const EstimateReport& report);

} // namespace loopmc
