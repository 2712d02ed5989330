#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace loopmc {

// Sweep harness reproducing the grid benchmarks: for each sweep value it
// generates models_per_point models, computes the exact log Z, runs every
// requested method, and records one row per (model, method).
struct ExperimentConfig {
    std::string kind = "ising_nofield";   // ising_nofield | ising_field | hardcore
    std::vector<double> sweep;            // coupling mean or fugacity values
    int models_per_point = 20;
    std::vector<std::string> methods;     // bp | mcmc-bp-2reg | mcmc-bp-whole | gibbs
    std::uint64_t seed = 1;
    int side = 4;
    double coupling_std = 0.5;
    double field_std = 0.5;               // ising_field only
    std::int64_t t_iters = 1000;          // worm T / chain iters / AIS ladder points
    std::int64_t samples = 100;           // s1 = s2 (= s0) = AIS particles
    int stages = 0;                       // 2-regular ladder stages; 0 = vertex count
    double beta0 = 8.0;                   // whole-series ladder start
    int whole_stages = 20;
    double damping = 0.5;
    double bp_tol = 1e-10;
    std::int64_t bp_max_iters = 10000;
    double sign_collapse_threshold = 0.02;
    bool timings = false;                 // off: wall_time column written as 0
};

ExperimentConfig parse_experiment_config(std::istream& in);
ExperimentConfig load_experiment_config(const std::string& path);

struct ResultRow {
    std::string kind;
    double strength = 0.0;
    std::uint64_t model_seed = 0;
    std::string method;
    double log_z_exact = 0.0;
    double log_z_approx = 0.0;
    double rel_error = 0.0; // |log_z_exact - log_z_approx| / |log_z_exact|
    double wall_time = 0.0;
    std::string status = "ok"; // ok | bp_nonconverged | sign_collapse | timeout
};

// Rows in canonical order (sweep value, model index, method order from the
// config). Identical configs produce identical CSV bytes (timings off).
// Worker count is capped by LOOPMC_THREADS.
std::vector<ResultRow> run_experiment(const ExperimentConfig& config);

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);
void save_csv(const std::string& path, const std::vector<ResultRow>& rows);
std::vector<ResultRow> read_csv(std::istream& in);
std::vector<ResultRow> load_csv(const std::string& path);

// One SVG per kind found in the CSV: mean relative error vs sweep value per
// method with standard-error bars. Returns the written paths; throws
// std::runtime_error when the CSV holds no data rows.
std::vector<std::string> emit_plots(const std::string& csv_path,
                                    const std::string& out_dir);

} // namespace loopmc
