#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace loopmc {

// Pairwise model over binary variables x_v in {0,1}:
//   p(x) ∝ prod_v psi_v(x_v) * prod_{(u,v) in E} psi_{u,v}(x_u, x_v).
// The graph is simple and connected; factors are finite and nonnegative.
struct PairwiseModel {
    int n = 0;
    std::vector<std::pair<int, int>> edges;           // endpoints u < v, stable indices
    std::vector<std::array<double, 2>> vertex_factor; // psi_v(0), psi_v(1)
    std::vector<std::array<double, 4>> edge_factor;   // psi_e at index 2*x_u + x_v

    // Per vertex: (neighbor, edge index), ordered by edge index.
    std::vector<std::vector<std::pair<int, int>>> adjacency;

    int num_edges() const { return static_cast<int>(edges.size()); }
    int degree(int v) const { return static_cast<int>(adjacency[v].size()); }
    int max_degree() const;

    // Rebuilds adjacency from `edges`; called by make_model after edits.
    void build_adjacency();
};

// Validates structure (simple connected graph, consistent sizes, finite
// nonnegative factors) and returns the model with adjacency built.
// Throws std::invalid_argument on any violation.
PairwiseModel make_model(int n,
                         std::vector<std::pair<int, int>> edges,
                         std::vector<std::array<double, 2>> vertex_factor,
                         std::vector<std::array<double, 4>> edge_factor);

// Maps original vertices to their replicas in a transformed model.
struct VertexMap {
    std::vector<std::vector<int>> replicas; // replicas[v] lists new ids, first carries psi_v
    bool identity = true;
};

struct TransformedModel {
    PairwiseModel model;
    VertexMap map;
};

// Rewrites the model so every vertex has degree <= 3 while preserving Z
// exactly. A vertex of degree d > 3 becomes d replicas joined in a cycle of
// equality edges (psi = 1 iff endpoints agree); replica i inherits the i-th
// incident edge (by edge index) and replica 0 inherits the vertex factor.
// Degree <= 3 input is returned unchanged with an identity map.
TransformedModel degree3_transform(const PairwiseModel& model);

// log Z by exhaustive summation over all 2^n assignments, iterated in
// ascending bitmask order with compensated accumulation. Guard: n <= 25.
// Throws size_guard_error past the guard and std::runtime_error if every
// assignment has zero weight.
double exact_partition(const PairwiseModel& model);

// log of the unnormalized weight of one assignment (bit v of `config` is x_v);
// -infinity when some factor is zero.
double log_config_weight(const PairwiseModel& model, std::uint64_t config);

// Glassy Ising model on a side x side grid (row-major vertex ids, edge order:
// right neighbor then down neighbor per vertex). Couplings J_e ~
// Normal(mean, std^2) and fields h_v ~ Normal(0, field_std^2) (exactly zero
// when field_std = 0), with psi_{u,v} = exp(J_e s_u s_v), psi_v = exp(h_v s_v)
// for spins s = 2x - 1. Same seed reproduces the model bit-exactly.
PairwiseModel gen_glassy_ising(int side, double mean, double std, double field_std,
                               std::uint64_t seed);

// Hard-core model on a side x side grid: psi_v(1) = fugacity, psi_v(0) = 1,
// psi_{u,v}(1,1) = 0 and 1 elsewhere. Z = weighted independent-set count.
PairwiseModel gen_hardcore(int side, double fugacity);

// Text round trip. Format:
//   n <int> / m <int> / "vertex_factors" + n rows "psi0 psi1" /
//   "edges" + m rows "u v p00 p01 p10 p11".
// The parser rejects NaN and negative entries; the writer prints full
// precision so parse(write(model)) is exact.
void write_model(std::ostream& out, const PairwiseModel& model);
void save_model(const std::string& path, const PairwiseModel& model);
PairwiseModel read_model(std::istream& in);
PairwiseModel load_model(const std::string& path);

} // namespace loopmc
