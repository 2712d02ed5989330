#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "loopmc/model.hpp"

namespace loopmc {

enum class LoopClass {
    Empty,           // no edges
    TwoRegular,      // nonempty, every incident vertex has degree exactly 2
    GeneralizedLoop, // nonempty, every incident vertex has degree >= 2, not 2-regular
    TwoOdd,          // exactly two vertices of odd degree (and some vertex of degree 1)
    Other,
};

const char* loop_class_name(LoopClass c);

// Edge subset of a fixed host graph, stored as a bitmask over edge indices
// with per-vertex degrees kept coherent under every mutation.
class EdgeSubgraph {
public:
    EdgeSubgraph() = default;
    explicit EdgeSubgraph(const PairwiseModel& model);
    static EdgeSubgraph from_mask(const PairwiseModel& model, std::uint64_t mask);

    bool test(int e) const { return (words_[e >> 6] >> (e & 63)) & 1; }
    int num_edges() const { return edge_count_; }
    bool empty() const { return edge_count_ == 0; }
    int degree(int v) const { return degree_[v]; }
    int odd_degree_count() const { return odd_count_; }
    const std::vector<int>& degrees() const { return degree_; }

    // Toggles edge e = (u,v); endpoints must match the host edge.
    void flip(int e, int u, int v);
    void flip(const PairwiseModel& model, int e);
    // Symmetric difference with another subgraph of the same host.
    void xor_with(const PairwiseModel& model, const EdgeSubgraph& other);

    std::vector<int> edge_indices() const;
    std::vector<int> odd_vertices() const;

    LoopClass classify() const;
    // Membership in the generalized-loop family (empty set included).
    bool in_loop_family() const;
    // Vertices of the induced edge set form one connected component.
    bool connected_support(const PairwiseModel& model) const;

    // Lowest 64 bits of the mask (host must have m <= 64).
    std::uint64_t mask64() const;
    // Hex string of the full mask, edge 0 at the least significant bit.
    std::string to_hex() const;
    static EdgeSubgraph from_hex(const PairwiseModel& model, const std::string& hex);

    bool operator==(const EdgeSubgraph& o) const {
        return words_ == o.words_ && n_ == o.n_ && m_ == o.m_;
    }

private:
    int n_ = 0;
    int m_ = 0;
    int edge_count_ = 0;
    int odd_count_ = 0;
    std::vector<std::uint64_t> words_;
    std::vector<int> degree_;
};

} // namespace loopmc
