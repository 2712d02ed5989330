#include "loopmc/subgraph.hpp"

#include <algorithm>
#include <stdexcept>

namespace loopmc {

const char* loop_class_name(LoopClass c) {
    switch (c) {
        case LoopClass::Empty: return "empty";
        case LoopClass::TwoRegular: return "two_regular";
        case LoopClass::GeneralizedLoop: return "generalized_loop";
        case LoopClass::TwoOdd: return "two_odd";
        case LoopClass::Other: return "other";
    }
    return "other";
}

EdgeSubgraph::EdgeSubgraph(const PairwiseModel& model)
    : n_(model.n),
      m_(model.num_edges()),
      words_((model.num_edges() + 63) / 64, 0),
      degree_(model.n, 0) {
    if (m_ == 0) words_.assign(1, 0);
}

EdgeSubgraph EdgeSubgraph::from_mask(const PairwiseModel& model, std::uint64_t mask) {
    if (model.num_edges() > 64) throw std::invalid_argument("from_mask needs m <= 64");
    EdgeSubgraph g(model);
    for (int e = 0; e < model.num_edges(); ++e)
        if ((mask >> e) & 1) g.flip(model, e);
    return g;
}

void EdgeSubgraph::flip(int e, int u, int v) {
    words_[e >> 6] ^= 1ULL << (e & 63);
    const int delta = test(e) ? 1 : -1;
    edge_count_ += delta;
    for (int w : {u, v}) {
        odd_count_ -= degree_[w] & 1;
        degree_[w] += delta;
        odd_count_ += degree_[w] & 1;
    }
}

void EdgeSubgraph::flip(const PairwiseModel& model, int e) {
    flip(e, model.edges[e].first, model.edges[e].second);
}

void EdgeSubgraph::xor_with(const PairwiseModel& model, const EdgeSubgraph& other) {
    for (int e = 0; e < m_; ++e)
        if (other.test(e)) flip(model, e);
}

std::vector<int> EdgeSubgraph::edge_indices() const {
    std::vector<int> out;
    out.reserve(edge_count_);
    for (int e = 0; e < m_; ++e)
        if (test(e)) out.push_back(e);
    return out;
}

std::vector<int> EdgeSubgraph::odd_vertices() const {
    std::vector<int> out;
    out.reserve(odd_count_);
    for (int v = 0; v < n_; ++v)
        if (degree_[v] & 1) out.push_back(v);
    return out;
}

LoopClass EdgeSubgraph::classify() const {
    if (edge_count_ == 0) return LoopClass::Empty;
    bool two_regular = true;
    bool no_leaf = true;
    for (int v = 0; v < n_; ++v) {
        if (degree_[v] == 0) continue;
        if (degree_[v] != 2) two_regular = false;
        if (degree_[v] == 1) no_leaf = false;
    }
    if (two_regular) return LoopClass::TwoRegular;
    if (no_leaf) return LoopClass::GeneralizedLoop;
    if (odd_count_ == 2) return LoopClass::TwoOdd;
    return LoopClass::Other;
}

bool EdgeSubgraph::in_loop_family() const {
    if (edge_count_ == 0) return true;
    for (int v = 0; v < n_; ++v)
        if (degree_[v] == 1) return false;
    return true;
}

bool EdgeSubgraph::connected_support(const PairwiseModel& model) const {
    if (edge_count_ == 0) return true;
    int start = -1;
    for (int v = 0; v < n_; ++v)
        if (degree_[v] > 0) {
            start = v;
            break;
        }
    std::vector<char> seen(n_, 0);
    std::vector<int> stack{start};
    seen[start] = 1;
    int reached = 1;
    int support = 0;
    for (int v = 0; v < n_; ++v) support += degree_[v] > 0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (const auto& [u, e] : model.adjacency[v])
            if (test(e) && !seen[u]) {
                seen[u] = 1;
                ++reached;
                stack.push_back(u);
            }
    }
    return reached == support;
}

std::uint64_t EdgeSubgraph::mask64() const {
    if (m_ > 64) throw std::invalid_argument("mask64 needs m <= 64");
    return words_.empty() ? 0 : words_[0];
}

std::string EdgeSubgraph::to_hex() const {
    static const char* digits = "0123456789abcdef";
    std::string out;
    const int nibbles = std::max(1, (m_ + 3) / 4);
    for (int i = nibbles - 1; i >= 0; --i) {
        const int word = i / 16, shift = (i % 16) * 4;
        const unsigned v = word < static_cast<int>(words_.size())
                               ? static_cast<unsigned>((words_[word] >> shift) & 0xf)
                               : 0u;
        out.push_back(digits[v]);
    }
    const auto first = out.find_first_not_of('0');
    return first == std::string::npos ? "0" : out.substr(first);
}

EdgeSubgraph EdgeSubgraph::from_hex(const PairwiseModel& model, const std::string& hex) {
    EdgeSubgraph g(model);
    int nibble = 0;
    for (auto it = hex.rbegin(); it != hex.rend(); ++it, ++nibble) {
        const char c = *it;
        int v;
        if (c >= '0' && c <= '9') v = c - '0';
        else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
        else throw std::invalid_argument("invalid hex digit in subgraph mask");
        for (int b = 0; b < 4; ++b)
            if ((v >> b) & 1) {
                const int e = nibble * 4 + b;
                if (e >= model.num_edges())
                    throw std::invalid_argument("subgraph mask has bits past m");
                g.flip(model, e);
            }
    }
    return g;
}

} // namespace loopmc
