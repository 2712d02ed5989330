#include "loopmc/loop_calculus.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "loopmc/errors.hpp"

namespace loopmc {

namespace {

constexpr int kEnumGuard = 22;

void check_enum_guard(const PairwiseModel& model, const char* what) {
    if (model.num_edges() > kEnumGuard)
        throw size_guard_error(std::string(what) + " limited to m <= 22, got m = " +
                               std::to_string(model.num_edges()));
}

void check_tau(double tau, int v) {
    if (tau < 1e-12 || tau > 1.0 - 1e-12)
        throw degenerate_marginal_error("vertex belief at vertex " + std::to_string(v) +
                                        " is within 1e-12 of {0,1}");
}

LogSigned loop_edge_term(const BPFixedPoint& fp, const PairwiseModel& model, int e) {
    const auto [u, v] = model.edges[e];
    const double tu = fp.tau_v[u], tv = fp.tau_v[v];
    return LogSigned::from_value((fp.tau_uv[e][3] - tu * tv) / (tu * tv));
}

// Degrees of the subset, written into scratch slots that are unwound after
// use so the caller can keep one zeroed array across millions of subsets.
struct DegreeScratch {
    std::vector<int> degree;
    std::vector<int> touched;

    explicit DegreeScratch(int n) : degree(n, 0) { touched.reserve(64); }

    void load(const PairwiseModel& model, std::uint64_t mask) {
        touched.clear();
        for (std::uint64_t bits = mask; bits; bits &= bits - 1) {
            const int e = std::countr_zero(bits);
            for (int w : {model.edges[e].first, model.edges[e].second}) {
                if (degree[w] == 0) touched.push_back(w);
                ++degree[w];
            }
        }
    }
    void unload() {
        for (int w : touched) degree[w] = 0;
    }
};

LoopClass classify_degrees(const DegreeScratch& s, std::uint64_t mask) {
    if (mask == 0) return LoopClass::Empty;
    bool two_regular = true, no_leaf = true;
    int odd = 0;
    for (int w : s.touched) {
        const int d = s.degree[w];
        if (d != 2) two_regular = false;
        if (d == 1) no_leaf = false;
        odd += d & 1;
    }
    if (two_regular) return LoopClass::TwoRegular;
    if (no_leaf) return LoopClass::GeneralizedLoop;
    if (odd == 2) return LoopClass::TwoOdd;
    return LoopClass::Other;
}

} // namespace

LogSigned loop_vertex_term(double tau, int d) {
    if (d < 1) throw std::invalid_argument("vertex term requires degree >= 1");
    const double l = (d - 1) * std::log(tau / (1.0 - tau));
    const bool negative = d & 1;
    if (l > 600.0) // the power dwarfs the leading tau; 1 +- e^{-l} is 1 to double precision
        return LogSigned::from_log(std::log(tau) + l, negative ? -1 : 1);
    const double value = negative ? -tau * std::expm1(l) : tau * (1.0 + std::exp(l));
    return LogSigned::from_value(value);
}

LogSigned loop_weight(const PairwiseModel& model, const BPFixedPoint& fp,
                      const EdgeSubgraph& subgraph) {
    if (!subgraph.in_loop_family())
        throw std::invalid_argument("loop_weight requires a generalized loop or the empty set");
    if (subgraph.empty()) return LogSigned::one();

    LogSigned w = LogSigned::one();
    for (int e : subgraph.edge_indices()) {
        const auto [u, v] = model.edges[e];
        check_tau(fp.tau_v[u], u);
        check_tau(fp.tau_v[v], v);
        w *= loop_edge_term(fp, model, e);
        if (w.is_zero()) return w;
    }
    for (int v = 0; v < model.n; ++v) {
        const int d = subgraph.degree(v);
        if (d == 0) continue;
        w *= loop_vertex_term(fp.tau_v[v], d);
        if (w.is_zero()) return w;
    }
    return w;
}

void for_each_subset(const PairwiseModel& model,
                     const std::function<void(std::uint64_t, LoopClass)>& fn) {
    check_enum_guard(model, "subset enumeration");
    DegreeScratch scratch(model.n);
    const std::uint64_t end = 1ULL << model.num_edges();
    for (std::uint64_t mask = 0; mask < end; ++mask) {
        scratch.load(model, mask);
        fn(mask, classify_degrees(scratch, mask));
        scratch.unload();
    }
}

std::vector<EdgeSubgraph> enumerate_loops(const PairwiseModel& model,
                                          std::optional<LoopClass> filter) {
    check_enum_guard(model, "enumerate_loops");
    std::vector<EdgeSubgraph> out;
    for_each_subset(model, [&](std::uint64_t mask, LoopClass c) {
        if (!filter || c == *filter) out.push_back(EdgeSubgraph::from_mask(model, mask));
    });
    return out;
}

LogSigned ls_oracle(const PairwiseModel& model, const BPFixedPoint& fp,
                    SeriesTruncation truncation) {
    check_enum_guard(model, "ls_oracle");
    for (int v = 0; v < model.n; ++v) check_tau(fp.tau_v[v], v);

    std::vector<LogSigned> edge_term(model.num_edges());
    for (int e = 0; e < model.num_edges(); ++e) edge_term[e] = loop_edge_term(fp, model, e);

    DegreeScratch scratch(model.n);
    SignedLse total;
    const std::uint64_t end = 1ULL << model.num_edges();
    for (std::uint64_t mask = 0; mask < end; ++mask) {
        scratch.load(model, mask);
        const LoopClass c = classify_degrees(scratch, mask);
        const bool keep = c == LoopClass::Empty || c == LoopClass::TwoRegular ||
                          (truncation == SeriesTruncation::Full &&
                           c == LoopClass::GeneralizedLoop);
        if (keep) {
            LogSigned w = LogSigned::one();
            for (std::uint64_t bits = mask; bits && !w.is_zero(); bits &= bits - 1)
                w *= edge_term[std::countr_zero(bits)];
            for (std::size_t i = 0; i < scratch.touched.size() && !w.is_zero(); ++i) {
                const int v = scratch.touched[i];
                w *= loop_vertex_term(fp.tau_v[v], scratch.degree[v]);
            }
            total.add(w);
        }
        scratch.unload();
    }
    return total.result();
}

} // namespace loopmc
