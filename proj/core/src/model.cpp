#include "loopmc/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

#include "loopmc/errors.hpp"
#include "loopmc/log_signed.hpp"
#include "loopmc/rng.hpp"

namespace loopmc {

namespace {

constexpr int kExactGuard = 25;

void check_factor(double x, const char* what) {
    if (std::isnan(x) || std::isinf(x) || x < 0.0)
        throw std::invalid_argument(std::string(what) + " must be finite and nonnegative");
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

} // namespace

int PairwiseModel::max_degree() const {
    int d = 0;
    for (const auto& a : adjacency) d = std::max(d, static_cast<int>(a.size()));
    return d;
}

void PairwiseModel::build_adjacency() {
    adjacency.assign(n, {});
    for (int e = 0; e < num_edges(); ++e) {
        adjacency[edges[e].first].emplace_back(edges[e].second, e);
        adjacency[edges[e].second].emplace_back(edges[e].first, e);
    }
}

PairwiseModel make_model(int n, std::vector<std::pair<int, int>> edges,
                         std::vector<std::array<double, 2>> vertex_factor,
                         std::vector<std::array<double, 4>> edge_factor) {
    if (n < 1) throw std::invalid_argument("model needs at least one vertex");
    if (vertex_factor.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("vertex factor count must equal n");
    if (edge_factor.size() != edges.size())
        throw std::invalid_argument("edge factor count must equal edge count");

    std::set<std::pair<int, int>> seen;
    for (const auto& [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw std::invalid_argument("edge endpoint out of range");
        if (u == v) throw std::invalid_argument("self-loops are not allowed");
        if (!seen.insert({std::min(u, v), std::max(u, v)}).second)
            throw std::invalid_argument("duplicate edge");
    }
    for (const auto& f : vertex_factor)
        for (double x : f) check_factor(x, "vertex factor");
    for (const auto& f : edge_factor)
        for (double x : f) check_factor(x, "edge factor");

    PairwiseModel model;
    model.n = n;
    model.edges = std::move(edges);
    model.vertex_factor = std::move(vertex_factor);
    model.edge_factor = std::move(edge_factor);
    model.build_adjacency();

    std::vector<char> reached(n, 0);
    std::queue<int> frontier;
    frontier.push(0);
    reached[0] = 1;
    int count = 1;
    while (!frontier.empty()) {
        int v = frontier.front();
        frontier.pop();
        for (const auto& [u, e] : model.adjacency[v]) {
            (void)e;
            if (!reached[u]) {
                reached[u] = 1;
                ++count;
                frontier.push(u);
            }
        }
    }
    if (count != n) throw std::invalid_argument("graph must be connected");
    return model;
}

TransformedModel degree3_transform(const PairwiseModel& model) {
    if (model.max_degree() <= 3) {
        TransformedModel out{model, {}};
        out.map.identity = true;
        out.map.replicas.resize(model.n);
        for (int v = 0; v < model.n; ++v) out.map.replicas[v] = {v};
        return out;
    }

    VertexMap map;
    map.identity = false;
    map.replicas.resize(model.n);
    int next_id = model.n;
    for (int v = 0; v < model.n; ++v) {
        map.replicas[v] = {v};
        if (model.degree(v) > 3)
            for (int i = 1; i < model.degree(v); ++i) map.replicas[v].push_back(next_id++);
    }

    std::vector<std::array<double, 2>> vertex_factor(next_id, {1.0, 1.0});
    for (int v = 0; v < model.n; ++v) vertex_factor[v] = model.vertex_factor[v];

    // Original edges keep their indices; an expanded vertex routes its i-th
    // incident edge (by edge index) to replica i.
    std::vector<std::pair<int, int>> edges(model.edges.size());
    std::vector<std::array<double, 4>> edge_factor = model.edge_factor;
    std::vector<int> slot(model.n, 0);
    for (int v = 0; v < model.n; ++v) {
        if (model.degree(v) <= 3) continue;
        for (const auto& [u, e] : model.adjacency[v]) {
            (void)u;
            int replica = map.replicas[v][slot[v]++];
            if (model.edges[e].first == v)
                edges[e].first = replica;
            else
                edges[e].second = replica;
        }
    }
    for (int e = 0; e < model.num_edges(); ++e) {
        if (model.degree(model.edges[e].first) <= 3) edges[e].first = model.edges[e].first;
        if (model.degree(model.edges[e].second) <= 3) edges[e].second = model.edges[e].second;
    }

    const std::array<double, 4> equality = {1.0, 0.0, 0.0, 1.0};
    for (int v = 0; v < model.n; ++v) {
        const auto& reps = map.replicas[v];
        if (reps.size() <= 1) continue;
        for (std::size_t i = 0; i < reps.size(); ++i) {
            edges.emplace_back(reps[i], reps[(i + 1) % reps.size()]);
            edge_factor.push_back(equality);
        }
    }

    TransformedModel out;
    out.model = make_model(next_id, std::move(edges), std::move(vertex_factor),
                           std::move(edge_factor));
    out.map = std::move(map);
    return out;
}

double log_config_weight(const PairwiseModel& model, std::uint64_t config) {
    double lw = 0.0;
    for (int v = 0; v < model.n; ++v) {
        const double f = model.vertex_factor[v][(config >> v) & 1];
        if (f == 0.0) return -std::numeric_limits<double>::infinity();
        lw += std::log(f);
    }
    for (int e = 0; e < model.num_edges(); ++e) {
        const auto [u, v] = model.edges[e];
        const double f = model.edge_factor[e][2 * ((config >> u) & 1) + ((config >> v) & 1)];
        if (f == 0.0) return -std::numeric_limits<double>::infinity();
        lw += std::log(f);
    }
    return lw;
}

double exact_partition(const PairwiseModel& model) {
    if (model.n > kExactGuard)
        throw size_guard_error("exact_partition limited to n <= 25, got n = " +
                               std::to_string(model.n));

    // Precomputed log tables; -infinity marks a zero factor.
    std::vector<std::array<double, 2>> lv(model.n);
    for (int v = 0; v < model.n; ++v)
        for (int x = 0; x < 2; ++x)
            lv[v][x] = model.vertex_factor[v][x] == 0.0
                           ? -std::numeric_limits<double>::infinity()
                           : std::log(model.vertex_factor[v][x]);
    std::vector<std::array<double, 4>> le(model.num_edges());
    for (int e = 0; e < model.num_edges(); ++e)
        for (int x = 0; x < 4; ++x)
            le[e][x] = model.edge_factor[e][x] == 0.0
                           ? -std::numeric_limits<double>::infinity()
                           : std::log(model.edge_factor[e][x]);

    SignedLse total;
    const std::uint64_t configs = 1ULL << model.n;
    for (std::uint64_t config = 0; config < configs; ++config) {
        double lw = 0.0;
        for (int v = 0; v < model.n; ++v) lw += lv[v][(config >> v) & 1];
        for (int e = 0; e < model.num_edges(); ++e) {
            const auto [u, v] = model.edges[e];
            lw += le[e][2 * ((config >> u) & 1) + ((config >> v) & 1)];
        }
        if (lw != -std::numeric_limits<double>::infinity())
            total.add(LogSigned::from_log(lw, 1));
    }
    const LogSigned z = total.result();
    if (z.sign <= 0) throw std::runtime_error("every assignment has zero weight");
    return z.log_abs;
}

PairwiseModel gen_glassy_ising(int side, double mean, double std, double field_std,
                               std::uint64_t seed) {
    if (side < 2) throw std::invalid_argument("grid side must be at least 2");
    if (std < 0 || field_std < 0)
        throw std::invalid_argument("standard deviations must be nonnegative");

    const int n = side * side;
    std::vector<std::pair<int, int>> edges;
    for (int r = 0; r < side; ++r)
        for (int c = 0; c < side; ++c) {
            const int v = r * side + c;
            if (c + 1 < side) edges.emplace_back(v, v + 1);
            if (r + 1 < side) edges.emplace_back(v, v + side);
        }

    Rng rng(seed);
    std::vector<std::array<double, 4>> edge_factor;
    edge_factor.reserve(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const double j = mean + std * rng.normal();
        const double a = std::exp(j), b = std::exp(-j);
        edge_factor.push_back({a, b, b, a});
    }
    std::vector<std::array<double, 2>> vertex_factor(n, {1.0, 1.0});
    if (field_std > 0)
        for (int v = 0; v < n; ++v) {
            const double h = field_std * rng.normal();
            vertex_factor[v] = {std::exp(-h), std::exp(h)};
        }

    return make_model(n, std::move(edges), std::move(vertex_factor), std::move(edge_factor));
}

PairwiseModel gen_hardcore(int side, double fugacity) {
    if (side < 2) throw std::invalid_argument("grid side must be at least 2");
    if (!(fugacity > 0) || std::isinf(fugacity))
        throw std::invalid_argument("fugacity must be positive and finite");

    const int n = side * side;
    std::vector<std::pair<int, int>> edges;
    for (int r = 0; r < side; ++r)
        for (int c = 0; c < side; ++c) {
            const int v = r * side + c;
            if (c + 1 < side) edges.emplace_back(v, v + 1);
            if (r + 1 < side) edges.emplace_back(v, v + side);
        }
    std::vector<std::array<double, 2>> vertex_factor(n, {1.0, fugacity});
    std::vector<std::array<double, 4>> edge_factor(edges.size(), {1.0, 1.0, 1.0, 0.0});
    return make_model(n, std::move(edges), std::move(vertex_factor), std::move(edge_factor));
}

void write_model(std::ostream& out, const PairwiseModel& model) {
    out << "n " << model.n << "\n";
    out << "m " << model.num_edges() << "\n";
    out << "vertex_factors\n";
    for (const auto& f : model.vertex_factor) out << fmt(f[0]) << " " << fmt(f[1]) << "\n";
    out << "edges\n";
    for (int e = 0; e < model.num_edges(); ++e) {
        const auto& f = model.edge_factor[e];
        out << model.edges[e].first << " " << model.edges[e].second;
        for (double x : f) out << " " << fmt(x);
        out << "\n";
    }
}

void save_model(const std::string& path, const PairwiseModel& model) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    write_model(out, model);
}

namespace {

double parse_factor(std::istream& in, const char* what) {
    double x;
    if (!(in >> x)) throw std::runtime_error(std::string("model file: missing ") + what);
    if (std::isnan(x)) throw std::runtime_error(std::string("model file: NaN ") + what);
    if (x < 0) throw std::runtime_error(std::string("model file: negative ") + what);
    return x;
}

} // namespace

PairwiseModel read_model(std::istream& in) {
    std::string key;
    int n = 0, m = 0;
    if (!(in >> key) || key != "n" || !(in >> n))
        throw std::runtime_error("model file: expected 'n <int>'");
    if (!(in >> key) || key != "m" || !(in >> m))
        throw std::runtime_error("model file: expected 'm <int>'");
    if (n < 1 || m < 0) throw std::runtime_error("model file: invalid sizes");
    if (!(in >> key) || key != "vertex_factors")
        throw std::runtime_error("model file: expected 'vertex_factors'");
    std::vector<std::array<double, 2>> vertex_factor(n);
    for (auto& f : vertex_factor) {
        f[0] = parse_factor(in, "vertex factor");
        f[1] = parse_factor(in, "vertex factor");
    }
    if (!(in >> key) || key != "edges")
        throw std::runtime_error("model file: expected 'edges'");
    std::vector<std::pair<int, int>> edges(m);
    std::vector<std::array<double, 4>> edge_factor(m);
    for (int e = 0; e < m; ++e) {
        if (!(in >> edges[e].first >> edges[e].second))
            throw std::runtime_error("model file: truncated edge row");
        for (double& x : edge_factor[e]) x = parse_factor(in, "edge factor");
    }
    return make_model(n, std::move(edges), std::move(vertex_factor), std::move(edge_factor));
}

PairwiseModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_model(in);
}

} // namespace loopmc
