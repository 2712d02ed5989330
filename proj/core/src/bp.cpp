#include "loopmc/bp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "loopmc/errors.hpp"

namespace loopmc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// psi_e evaluated with x_from at the message source and x_to at the target.
inline double edge_value(const PairwiseModel& model, int e, int from, int x_from, int x_to) {
    return model.edges[e].first == from ? model.edge_factor[e][2 * x_from + x_to]
                                        : model.edge_factor[e][2 * x_to + x_from];
}

// Index of the directed message from -> to along edge e.
inline int dir_index(const PairwiseModel& model, int e, int from) {
    return 2 * e + (model.edges[e].first == from ? 0 : 1);
}

// Product of psi_s(x) and all messages into s except the one arriving along
// edge excluded_e (pass -1 to keep all). Built by direct multiplication so
// zero entries need no special casing.
inline double in_product(const PairwiseModel& model,
                         const std::vector<std::array<double, 2>>& message, int s, int x,
                         int excluded_e) {
    double p = model.vertex_factor[s][x];
    for (const auto& [w, f] : model.adjacency[s]) {
        if (f == excluded_e) continue;
        p *= message[dir_index(model, f, w)][x];
    }
    return p;
}

double xlogy(double x, double y) {
    if (x <= 0.0) return 0.0;
    return y == 0.0 ? -kInf : x * std::log(y);
}

} // namespace

BPFixedPoint run_bp(const PairwiseModel& model, const BPOptions& options) {
    if (options.damping < 0.0 || options.damping >= 1.0)
        throw std::invalid_argument("damping must lie in [0,1)");
    if (!(options.tol > 0.0)) throw std::invalid_argument("tol must be positive");

    const int m = model.num_edges();
    BPFixedPoint fp;
    fp.message.assign(2 * m, {0.5, 0.5});
    if (options.init_messages) {
        if (options.init_messages->size() != static_cast<std::size_t>(2 * m))
            throw std::invalid_argument("init_messages must hold 2m entries");
        fp.message = *options.init_messages;
    }

    std::vector<std::array<double, 2>> next(2 * m);
    for (std::int64_t iter = 1; iter <= options.max_iters && m > 0; ++iter) {
        for (int e = 0; e < m; ++e) {
            for (int dir = 0; dir < 2; ++dir) {
                const int s = dir == 0 ? model.edges[e].first : model.edges[e].second;
                std::array<double, 2> upd{};
                for (int xt = 0; xt < 2; ++xt)
                    for (int xs = 0; xs < 2; ++xs)
                        upd[xt] += edge_value(model, e, s, xs, xt) *
                                   in_product(model, fp.message, s, xs, e);
                const double norm = upd[0] + upd[1];
                if (norm <= 0.0 || !std::isfinite(norm)) {
                    upd = {0.5, 0.5};
                    ++fp.degenerate_resets;
                } else {
                    upd[0] /= norm;
                    upd[1] /= norm;
                }
                next[2 * e + dir] = upd;
            }
        }
        double residual = 0.0;
        for (int i = 0; i < 2 * m; ++i)
            for (int x = 0; x < 2; ++x) {
                const double blended =
                    (1.0 - options.damping) * next[i][x] + options.damping * fp.message[i][x];
                residual = std::max(residual, std::fabs(blended - fp.message[i][x]));
                next[i][x] = blended;
            }
        fp.message.swap(next);
        fp.residual = residual;
        fp.iterations = iter;
        if (residual <= options.tol) {
            fp.converged = true;
            break;
        }
    }
    if (m == 0) fp.converged = true;

    fp.tau_v.resize(model.n);
    for (int v = 0; v < model.n; ++v) {
        const double b0 = in_product(model, fp.message, v, 0, -1);
        const double b1 = in_product(model, fp.message, v, 1, -1);
        const double norm = b0 + b1;
        if (norm <= 0.0 || !std::isfinite(norm)) {
            fp.tau_v[v] = 0.5;
            ++fp.degenerate_resets;
        } else {
            fp.tau_v[v] = b1 / norm;
        }
    }

    fp.tau_uv.resize(m);
    for (int e = 0; e < m; ++e) {
        const auto [u, v] = model.edges[e];
        std::array<double, 4> b{};
        double norm = 0.0;
        for (int xu = 0; xu < 2; ++xu)
            for (int xv = 0; xv < 2; ++xv) {
                const double val = model.edge_factor[e][2 * xu + xv] *
                                   in_product(model, fp.message, u, xu, e) *
                                   in_product(model, fp.message, v, xv, e);
                b[2 * xu + xv] = val;
                norm += val;
            }
        if (norm <= 0.0 || !std::isfinite(norm)) {
            b = {0.25, 0.25, 0.25, 0.25};
            ++fp.degenerate_resets;
        } else {
            for (double& x : b) x /= norm;
        }
        fp.tau_uv[e] = b;
    }

    for (int e = 0; e < m; ++e) {
        const auto [u, v] = model.edges[e];
        const auto& b = fp.tau_uv[e];
        fp.consistency_gap =
            std::max({fp.consistency_gap, std::fabs(b[2] + b[3] - fp.tau_v[u]),
                      std::fabs(b[1] + b[3] - fp.tau_v[v])});
    }

    double bethe = 0.0;
    for (int v = 0; v < model.n; ++v) {
        const double tau[2] = {1.0 - fp.tau_v[v], fp.tau_v[v]};
        for (int x = 0; x < 2; ++x) {
            bethe += xlogy(tau[x], model.vertex_factor[v][x]);
            bethe -= xlogy(tau[x], tau[x]);
        }
    }
    for (int e = 0; e < m; ++e) {
        const auto [u, v] = model.edges[e];
        const double tu[2] = {1.0 - fp.tau_v[u], fp.tau_v[u]};
        const double tv[2] = {1.0 - fp.tau_v[v], fp.tau_v[v]};
        for (int xu = 0; xu < 2; ++xu)
            for (int xv = 0; xv < 2; ++xv) {
                const double t = fp.tau_uv[e][2 * xu + xv];
                bethe += xlogy(t, model.edge_factor[e][2 * xu + xv]);
                if (t > 0.0) bethe -= t * std::log(t / (tu[xu] * tv[xv]));
            }
    }
    fp.bethe_log_z = bethe;
    return fp;
}

EdgeWeights edge_weight_magnitudes(const PairwiseModel& model, const BPFixedPoint& fp) {
    // Beliefs a hair outside [0,1] (from finite BP tolerance) are tolerated up
    // to the marginalization-consistency scale, never past it.
    constexpr double kClampWindow = 1e-8;

    EdgeWeights w;
    const int m = model.num_edges();
    w.signed_corr.resize(m);
    w.magnitude.resize(m);
    w.log_magnitude.resize(m);
    for (int v = 0; v < model.n; ++v)
        if (fp.tau_v[v] < 1e-12 || fp.tau_v[v] > 1.0 - 1e-12)
            throw degenerate_marginal_error("vertex belief at vertex " + std::to_string(v) +
                                            " is within 1e-12 of {0,1}");
    w.w_min = kInf;
    for (int e = 0; e < m; ++e) {
        const auto [u, v] = model.edges[e];
        const double tu = fp.tau_v[u], tv = fp.tau_v[v];
        const double denom = std::sqrt(tu * tv * (1.0 - tu) * (1.0 - tv));
        const double corr = (fp.tau_uv[e][3] - tu * tv) / denom;
        double mag = std::fabs(corr);
        if (mag > 1.0) {
            if (mag > 1.0 + kClampWindow)
                throw std::invalid_argument("edge correlation magnitude exceeds 1 at edge " +
                                            std::to_string(e));
            mag = 1.0;
        }
        w.signed_corr[e] = corr;
        w.magnitude[e] = mag;
        w.log_magnitude[e] = mag == 0.0 ? -kInf : std::log(mag);
        w.w_min = std::min(w.w_min, mag);
    }
    if (m == 0) w.w_min = 0.0;
    return w;
}

void write_fixed_point(std::ostream& out, const PairwiseModel& model, const BPFixedPoint& fp) {
    out << "n " << model.n << "\n";
    out << "m " << model.num_edges() << "\n";
    out << "converged " << (fp.converged ? 1 : 0) << "\n";
    out << "iterations " << fp.iterations << "\n";
    out << "residual " << fmt(fp.residual) << "\n";
    out << "degenerate_resets " << fp.degenerate_resets << "\n";
    out << "consistency_gap " << fmt(fp.consistency_gap) << "\n";
    out << "bethe_log_z " << fmt(fp.bethe_log_z) << "\n";
    out << "vertex_marginals\n";
    for (double t : fp.tau_v) out << fmt(t) << "\n";
    out << "edge_marginals\n";
    for (int e = 0; e < model.num_edges(); ++e) {
        out << model.edges[e].first << " " << model.edges[e].second;
        for (double t : fp.tau_uv[e]) out << " " << fmt(t);
        out << "\n";
    }
}

void save_fixed_point(const std::string& path, const PairwiseModel& model,
                      const BPFixedPoint& fp) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    write_fixed_point(out, model, fp);
}

BPFixedPoint read_fixed_point(std::istream& in, const PairwiseModel& model) {
    auto expect = [&in](const char* key) {
        std::string k;
        if (!(in >> k) || k != key)
            throw std::runtime_error(std::string("fixed-point file: expected '") + key + "'");
    };
    BPFixedPoint fp;
    int n = 0, m = 0, converged = 0;
    expect("n");
    in >> n;
    expect("m");
    in >> m;
    if (n != model.n || m != model.num_edges())
        throw std::runtime_error("fixed-point file does not match the model dimensions");
    expect("converged");
    in >> converged;
    fp.converged = converged != 0;
    expect("iterations");
    in >> fp.iterations;
    expect("residual");
    in >> fp.residual;
    expect("degenerate_resets");
    in >> fp.degenerate_resets;
    expect("consistency_gap");
    in >> fp.consistency_gap;
    expect("bethe_log_z");
    in >> fp.bethe_log_z;
    if (!in) throw std::runtime_error("fixed-point file: malformed header");
    expect("vertex_marginals");
    fp.tau_v.resize(n);
    for (double& t : fp.tau_v)
        if (!(in >> t)) throw std::runtime_error("fixed-point file: truncated marginals");
    expect("edge_marginals");
    fp.tau_uv.resize(m);
    for (int e = 0; e < m; ++e) {
        int u, v;
        if (!(in >> u >> v) || u != model.edges[e].first || v != model.edges[e].second)
            throw std::runtime_error("fixed-point file: edge row mismatch");
        for (double& t : fp.tau_uv[e])
            if (!(in >> t)) throw std::runtime_error("fixed-point file: truncated edge beliefs");
    }
    fp.message.assign(2 * m, {0.5, 0.5});
    return fp;
}

BPFixedPoint load_fixed_point(const std::string& path, const PairwiseModel& model) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_fixed_point(in, model);
}

} // namespace loopmc
