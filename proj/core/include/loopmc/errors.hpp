#pragma once

#include <stdexcept>
#include <string>

namespace loopmc {

// Hard size limits on exhaustive routines; exceeding them throws instead of hanging.
class size_guard_error : public std::invalid_argument {
public:
    explicit size_guard_error(const std::string& what) : std::invalid_argument(what) {}
};

// A BP vertex marginal sits on {0,1} within tolerance, so correlation weights are undefined.
class degenerate_marginal_error : public std::runtime_error {
public:
    explicit degenerate_marginal_error(const std::string& what) : std::runtime_error(what) {}
};

// The estimated series total has non-positive sign; no log-partition value can be formed.
class negative_series_error : public std::runtime_error {
public:
    explicit negative_series_error(const std::string& what) : std::runtime_error(what) {}
};

// The estimated fraction of negative-weight samples leaves |1-2*kappa| below the
// configured threshold, so the sign factor is statistically indistinguishable from 0.
class sign_collapse_error : public std::runtime_error {
public:
    explicit sign_collapse_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace loopmc
