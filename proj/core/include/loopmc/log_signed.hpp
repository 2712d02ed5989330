#pragma once

#include <cmath>
#include <limits>

namespace loopmc {

// A signed quantity stored as (sign, log|x|). Loop-series terms span hundreds
// of orders of magnitude and carry signs, so all series arithmetic runs in
// this representation.
struct LogSigned {
    double log_abs = -std::numeric_limits<double>::infinity();
    int sign = 0;

    static LogSigned zero() { return {}; }
    static LogSigned one() { return {0.0, 1}; }

    static LogSigned from_value(double x) {
        if (x > 0) return {std::log(x), 1};
        if (x < 0) return {std::log(-x), -1};
        return {};
    }

    static LogSigned from_log(double log_abs, int sign) {
        if (sign == 0 || log_abs == -std::numeric_limits<double>::infinity()) return {};
        return {log_abs, sign < 0 ? -1 : 1};
    }

    bool is_zero() const { return sign == 0; }
    double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }

    LogSigned operator*(const LogSigned& o) const {
        if (sign == 0 || o.sign == 0) return {};
        return {log_abs + o.log_abs, sign * o.sign};
    }
    LogSigned& operator*=(const LogSigned& o) { return *this = *this * o; }
};

// Streaming signed log-sum-exp with Kahan compensation on the rescaled
// mantissa sum. Terms must be fed in a fixed order for bit determinism.
class SignedLse {
public:
    void add(const LogSigned& t) {
        if (t.sign == 0) return;
        if (t.log_abs > max_log_) {
            const double scale = std::exp(max_log_ - t.log_abs);
            sum_ *= scale;
            comp_ *= scale;
            max_log_ = t.log_abs;
        }
        kahan_add(t.sign * std::exp(t.log_abs - max_log_));
    }

    LogSigned result() const {
        if (max_log_ == -std::numeric_limits<double>::infinity() || sum_ == 0.0) return {};
        return {max_log_ + std::log(std::fabs(sum_)), sum_ > 0 ? 1 : -1};
    }

private:
    void kahan_add(double x) {
        const double y = x - comp_;
        const double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }

    double max_log_ = -std::numeric_limits<double>::infinity();
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// log( (1/k) * sum_i exp(log_terms[i]) ) over a fixed-order span.
inline double log_mean_exp(const double* log_terms, std::size_t k) {
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < k; ++i) m = std::max(m, log_terms[i]);
    if (m == -std::numeric_limits<double>::infinity()) return m;
    double s = 0.0, c = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double y = std::exp(log_terms[i] - m) - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return m + std::log(s) - std::log(static_cast<double>(k));
}

} // namespace loopmc
