#pragma once

#include <cmath>
#include <limits>

namespace coboson {

// Signed log-domain scalar: value = sign * exp(log_magnitude).
//
// The normalization constants chi_N carry an N! factor, which overflows a
// plain double near N ~ 170; chi tables therefore store LogValues. sign == 0
// encodes exact zero (log_magnitude is -inf in that case), which is how
// Pauli-blocked fermionic chi_N are represented without NaN leakage.
struct LogValue {
    double log_magnitude = -std::numeric_limits<double>::infinity();
    int sign = 0;

    static LogValue zero() { return {}; }
    static LogValue one() { return {0.0, +1}; }

    static LogValue from_double(double x) {
        if (x == 0.0) return zero();
        return {std::log(std::abs(x)), x > 0.0 ? +1 : -1};
    }

    static LogValue from_log(double log_mag, int sgn = +1) {
        if (sgn == 0 || log_mag == -std::numeric_limits<double>::infinity()) return zero();
        return {log_mag, sgn > 0 ? +1 : -1};
    }

    bool is_zero() const { return sign == 0; }

    // May overflow to +/-inf or underflow to 0; callers that need the full
    // range stay in the log domain.
    double to_double() const { return sign == 0 ? 0.0 : sign * std::exp(log_magnitude); }

    LogValue negated() const { return {log_magnitude, -sign}; }

    friend LogValue operator*(const LogValue& a, const LogValue& b) {
        if (a.sign == 0 || b.sign == 0) return zero();
        return {a.log_magnitude + b.log_magnitude, a.sign * b.sign};
    }

    friend LogValue operator+(const LogValue& a, const LogValue& b) {
        if (a.sign == 0) return b;
        if (b.sign == 0) return a;
        if (a.sign == b.sign) {
            double hi = std::max(a.log_magnitude, b.log_magnitude);
            double lo = std::min(a.log_magnitude, b.log_magnitude);
            return {hi + std::log1p(std::exp(lo - hi)), a.sign};
        }
        // Opposite signs: the larger magnitude wins; equal magnitudes cancel.
        if (a.log_magnitude == b.log_magnitude) return zero();
        const LogValue& big = (a.log_magnitude > b.log_magnitude) ? a : b;
        const LogValue& small = (a.log_magnitude > b.log_magnitude) ? b : a;
        double lm = big.log_magnitude + std::log1p(-std::exp(small.log_magnitude - big.log_magnitude));
        return from_log(lm, big.sign);
    }

    friend LogValue operator-(const LogValue& a, const LogValue& b) { return a + b.negated(); }
};

}  // namespace coboson
