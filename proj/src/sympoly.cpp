#include "coboson/sympoly.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "coboson/errors.hpp"

namespace coboson {

namespace {

// Nonnegative scalar with a separate binary exponent: value = frac * 2^exp2,
// frac in [0.5, 1) or exactly 0. The symmetric-polynomial recurrences run in
// this representation so every step is a plain double multiply/add (no
// per-step log/exp rounding) while the range extends far beyond DBL_MIN;
// h_N, e_N underflow a raw double once N log(1/lambda_max) passes ~708.
struct Scaled {
    double frac = 0.0;
    std::int64_t exp2 = 0;

    static Scaled from(double x) {
        Scaled s;
        if (x != 0.0) {
            int e = 0;
            s.frac = std::frexp(x, &e);
            s.exp2 = e;
        }
        return s;
    }

    bool is_zero() const { return frac == 0.0; }

    Scaled times(const Scaled& o) const {
        if (is_zero() || o.is_zero()) return {};
        Scaled r;
        int e = 0;
        r.frac = std::frexp(frac * o.frac, &e);
        r.exp2 = exp2 + o.exp2 + e;
        return r;
    }

    Scaled plus(const Scaled& o) const {
        if (is_zero()) return o;
        if (o.is_zero()) return *this;
        const Scaled& hi = (exp2 >= o.exp2) ? *this : o;
        const Scaled& lo = (exp2 >= o.exp2) ? o : *this;
        const std::int64_t d = hi.exp2 - lo.exp2;
        if (d > 1076) return hi;  // lo is below one ulp of hi
        Scaled r;
        int e = 0;
        r.frac = std::frexp(hi.frac + std::ldexp(lo.frac, -static_cast<int>(d)), &e);
        r.exp2 = hi.exp2 + e;
        return r;
    }

    double log() const {
        if (is_zero()) return -std::numeric_limits<double>::infinity();
        return std::log(frac) + static_cast<double>(exp2) * std::numbers::ln2;
    }

    LogValue to_log_value() const {
        return is_zero() ? LogValue::zero() : LogValue::from_log(log(), +1);
    }
};

std::vector<double> checked_descending(std::span<const double> lambdas) {
    std::vector<double> sorted(lambdas.begin(), lambdas.end());
    for (double x : sorted) {
        if (!(x >= 0.0)) throw InvalidParameter("eigenvalues must be nonnegative and finite");
    }
    // Largest contributions accumulate first; keeps relative rounding drift low.
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());
    return sorted;
}

PolySeries to_series(PolyKind kind, const std::vector<Scaled>& vals, std::uint64_t fp) {
    PolySeries s;
    s.kind = kind;
    s.spectrum_fingerprint = fp;
    s.values.reserve(vals.size());
    for (const Scaled& v : vals) s.values.push_back(v.to_log_value());
    return s;
}

}  // namespace

std::uint64_t spectrum_fingerprint(std::span<const double> lambdas) {
    std::uint64_t h = 14695981039346656037ULL;
    auto mix = [&h](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xffULL;
            h *= 1099511628211ULL;
        }
    };
    for (double x : lambdas) mix(std::bit_cast<std::uint64_t>(x));
    return h;
}

PolySeries elementary_symmetric(std::span<const double> lambdas, int n_max) {
    if (n_max < 0) throw InvalidParameter("n_max must be nonnegative");
    const auto sorted = checked_descending(lambdas);
    std::vector<Scaled> e(static_cast<std::size_t>(n_max) + 1);
    e[0] = Scaled::from(1.0);
    int seen = 0;
    for (double lam : sorted) {
        if (lam == 0.0) break;  // sorted descending: the rest contribute nothing
        ++seen;
        const Scaled L = Scaled::from(lam);
        for (int j = std::min(n_max, seen); j >= 1; --j) {
            e[j] = e[j].plus(L.times(e[j - 1]));
        }
    }
    return to_series(PolyKind::Elementary, e, spectrum_fingerprint(lambdas));
}

PolySeries complete_homogeneous(std::span<const double> lambdas, int n_max) {
    if (n_max < 0) throw InvalidParameter("n_max must be nonnegative");
    const auto sorted = checked_descending(lambdas);
    std::vector<Scaled> h(static_cast<std::size_t>(n_max) + 1);
    h[0] = Scaled::from(1.0);
    for (double lam : sorted) {
        if (lam == 0.0) break;
        const Scaled L = Scaled::from(lam);
        // Ascending j: h[j-1] already contains the current eigenvalue, which
        // is exactly what admits repeated indices.
        for (int j = 1; j <= n_max; ++j) {
            h[j] = h[j].plus(L.times(h[j - 1]));
        }
    }
    return to_series(PolyKind::Homogeneous, h, spectrum_fingerprint(lambdas));
}

std::vector<double> power_sums(std::span<const double> lambdas, int k_max) {
    if (k_max < 1) throw InvalidParameter("k_max must be >= 1");
    for (double x : lambdas) {
        if (!(x >= 0.0)) throw InvalidParameter("eigenvalues must be nonnegative and finite");
    }
    std::vector<double> p(static_cast<std::size_t>(k_max) + 1, 0.0);
    p[0] = static_cast<double>(lambdas.size());
    for (int k = 1; k <= k_max; ++k) {
        double acc = 0.0;
        for (double lam : lambdas) acc += std::pow(lam, k);
        p[k] = acc;
    }
    return p;
}

PolySeries newton_from_power_sums(std::span<const double> p, int n_max, PolyKind kind) {
    if (n_max < 0) throw InvalidParameter("n_max must be nonnegative");
    if (static_cast<int>(p.size()) < n_max + 1) {
        throw InvalidParameter("power sums p_1..p_N required (power_sums layout)");
    }
    PolySeries s;
    s.kind = kind;
    s.spectrum_fingerprint = spectrum_fingerprint(p);
    s.values.assign(static_cast<std::size_t>(n_max) + 1, LogValue::zero());
    s.values[0] = LogValue::one();
    for (int n = 1; n <= n_max; ++n) {
        LogValue acc = LogValue::zero();
        for (int k = 1; k <= n; ++k) {
            LogValue term = s.values[n - k] * LogValue::from_double(p[k]);
            if (kind == PolyKind::Elementary && k % 2 == 0) term = term.negated();
            acc = acc + term;
        }
        s.values[n] = acc * LogValue::from_double(1.0 / n);
    }
    return s;
}

double brute_force_ordered_sum(std::span<const double> lambdas, int n, bool strict) {
    if (n < 0) throw InvalidParameter("tuple length must be nonnegative");
    if (n == 0) return 1.0;  // empty product
    const std::size_t m = lambdas.size();
    if (m == 0) return 0.0;
    for (double x : lambdas) {
        if (!(x >= 0.0)) throw InvalidParameter("eigenvalues must be nonnegative and finite");
    }
    if (static_cast<double>(n) * std::log(static_cast<double>(m)) > std::log(1e8) * (1.0 + 1e-12)) {
        throw SizeGuardError("brute-force enumeration refused: len(lambdas)^N exceeds 1e8");
    }
    auto rec = [&](auto&& self, std::size_t start, int remaining) -> double {
        if (remaining == 0) return 1.0;
        double acc = 0.0;
        for (std::size_t i = start; i < m; ++i) {
            acc += lambdas[i] * self(self, strict ? i + 1 : i, remaining - 1);
        }
        return acc;
    };
    return rec(rec, 0, n);
}

}  // namespace coboson
