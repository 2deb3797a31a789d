#include "coboson/chi.hpp"

#include <cmath>
#include <limits>

#include "coboson/errors.hpp"
#include "coboson/sympoly.hpp"

namespace coboson {

namespace {

void require_index(const ChiTable& table, int n, const char* what) {
    if (n < 0 || n > table.n_max()) {
        throw InvalidParameter(std::string("chi table does not cover N requested by ") + what);
    }
}

// Relative deficiency of a truncated chi_N against the untruncated value:
// every missing index tuple has a largest index inside the tail, so
//   chi_N(full) - chi_N(kept) <= tail * N * chi_{N-1}(full),
// giving the recursion b_N = tail * N * (chi_{N-1}/chi_N) * (1 + b_{N-1}).
// A zero chi_N with a nonzero tail (fermionic N past the kept modes) cannot
// be estimated at all and gets +inf.
std::vector<double> tail_bounds_from_table(const std::vector<LogValue>& chi, double tail) {
    std::vector<double> bounds(chi.size(), 0.0);
    if (tail <= 0.0) return bounds;
    double below = 0.0;
    for (std::size_t n = 1; n < chi.size(); ++n) {
        if (chi[n].is_zero()) {
            below = std::numeric_limits<double>::infinity();
        } else {
            const double log_term = std::log(tail) + std::log(static_cast<double>(n)) +
                                    chi[n - 1].log_magnitude - chi[n].log_magnitude;
            below = std::exp(log_term) * (1.0 + below);
        }
        bounds[n] = below;
    }
    return bounds;
}

}  // namespace

const char* statistics_name(Statistics s) {
    return s == Statistics::Boson ? "boson" : "fermion";
}

ChiTable chi_table(const SchmidtSpectrum& spec, Statistics stats, int n_max) {
    if (n_max < 1) throw InvalidParameter("n_max must be >= 1");
    spec.validate();

    const PolySeries series = (stats == Statistics::Fermion)
                                  ? elementary_symmetric(spec.lambdas, n_max)
                                  : complete_homogeneous(spec.lambdas, n_max);
    ChiTable table;
    table.stats = stats;
    table.source = ChiSource::Dp;
    table.chi.resize(static_cast<std::size_t>(n_max) + 1);
    table.chi[0] = LogValue::one();
    for (int n = 1; n <= n_max; ++n) {
        const LogValue& v = series[static_cast<std::size_t>(n)];
        table.chi[static_cast<std::size_t>(n)] =
            v.is_zero() ? LogValue::zero()
                        : LogValue::from_log(std::lgamma(n + 1.0) + v.log_magnitude, +1);
    }
    table.tail_error_bounds = tail_bounds_from_table(table.chi, spec.tail_mass);
    for (double b : table.tail_error_bounds) table.tail_error_bound = std::max(table.tail_error_bound, b);
    return table;
}

ChiTable chi_geometric_closed(double z, Statistics stats, int n_max) {
    if (!(z > 0.0) || z >= 1.0) throw InvalidParameter("closed form requires 0 < z < 1");
    if (n_max < 1) throw InvalidParameter("n_max must be >= 1");

    ChiTable table;
    table.stats = stats;
    table.source = ChiSource::ClosedFormGeometric;
    table.tail_error_bound = 0.0;
    table.tail_error_bounds.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
    table.chi.resize(static_cast<std::size_t>(n_max) + 1);
    table.chi[0] = LogValue::one();

    const double log_head = std::log1p(-z);  // log(1 - z)
    const double log_z = std::log(z);
    double log_qfac = 0.0;  // log prod_{k=1..N} (1 - z^k)
    for (int n = 1; n <= n_max; ++n) {
        log_qfac += std::log1p(-std::pow(z, n));
        double lm = std::lgamma(n + 1.0) + n * log_head - log_qfac;
        if (stats == Statistics::Fermion) {
            lm += 0.5 * static_cast<double>(n) * static_cast<double>(n - 1) * log_z;
        }
        table.chi[static_cast<std::size_t>(n)] = LogValue::from_log(lm, +1);
    }
    return table;
}

double normalization_ratio(const ChiTable& table, int n) {
    require_index(table, n, "normalization_ratio");
    require_index(table, n + 1, "normalization_ratio");
    const LogValue& denom = table.chi[static_cast<std::size_t>(n)];
    if (denom.is_zero()) {
        throw PauliBlockedError("chi_N = 0: composite fermion pairs exceed the available modes");
    }
    const LogValue& numer = table.chi[static_cast<std::size_t>(n + 1)];
    if (numer.is_zero()) return 0.0;
    return std::exp(numer.log_magnitude - denom.log_magnitude);
}

double alpha(const ChiTable& table, int n) {
    if (n < 1) throw InvalidParameter("alpha is defined for N >= 1");
    require_index(table, n, "alpha");
    const LogValue& below = table.chi[static_cast<std::size_t>(n - 1)];
    if (below.is_zero()) {
        throw PauliBlockedError("chi_{N-1} = 0: alpha_N undefined past the Pauli edge");
    }
    const LogValue& at = table.chi[static_cast<std::size_t>(n)];
    if (at.is_zero()) return 0.0;
    return std::exp(0.5 * (at.log_magnitude - below.log_magnitude));
}

double epsilon_norm_sq(const ChiTable& table, int n) {
    if (n < 2) throw InvalidParameter("the epsilon norm identity holds for N >= 2 only");
    require_index(table, n + 1, "epsilon_norm_sq");
    const LogValue& below = table.chi[static_cast<std::size_t>(n - 1)];
    const LogValue& at = table.chi[static_cast<std::size_t>(n)];
    if (below.is_zero() || at.is_zero()) {
        throw PauliBlockedError("chi ratio undefined: Pauli-blocked denominator");
    }
    const double r_down = std::exp(at.log_magnitude - below.log_magnitude);
    const LogValue& above = table.chi[static_cast<std::size_t>(n + 1)];
    const double r_up = above.is_zero() ? 0.0 : std::exp(above.log_magnitude - at.log_magnitude);
    double v = 1.0 - n * r_down + (n - 1) * r_up;
    if (v < 0.0) {
        if (v < -1e-12) throw NumericError("epsilon norm came out significantly negative");
        v = 0.0;
    }
    return v;
}

double asymptotic_ratio(double schmidt_number, int n, Statistics stats) {
    if (!(schmidt_number >= 1.0)) throw InvalidParameter("Schmidt number must be >= 1");
    if (n < 1) throw InvalidParameter("N must be >= 1");
    return 1.0 + statistics_sign(stats) * static_cast<double>(n) / schmidt_number;
}

QualityReport quality_report(const SchmidtSpectrum& spec, Statistics stats, int n_max) {
    if (n_max < 1) throw InvalidParameter("n_max must be >= 1");
    // One extra order so ratio and epsilon are available at n_max itself.
    const ChiTable table = chi_table(spec, stats, n_max + 1);
    QualityReport report;
    report.stats = stats;
    report.schmidt_number = schmidt_number(spec);
    report.tail_error_bound = table.tail_error_bound;
    report.rows.reserve(static_cast<std::size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) {
        QualityRow row;
        row.n = n;
        const LogValue& below = table.chi[static_cast<std::size_t>(n - 1)];
        const LogValue& at = table.chi[static_cast<std::size_t>(n)];
        row.pauli_blocked = at.is_zero();
        if (!below.is_zero()) {
            row.alpha = alpha(table, n);
            if (!at.is_zero()) {
                row.ratio = normalization_ratio(table, n);
                if (n >= 2) row.eps_norm_sq = epsilon_norm_sq(table, n);
            }
        }
        row.asymptotic_ratio = asymptotic_ratio(report.schmidt_number, n, stats);
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace coboson
