#include "coboson/verify.hpp"

#include <cmath>
#include <random>

#include "coboson/chi.hpp"
#include "coboson/errors.hpp"
#include "coboson/fock.hpp"
#include "coboson/schmidt.hpp"
#include "coboson/sympoly.hpp"

namespace coboson {

namespace {

// Uniform in [0,1) straight from the generator bits; distributions are not
// guaranteed identical across standard libraries, raw bits are.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<double> random_lambdas(std::mt19937_64& rng, int length, bool normalize,
                                   bool allow_zeros) {
    std::vector<double> lambdas(static_cast<std::size_t>(length));
    double sum = 0.0;
    for (double& l : lambdas) {
        l = uniform01(rng);
        if (allow_zeros && uniform01(rng) < 0.2) l = 0.0;
        sum += l;
    }
    if (normalize) {
        if (sum == 0.0) {
            lambdas[0] = 1.0;
        } else {
            for (double& l : lambdas) l /= sum;
        }
    }
    return lambdas;
}

double rel_err(double value, double reference) {
    const double scale = std::max(std::abs(reference), 1e-300);
    return std::abs(value - reference) / scale;
}

void track(SuiteResult& suite, double err, double limit, double base_tol, const std::string& what) {
    ++suite.cases;
    if (limit <= 2.0 * base_tol) suite.max_rel_err = std::max(suite.max_rel_err, err);
    if (limit > 0.0 && std::isfinite(limit)) {
        suite.worst_allowance_fraction = std::max(suite.worst_allowance_fraction, err / limit);
    }
    if (err > limit && suite.passed) {
        suite.passed = false;
        suite.detail = what;
    }
}

SuiteResult suite_dp_vs_bruteforce(const VerifyOptions& opt) {
    SuiteResult suite;
    suite.name = "sympoly dp vs brute force";
    std::mt19937_64 rng(opt.seed);
    for (int trial = 0; trial < 50; ++trial) {
        const int m = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(opt.max_m));
        const auto lambdas = random_lambdas(rng, m, trial % 2 == 0, trial % 3 == 0);
        const auto e = elementary_symmetric(lambdas, opt.max_n);
        const auto h = complete_homogeneous(lambdas, opt.max_n);
        for (int n = 0; n <= opt.max_n; ++n) {
            const double brute_e = brute_force_ordered_sum(lambdas, n, /*strict=*/true);
            const double brute_h = brute_force_ordered_sum(lambdas, n, /*strict=*/false);
            track(suite, rel_err(e[n].to_double(), brute_e), opt.tolerance, opt.tolerance,
                  "elementary mismatch at N=" + std::to_string(n));
            track(suite, rel_err(h[n].to_double(), brute_h), opt.tolerance, opt.tolerance,
                  "homogeneous mismatch at N=" + std::to_string(n));
        }
    }
    return suite;
}

SuiteResult suite_closed_vs_dp(const VerifyOptions& opt) {
    SuiteResult suite;
    suite.name = "geometric closed form vs dp";
    for (int zi = 1; zi <= 9; ++zi) {
        const double z = zi / 10.0;
        const auto spec = geometric_spectrum(z, 1e-14);
        for (Statistics stats : {Statistics::Boson, Statistics::Fermion}) {
            const auto closed = chi_geometric_closed(z, stats, 20);
            const auto dp = chi_table(spec, stats, 20);
            for (int n = 1; n <= 20; ++n) {
                // The truncated table cannot do better than its own tail
                // bound (fermionic chi at deep N loses z^(M-N+1)-level mass).
                const double limit = opt.tolerance + dp.tail_error_bounds[n];
                const double err = dp.chi[n].is_zero()
                                       ? 1.0
                                       : std::abs(std::expm1(dp.chi[n].log_magnitude -
                                                             closed.chi[n].log_magnitude));
                track(suite, std::isfinite(limit) ? err : 0.0, limit, opt.tolerance,
                      std::string(statistics_name(stats)) + " chi mismatch at z=" +
                          std::to_string(z) + " N=" + std::to_string(n));
            }
        }
    }
    return suite;
}

SuiteResult suite_newton_vs_dp(const VerifyOptions& opt) {
    SuiteResult suite;
    suite.name = "newton identities vs dp";
    // The homogeneous identity is an all-positive sum and is checked across
    // the board. The elementary identity alternates signs and its condition
    // number grows like 1/(N z^{N(N-1)/2}); it is checked only on the
    // measured well-conditioned domain.
    auto check = [&](double z, PolyKind kind, int n_limit) {
        const auto spec = geometric_spectrum(z, 1e-14);
        const auto p = power_sums(spec.lambdas, n_limit);
        const auto newton = newton_from_power_sums(p, n_limit, kind);
        const auto dp = (kind == PolyKind::Elementary)
                            ? elementary_symmetric(spec.lambdas, n_limit)
                            : complete_homogeneous(spec.lambdas, n_limit);
        for (int n = 1; n <= n_limit; ++n) {
            const double err = std::abs(std::expm1(newton[n].log_magnitude - dp[n].log_magnitude));
            track(suite, err, opt.tolerance, opt.tolerance,
                  std::string(kind == PolyKind::Elementary ? "elementary" : "homogeneous") +
                      " newton mismatch at z=" + std::to_string(z) + " N=" + std::to_string(n));
        }
    };
    for (double z : {0.2, 0.5, 0.8}) check(z, PolyKind::Homogeneous, 20);
    check(0.95, PolyKind::Elementary, 20);
    check(0.5, PolyKind::Elementary, 6);
    check(0.2, PolyKind::Elementary, 4);
    return suite;
}

SuiteResult suite_fock_vs_formula(const VerifyOptions& opt) {
    SuiteResult suite;
    suite.name = "fock oracle vs formula path";
    std::mt19937_64 rng(opt.seed ^ 0x9e3779b97f4a7c15ULL);
    const int n_cap = std::min(opt.max_n, 5);

    auto check_spectrum = [&](const SchmidtSpectrum& spec) {
        for (Statistics stats : {Statistics::Boson, Statistics::Fermion}) {
            const ChiTable table = chi_table(spec, stats, n_cap + 1);
            const double limit = opt.tolerance + table.tail_error_bound;
            for (int n = 1; n <= n_cap; ++n) {
                const double oracle = chi_by_oracle(spec.lambdas, stats, n);
                const double formula = table.chi[n].to_double();
                track(suite, rel_err(oracle, formula), limit, opt.tolerance,
                      std::string(statistics_name(stats)) + " chi oracle mismatch at N=" +
                          std::to_string(n));
            }
            // Epsilon decomposition at N = 2 where defined.
            if (!table.chi[1].is_zero() && !table.chi[2].is_zero()) {
                const auto measured = epsilon_by_oracle(spec.lambdas, stats, 2);
                track(suite, std::abs(measured.alpha - alpha(table, 2)), limit, opt.tolerance,
                      std::string(statistics_name(stats)) + " alpha_2 oracle mismatch");
                track(suite, std::abs(measured.eps_norm_sq - epsilon_norm_sq(table, 2)), limit,
                      opt.tolerance,
                      std::string(statistics_name(stats)) + " eps_2 oracle mismatch");
            }
        }
    };

    for (int trial = 0; trial < 12; ++trial) {
        const int m = 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(std::min(opt.max_m, 8) - 1));
        check_spectrum(explicit_spectrum(random_lambdas(rng, m, true, false)));
    }
    for (double z : {0.3, 0.5, 0.7}) {
        // Cut to 12 modes and renormalized: the epsilon identity embeds
        // sum(lambda) = 1, so unit mass must be restored after truncation.
        SchmidtSpectrum spec = geometric_spectrum(z, 1e-14);
        spec.lambdas.resize(12);
        const double kept = spec.kept_mass();
        for (double& l : spec.lambdas) l /= kept;
        spec.tail_mass = 0.0;
        check_spectrum(spec);
    }
    return suite;
}

}  // namespace

std::vector<SuiteResult> run_verification(const VerifyOptions& opt) {
    if (opt.max_n < 1 || opt.max_m < 1) throw InvalidParameter("max_n and max_m must be >= 1");
    if (static_cast<double>(opt.max_n) * std::log(static_cast<double>(opt.max_m)) >
        std::log(1e8) * (1.0 + 1e-12)) {
        throw SizeGuardError("verification refused: max_m^max_n exceeds the 1e8 enumeration guard");
    }
    if (static_cast<double>(std::min(opt.max_n, 5)) *
            std::log(static_cast<double>(std::min(opt.max_m, 8))) >
        std::log(1e7) * (1.0 + 1e-12)) {
        throw SizeGuardError("verification refused: oracle state count exceeds the 1e7 guard");
    }
    return {
        suite_dp_vs_bruteforce(opt),
        suite_closed_vs_dp(opt),
        suite_newton_vs_dp(opt),
        suite_fock_vs_formula(opt),
    };
}

}  // namespace coboson
