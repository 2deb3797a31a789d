#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "coboson/errors.hpp"
#include "coboson/logvalue.hpp"
#include "coboson/schmidt.hpp"
#include "coboson/sympoly.hpp"

using namespace coboson;

namespace {

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double rel_diff(double a, double b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace

TEST_CASE("log value arithmetic") {
    const LogValue two = LogValue::from_double(2.0);
    const LogValue three = LogValue::from_double(3.0);
    CHECK((two * three).to_double() == doctest::Approx(6.0).epsilon(1e-15));
    CHECK((two + three).to_double() == doctest::Approx(5.0).epsilon(1e-15));
    CHECK((three - two).to_double() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK((two - three).to_double() == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK((two - two).is_zero());
    CHECK((LogValue::zero() + three).to_double() == doctest::Approx(3.0));
    CHECK((three * LogValue::zero()).is_zero());
    CHECK(LogValue::from_double(-4.0).sign == -1);
    CHECK(LogValue::from_double(-4.0).to_double() == doctest::Approx(-4.0));
    CHECK(LogValue::one().log_magnitude == 0.0);
}

TEST_CASE("elementary symmetric basics") {
    SUBCASE("single eigenvalue has Pauli structure") {
        const auto e = elementary_symmetric(std::vector<double>{1.0}, 2);
        CHECK(e[0].to_double() == 1.0);
        CHECK(e[1].to_double() == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(e[2].is_zero());
        CHECK(e[2].sign == 0);
    }
    SUBCASE("three-mode pair sum") {
        const std::vector<double> lam{0.5, 0.25, 0.125};
        const auto e = elementary_symmetric(lam, 2);
        // 0.5*0.25 + 0.5*0.125 + 0.25*0.125, checked against the enumerator
        CHECK(e[2].to_double() == doctest::Approx(0.21875).epsilon(1e-14));
        CHECK(e[2].to_double() ==
              doctest::Approx(brute_force_ordered_sum(lam, 2, true)).epsilon(1e-13));
    }
    SUBCASE("uniform quarter weights, full depth") {
        const std::vector<double> lam(4, 0.25);
        const auto e = elementary_symmetric(lam, 4);
        CHECK(e[4].to_double() == doctest::Approx(0.00390625).epsilon(1e-14));  // (1/4)^4
    }
    SUBCASE("negative eigenvalue refused") {
        CHECK_THROWS_AS(elementary_symmetric(std::vector<double>{0.5, -0.1}, 2), InvalidParameter);
    }
}

TEST_CASE("complete homogeneous basics") {
    SUBCASE("single variable gives plain powers") {
        const auto h = complete_homogeneous(std::vector<double>{1.0}, 3);
        for (int j = 0; j <= 3; ++j) CHECK(h[j].to_double() == doctest::Approx(1.0).epsilon(1e-15));
    }
    SUBCASE("three-mode pair sum with repetition") {
        const std::vector<double> lam{0.5, 0.25, 0.125};
        const auto h = complete_homogeneous(lam, 2);
        CHECK(h[2].to_double() == doctest::Approx(0.546875).epsilon(1e-14));
        CHECK(h[2].to_double() ==
              doctest::Approx(brute_force_ordered_sum(lam, 2, false)).epsilon(1e-13));
    }
    SUBCASE("geometric spectrum matches the closed form") {
        const auto spec = geometric_spectrum(0.5, 1e-14);
        const auto h = complete_homogeneous(spec.lambdas, 2);
        // chi_2^B / 2! = (1-z)^2 / ((1-z)(1-z^2)) = 2/3 at z = 1/2
        CHECK(h[2].to_double() == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    }
}

TEST_CASE("power sums") {
    SUBCASE("single unit eigenvalue") {
        const auto p = power_sums(std::vector<double>{1.0}, 5);
        for (int k = 1; k <= 5; ++k) CHECK(p[k] == doctest::Approx(1.0));
    }
    SUBCASE("geometric closed form") {
        const auto spec = geometric_spectrum(0.5, 1e-15);
        const auto p = power_sums(spec.lambdas, 6);
        for (int k = 1; k <= 6; ++k) {
            const double expected = std::pow(0.5, k) / (1.0 - std::pow(0.5, k));
            CHECK(rel_diff(p[k], expected) < 1e-12);
        }
    }
    SUBCASE("uniform spectrum") {
        const auto p = power_sums(std::vector<double>(8, 1.0 / 8.0), 4);
        for (int k = 1; k <= 4; ++k) CHECK(rel_diff(p[k], std::pow(8.0, 1 - k)) < 1e-14);
    }
    SUBCASE("k_max must be positive") {
        CHECK_THROWS_AS(power_sums(std::vector<double>{1.0}, 0), InvalidParameter);
    }
}

TEST_CASE("newton identities") {
    SUBCASE("all power sums one gives the single-mode elementary series") {
        const std::vector<double> p{1.0, 1.0, 1.0, 1.0, 1.0, 1.0};
        const auto e = newton_from_power_sums(p, 5, PolyKind::Elementary);
        CHECK(e[0].to_double() == 1.0);
        CHECK(e[1].to_double() == doctest::Approx(1.0).epsilon(1e-15));
        for (int n = 2; n <= 5; ++n) CHECK(e[n].is_zero());
    }
    SUBCASE("geometric homogeneous and elementary at N = 2") {
        const auto spec = geometric_spectrum(0.5, 1e-15);
        const auto p = power_sums(spec.lambdas, 2);
        const auto h = newton_from_power_sums(p, 2, PolyKind::Homogeneous);
        CHECK(h[2].to_double() == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
        const auto e = newton_from_power_sums(p, 2, PolyKind::Elementary);
        // e_2 = (p_1^2 - p_2)/2 = (1 - 1/3)/2 = 1/3
        CHECK(e[2].to_double() == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    }
    SUBCASE("insufficient power sums refused") {
        const std::vector<double> p{2.0, 1.0};
        CHECK_THROWS_AS(newton_from_power_sums(p, 3, PolyKind::Homogeneous), InvalidParameter);
    }
    SUBCASE("homogeneous newton tracks the recurrence to N = 20") {
        for (double z : {0.2, 0.5, 0.8}) {
            const auto spec = geometric_spectrum(z, 1e-14);
            const auto p = power_sums(spec.lambdas, 20);
            const auto newton = newton_from_power_sums(p, 20, PolyKind::Homogeneous);
            const auto dp = complete_homogeneous(spec.lambdas, 20);
            for (int n = 1; n <= 20; ++n) {
                CHECK(std::abs(std::expm1(newton[n].log_magnitude - dp[n].log_magnitude)) < 1e-10);
            }
        }
    }
    SUBCASE("elementary newton tracks the recurrence where well-conditioned") {
        // The alternating identity amplifies rounding like 1/(N z^{N(N-1)/2});
        // measured: z=0.2 holds to N=4, z=0.5 to N=6, z=0.95 to N=20.
        const auto domain = {std::pair{0.2, 4}, std::pair{0.5, 6}, std::pair{0.95, 20}};
        for (auto [z, n_limit] : domain) {
            const auto spec = geometric_spectrum(z, 1e-14);
            const auto p = power_sums(spec.lambdas, n_limit);
            const auto newton = newton_from_power_sums(p, n_limit, PolyKind::Elementary);
            const auto dp = elementary_symmetric(spec.lambdas, n_limit);
            for (int n = 1; n <= n_limit; ++n) {
                CHECK(std::abs(std::expm1(newton[n].log_magnitude - dp[n].log_magnitude)) < 1e-10);
            }
        }
    }
}

TEST_CASE("brute force enumerator") {
    const std::vector<double> lam{0.5, 0.25, 0.125};
    CHECK(brute_force_ordered_sum(lam, 2, true) == doctest::Approx(0.21875).epsilon(1e-15));
    CHECK(brute_force_ordered_sum(lam, 2, false) == doctest::Approx(0.546875).epsilon(1e-15));
    CHECK(brute_force_ordered_sum(lam, 0, true) == 1.0);
    CHECK(brute_force_ordered_sum(lam, 0, false) == 1.0);
    CHECK(brute_force_ordered_sum(lam, 4, true) == 0.0);  // strict tuples longer than the list
    CHECK_THROWS_AS(brute_force_ordered_sum(std::vector<double>(50, 0.02), 6, false),
                    SizeGuardError);
}

TEST_CASE("recurrences agree with the enumerator on random spectra") {
    std::mt19937_64 rng(7321);
    for (int trial = 0; trial < 60; ++trial) {
        const int m = 1 + static_cast<int>(rng() % 8);
        std::vector<double> lam(m);
        for (double& l : lam) {
            l = uniform01(rng);
            if (uniform01(rng) < 0.15) l = 0.0;  // exercise the Pauli edge
        }
        const int n_max = 5;
        const auto e = elementary_symmetric(lam, n_max);
        const auto h = complete_homogeneous(lam, n_max);
        int nonzero = 0;
        for (double l : lam) nonzero += (l > 0.0) ? 1 : 0;
        for (int n = 0; n <= n_max; ++n) {
            CHECK(rel_diff(e[n].to_double(), brute_force_ordered_sum(lam, n, true)) < 1e-12);
            CHECK(rel_diff(h[n].to_double(), brute_force_ordered_sum(lam, n, false)) < 1e-12);
            if (n > nonzero) CHECK(e[n].sign == 0);  // exact zero, not merely small
        }
    }
}

TEST_CASE("series identities") {
    std::mt19937_64 rng(99182);
    for (int trial = 0; trial < 40; ++trial) {
        const int m = 1 + static_cast<int>(rng() % 10);
        std::vector<double> lam(m);
        double sum = 0.0;
        for (double& l : lam) {
            l = uniform01(rng);
            sum += l;
        }
        const bool normalized = trial % 2 == 0;
        if (normalized) {
            for (double& l : lam) l /= sum;
        }
        const auto e = elementary_symmetric(lam, 2);
        const auto h = complete_homogeneous(lam, 2);
        const auto p = power_sums(lam, 2);

        // h_1 = e_1 and h_2 - e_2 = sum lambda^2
        CHECK(rel_diff(h[1].to_double(), e[1].to_double()) < 1e-14);
        CHECK(rel_diff(h[2].to_double() - e[2].to_double(), p[2]) < 1e-11);
        if (normalized) {
            CHECK(e[1].to_double() == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(h[1].to_double() == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("appending an eigenvalue never decreases the series") {
    std::mt19937_64 rng(5150);
    for (int trial = 0; trial < 25; ++trial) {
        const int m = 1 + static_cast<int>(rng() % 6);
        std::vector<double> lam(m);
        for (double& l : lam) l = uniform01(rng);
        auto extended = lam;
        extended.push_back(uniform01(rng));
        const auto e0 = elementary_symmetric(lam, 4);
        const auto e1 = elementary_symmetric(extended, 4);
        const auto h0 = complete_homogeneous(lam, 4);
        const auto h1 = complete_homogeneous(extended, 4);
        for (int n = 0; n <= 4; ++n) {
            CHECK(e1[n].to_double() >= e0[n].to_double() * (1.0 - 1e-13));
            CHECK(h1[n].to_double() >= h0[n].to_double() * (1.0 - 1e-13));
        }
    }
}

TEST_CASE("spectrum fingerprint distinguishes inputs") {
    const std::vector<double> a{0.5, 0.3, 0.2};
    std::vector<double> b = a;
    b[2] += 1e-13;
    CHECK(spectrum_fingerprint(a) == spectrum_fingerprint(a));
    CHECK(spectrum_fingerprint(a) != spectrum_fingerprint(b));
    CHECK(elementary_symmetric(a, 2).spectrum_fingerprint ==
          complete_homogeneous(a, 2).spectrum_fingerprint);
}

TEST_CASE("series survive deep orders without underflow") {
    // lambda_max^N would underflow a raw double near N ~ 1100 here; the
    // scaled representation must not.
    const auto spec = geometric_spectrum(0.5, 1e-14);
    const auto h = complete_homogeneous(spec.lambdas, 2000);
    CHECK(h[2000].sign == +1);
    CHECK(h[2000].log_magnitude < -1000.0);
    CHECK(std::isfinite(h[2000].log_magnitude));
}
