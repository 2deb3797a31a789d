#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "coboson/errors.hpp"
#include "coboson/grid_io.hpp"
#include "coboson/schmidt.hpp"

using namespace coboson;

TEST_CASE("geometric spectrum generator") {
    SUBCASE("z = 0 is the product state") {
        const auto spec = geometric_spectrum(0.0, 1e-14);
        REQUIRE(spec.size() == 1);
        CHECK(spec.lambdas[0] == 1.0);
        CHECK(spec.tail_mass == 0.0);
    }
    SUBCASE("z = 1/2 leading values and cut depth") {
        const auto spec = geometric_spectrum(0.5, 1e-14);
        CHECK(spec.size() == 47);  // ceil(log(1e-14)/log(0.5))
        CHECK(spec.lambdas[0] == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(spec.lambdas[1] == doctest::Approx(0.25).epsilon(1e-15));
        CHECK(spec.lambdas[2] == doctest::Approx(0.125).epsilon(1e-15));
        CHECK(spec.tail_mass == doctest::Approx(std::pow(0.5, 47)).epsilon(1e-15));
        CHECK(spec.tail_mass <= 1e-14);
        spec.validate();
    }
    SUBCASE("out-of-range parameters refused") {
        CHECK_THROWS_AS(geometric_spectrum(1.0, 1e-14), InvalidParameter);
        CHECK_THROWS_AS(geometric_spectrum(-0.1, 1e-14), InvalidParameter);
        CHECK_THROWS_AS(geometric_spectrum(0.5, 0.0), InvalidParameter);
        CHECK_THROWS_AS(geometric_spectrum(0.5, 1.5), InvalidParameter);
    }
}

TEST_CASE("schmidt number") {
    CHECK(schmidt_number(explicit_spectrum({1.0})) == doctest::Approx(1.0));
    CHECK(schmidt_number(uniform_spectrum(4)) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(schmidt_number(geometric_spectrum(0.5, 1e-14)) == doctest::Approx(3.0).epsilon(1e-12));

    SUBCASE("permutation and zero padding leave K alone") {
        const auto base = explicit_spectrum({0.6, 0.3, 0.1});
        auto padded = explicit_spectrum({0.1, 0.6, 0.3, 0.0, 0.0});
        CHECK(schmidt_number(padded) == doctest::Approx(schmidt_number(base)).epsilon(1e-15));
    }
    SUBCASE("K is at least 1, and 1 only for the product state") {
        std::mt19937_64 rng(404);
        for (int trial = 0; trial < 30; ++trial) {
            const int m = 1 + static_cast<int>(rng() % 10);
            std::vector<double> lam(m);
            double sum = 0.0;
            for (double& l : lam) {
                l = static_cast<double>(rng() >> 11) * 0x1.0p-53;
                sum += l;
            }
            for (double& l : lam) l /= sum;
            const double k = schmidt_number(explicit_spectrum(lam));
            CHECK(k >= 1.0);
            if (m == 1) CHECK(k == doctest::Approx(1.0));
        }
    }
    SUBCASE("geometric K matches the closed form") {
        for (double z : {0.1, 0.3, 0.5, 0.7, 0.9}) {
            const auto spec = geometric_spectrum(z, 1e-14);
            CHECK(schmidt_number(spec) == doctest::Approx(k_from_z(z)).epsilon(1e-11));
        }
    }
}

TEST_CASE("entanglement entropy") {
    CHECK(entanglement_entropy(explicit_spectrum({1.0})) == 0.0);
    CHECK(entanglement_entropy(uniform_spectrum(4)) == doctest::Approx(2.0).epsilon(1e-15));
    // sum_{k>=1} k 2^-k = 2 bits
    CHECK(entanglement_entropy(geometric_spectrum(0.5, 1e-14)) ==
          doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("width-to-z map") {
    CHECK(z_from_widths({2.0, 2.0}) == 0.0);
    CHECK(z_from_widths({1.0, 3.0}) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(z_from_widths({3.0, 1.0}) == doctest::Approx(0.25).epsilon(1e-15));  // symmetric
    CHECK_THROWS_AS(z_from_widths({1.0, -1.0}), InvalidParameter);
    CHECK_THROWS_AS(z_from_widths({0.0, 1.0}), InvalidParameter);
}

TEST_CASE("K(z) and its inverse") {
    CHECK(k_from_z(0.0) == doctest::Approx(1.0));
    CHECK(k_from_z(0.5) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(z_from_k(3.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(k_from_z(1.0), InvalidParameter);
    CHECK_THROWS_AS(k_from_z(-0.2), InvalidParameter);
    CHECK_THROWS_AS(z_from_k(0.5), InvalidParameter);
    for (int i = 0; i <= 99; ++i) {
        const double z = i / 100.0;
        CHECK(std::abs(z_from_k(k_from_z(z)) - z) < 1e-12);
    }
}

TEST_CASE("gaussian grid construction") {
    SUBCASE("normalized on build") {
        const auto grid = build_gaussian_grid({1.0, 3.0}, 8.0, 64);
        CHECK(std::abs(grid.discrete_norm_sq() - 1.0) < 1e-10);
        CHECK(grid.xa_coords.size() == 64);
        CHECK(grid.dxa == doctest::Approx(16.0 / 63.0));
    }
    SUBCASE("parameter validation") {
        CHECK_THROWS_AS(build_gaussian_grid({1.0, -1.0}, 5.0, 128), InvalidParameter);
        CHECK_THROWS_AS(build_gaussian_grid({1.0, 1.0}, -5.0, 128), InvalidParameter);
        CHECK_THROWS_AS(build_gaussian_grid({1.0, 1.0}, 5.0, 8), InvalidParameter);
    }
}

TEST_CASE("schmidt decomposition of gaussian grids") {
    SUBCASE("equal widths give a product state") {
        const auto grid = build_gaussian_grid({1.0, 1.0}, 5.0, 128);
        const auto spec = schmidt_decompose(grid, 8);
        CHECK(std::abs(spec.lambdas[0] - 1.0) < 1e-10);
        CHECK(spec.tail_mass <= 1e-10);
        CHECK(schmidt_number(spec) == doctest::Approx(1.0).epsilon(1e-10));
    }
    SUBCASE("width ratio 3 gives the z = 1/4 geometric spectrum") {
        const auto grid = build_gaussian_grid({1.0, 3.0}, 8.0, 256);
        const auto spec = schmidt_decompose(grid, 32);
        for (int n = 0; n <= 8; ++n) {
            const double expected = 0.75 * std::pow(0.25, n);
            CHECK(std::abs(spec.lambdas[n] - expected) / expected < 1e-6);
        }
        CHECK(schmidt_number(spec) == doctest::Approx(5.0 / 3.0).epsilon(1e-6));
    }
    SUBCASE("rank cut validation") {
        const auto grid = build_gaussian_grid({1.0, 2.0}, 6.0, 32);
        CHECK_THROWS_AS(schmidt_decompose(grid, 0), InvalidParameter);
        CHECK_THROWS_AS(schmidt_decompose(grid, 33), InvalidParameter);
    }
    SUBCASE("unnormalized grid rejected") {
        auto grid = build_gaussian_grid({1.0, 2.0}, 6.0, 32);
        grid.amplitudes *= 2.0;
        CHECK_THROWS_AS(schmidt_decompose(grid, 8), ContractViolation);
    }
}

TEST_CASE("svd modes are orthonormal and reconstruct the grid") {
    const auto grid = build_gaussian_grid({1.0, 2.5}, 7.0, 96);
    const int rank = 24;
    const auto spec = schmidt_decompose(grid, rank);
    REQUIRE(spec.modes_a.has_value());
    REQUIRE(spec.modes_b.has_value());

    const Eigen::MatrixXcd gram_a =
        spec.modes_a->adjoint() * *spec.modes_a * grid.dxa;
    const Eigen::MatrixXcd gram_b =
        spec.modes_b->adjoint() * *spec.modes_b * grid.dxb;
    CHECK((gram_a - Eigen::MatrixXcd::Identity(rank, rank)).cwiseAbs().maxCoeff() < 1e-8);
    CHECK((gram_b - Eigen::MatrixXcd::Identity(rank, rank)).cwiseAbs().maxCoeff() < 1e-8);

    Eigen::VectorXd roots(rank);
    for (int i = 0; i < rank; ++i) roots[i] = std::sqrt(spec.lambdas[static_cast<std::size_t>(i)]);
    const Eigen::MatrixXcd rebuilt =
        *spec.modes_a * roots.asDiagonal() * spec.modes_b->transpose();
    const double err =
        std::sqrt(((rebuilt - grid.amplitudes).squaredNorm()) * grid.dxa * grid.dxb);
    CHECK(err <= std::sqrt(spec.tail_mass) + 1e-8);
}

TEST_CASE("wfgrid round trip and validation") {
    SUBCASE("write then read reproduces the grid") {
        const auto grid = build_gaussian_grid({1.0, 2.0}, 5.0, 24);
        std::stringstream buffer;
        write_wfgrid(buffer, grid);
        const auto back = read_wfgrid(buffer);
        CHECK(back.amplitudes.rows() == grid.amplitudes.rows());
        CHECK((back.amplitudes - grid.amplitudes).cwiseAbs().maxCoeff() == 0.0);
        CHECK(back.dxa == grid.dxa);
    }
    SUBCASE("malformed inputs rejected") {
        std::stringstream bad_header("NOTGRID v1 2 2\n0 1\n0 1\n1 0\n0 0\n0 0\n1 0\n");
        CHECK_THROWS_AS(read_wfgrid(bad_header), InvalidParameter);
        std::stringstream short_data("WFGRID v1 2 2\n0 1\n0 1\n1 0\n0 0\n0 0\n");
        CHECK_THROWS_AS(read_wfgrid(short_data), InvalidParameter);
        std::stringstream trailing("WFGRID v1 2 2\n0 1\n0 1\n1 0\n0 0\n0 0\n1 0\n5 5\n");
        CHECK_THROWS_AS(read_wfgrid(trailing), InvalidParameter);
        std::stringstream uneven("WFGRID v1 3 2\n0 1 2.5\n0 1\n1 0\n0 0\n0 0\n1 0\n0 0\n0 0\n");
        CHECK_THROWS_AS(read_wfgrid(uneven), InvalidParameter);
    }
    SUBCASE("missing file is an io error") {
        CHECK_THROWS_AS(read_wfgrid_file("/nonexistent/grid.txt"), IoError);
    }
}

TEST_CASE("spectrum file parsing") {
    SUBCASE("comments, blanks, and normalization") {
        std::stringstream in("# leading comment\n0.5\n0.3   # trailing comment\n\n0.2\n");
        const auto file = read_spectrum(in);
        CHECK_FALSE(file.normalization_warning);
        CHECK(file.spectrum.lambdas.size() == 3);
        CHECK(file.spectrum.lambdas[0] == doctest::Approx(0.5));
    }
    SUBCASE("unnormalized input flagged and rescaled") {
        std::stringstream in("2\n1\n1\n");
        const auto file = read_spectrum(in);
        CHECK(file.normalization_warning);
        CHECK(file.raw_sum == doctest::Approx(4.0));
        CHECK(file.spectrum.lambdas[0] == doctest::Approx(0.5));
    }
    SUBCASE("bad content rejected") {
        std::stringstream negative("0.5\n-0.5\n");
        CHECK_THROWS_AS(read_spectrum(negative), InvalidParameter);
        std::stringstream words("0.5\nbanana\n");
        CHECK_THROWS_AS(read_spectrum(words), InvalidParameter);
        std::stringstream empty("# nothing\n");
        CHECK_THROWS_AS(read_spectrum(empty), InvalidParameter);
    }
}

TEST_CASE("explicit spectrum validation") {
    CHECK_THROWS_AS(explicit_spectrum({0.5, 0.6}), ContractViolation);  // mass exceeds 1
    CHECK_THROWS_AS(explicit_spectrum({1.2, -0.2}), InvalidParameter);
    const auto spec = explicit_spectrum({0.2, 0.5, 0.3});
    CHECK(spec.lambdas[0] == 0.5);  // sorted descending
    CHECK(spec.lambdas[2] == 0.2);
}
