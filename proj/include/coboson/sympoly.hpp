#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "coboson/logvalue.hpp"

namespace coboson {

enum class PolyKind { Elementary, Homogeneous };

// A family of symmetric-polynomial values of the Schmidt eigenvalues,
// e_0..e_N (ordered indices, no repetition) or h_0..h_N (repetition allowed),
// held in log domain. values[0] is exactly 1 (empty product).
//
// chi_N^F = N! e_N and chi_N^B = N! h_N, so this series is chi_N / N!.
struct PolySeries {
    PolyKind kind = PolyKind::Homogeneous;
    std::vector<LogValue> values;
    std::uint64_t spectrum_fingerprint = 0;

    const LogValue& operator[](std::size_t j) const { return values[j]; }
    int order() const { return static_cast<int>(values.size()) - 1; }
};

// FNV-1a over the raw bit patterns of the eigenvalues.
std::uint64_t spectrum_fingerprint(std::span<const double> lambdas);

// e_j for j = 0..n_max via the cancellation-free sweep
//   e_j <- e_j + lambda_m * e_{j-1}   (j descending per eigenvalue).
// Every term is nonnegative, so no subtractions occur anywhere.
PolySeries elementary_symmetric(std::span<const double> lambdas, int n_max);

// h_j for j = 0..n_max; same sweep with j ascending so that the current
// eigenvalue can be drawn again (multisets instead of sets).
PolySeries complete_homogeneous(std::span<const double> lambdas, int n_max);

// p_k = sum_n lambda_n^k for k = 1..k_max. Slot [0] holds the variable
// count p_0 = len(lambdas) so the vector can feed newton_from_power_sums.
std::vector<double> power_sums(std::span<const double> lambdas, int k_max);

// Newton's identities: N e_N = sum_k (-1)^{k-1} e_{N-k} p_k and
// N h_N = sum_k h_{N-k} p_k. The elementary identity alternates signs, so
// this path is a cross-check only; the recurrences above are the primary
// algorithm. Expects the power_sums layout (p[k] = p_k, k >= 1).
PolySeries newton_from_power_sums(std::span<const double> p, int n_max, PolyKind kind);

// Literal enumeration of all ordered index tuples p_1 </<= ... </<= p_N,
// summing the eigenvalue products. Independent oracle for the recurrences;
// guarded by len(lambdas)^N <= 1e8.
double brute_force_ordered_sum(std::span<const double> lambdas, int n, bool strict);

}  // namespace coboson
