#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coboson/logvalue.hpp"
#include "coboson/schmidt.hpp"

namespace coboson {

// Constituent statistics: s = +1 when A and B are bosons, -1 for fermions.
// The sign enters the commutator [c, c+] = 1 + s*Delta and selects between
// the homogeneous (boson) and elementary (fermion) chi series.
enum class Statistics : int { Boson = +1, Fermion = -1 };

constexpr int statistics_sign(Statistics s) { return static_cast<int>(s); }
const char* statistics_name(Statistics s);

enum class ChiSource { Dp, ClosedFormGeometric, Oracle };

// chi_0..chi_N for one statistics flag, log domain. chi_N normalizes the
// N-composite state c+^N |0> / sqrt(N!); fermionic chi_N is exactly zero
// once N exceeds the number of nonzero Schmidt modes (Pauli blocking).
struct ChiTable {
    Statistics stats = Statistics::Boson;
    std::vector<LogValue> chi;
    ChiSource source = ChiSource::Dp;
    // Relative error caused by the spectrum's discarded tail mass, per N
    // (largest-index bound tail * N * chi_{N-1}/chi_N, compounded), and the
    // worst case over the table. +inf marks entries the truncated spectrum
    // cannot estimate at all (fermionic N beyond the kept modes). Both are
    // 0 for closed-form tables.
    std::vector<double> tail_error_bounds;
    double tail_error_bound = 0.0;

    int n_max() const { return static_cast<int>(chi.size()) - 1; }
};

// chi_N = N! h_N(lambda) for boson constituents, N! e_N(lambda) for fermion
// constituents, evaluated by the sympoly recurrences.
ChiTable chi_table(const SchmidtSpectrum& spec, Statistics stats, int n_max);

// Exact closed forms for the geometric spectrum lambda_n = (1-z) z^n:
//   chi_N^B = N! (1-z)^N / prod_{k=1..N} (1 - z^k),
//   chi_N^F = z^{N(N-1)/2} chi_N^B.
ChiTable chi_geometric_closed(double z, Statistics stats, int n_max);

// chi_{N+1} / chi_N in linear scale (log-domain subtraction internally).
// Throws PauliBlockedError when chi_N = 0.
double normalization_ratio(const ChiTable& table, int n);

// alpha_N = sqrt(chi_N / chi_{N-1}); the Bose-enhancement coefficient in
// c |N> = alpha_N sqrt(N) |N-1> + |eps_N>.
double alpha(const ChiTable& table, int n);

// <eps_N|eps_N> = 1 - N chi_N/chi_{N-1} + (N-1) chi_{N+1}/chi_N, valid for
// N >= 2. Rounding residue in [-1e-12, 0) is clamped to 0; anything more
// negative raises NumericError.
double epsilon_norm_sq(const ChiTable& table, int n);

// Large-K law chi_{N+1}/chi_N ~ 1 + s N / K.
double asymptotic_ratio(double schmidt_number, int n, Statistics stats);

struct QualityRow {
    int n = 0;
    std::optional<double> alpha;        // absent once chi_{n-1} = 0
    std::optional<double> eps_norm_sq;  // n >= 2 and chi_{n-1}, chi_n > 0
    std::optional<double> ratio;        // chi_{n+1}/chi_n; absent when chi_n = 0
    double asymptotic_ratio = 0.0;
    bool pauli_blocked = false;  // chi_n = 0
};

// Per-N bundle of the compositeness observables for one statistics flag.
struct QualityReport {
    Statistics stats = Statistics::Boson;
    double schmidt_number = 1.0;
    double tail_error_bound = 0.0;
    std::vector<QualityRow> rows;  // n = 1..n_max
};

QualityReport quality_report(const SchmidtSpectrum& spec, Statistics stats, int n_max);

}  // namespace coboson
