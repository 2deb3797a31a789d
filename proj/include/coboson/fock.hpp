#pragma once

#include <complex>
#include <map>
#include <span>
#include <vector>

#include "coboson/chi.hpp"

namespace coboson {

// Per-mode pair counts: entry n is the number of composite pairs occupying
// Schmidt mode n (one A and one B constituent each).
using Occupation = std::vector<int>;

// Sparse second-quantized state over pair occupations. Because constituents
// only ever appear as a_n+ b_n+ pairs, fermionic antisymmetrization signs
// cancel between the A and B sectors (moving the block a_n+ b_n+ past any
// other such block costs two transposition signs), so occupations carry no
// sign bookkeeping; fermionic modes are simply capped at one pair.
struct FockState {
    Statistics stats = Statistics::Boson;
    int mode_count = 0;
    std::map<Occupation, std::complex<double>> amplitudes;
    double pruned_norm_sq = 0.0;  // accumulated weight dropped by prune()

    static FockState vacuum(int mode_count, Statistics stats);

    bool empty() const { return amplitudes.empty(); }
    double norm_sq() const;
    // Drops entries with |amplitude| below the threshold, accounting the
    // discarded weight in pruned_norm_sq.
    void prune(double threshold = 1e-16);
};

enum class PairDirection { Create, Annihilate };

// The composite ladder operator c+ = sum_n sqrt(lambda_n) a_n+ b_n+ (or its
// adjoint), realized through pair occupation updates.
struct PairOperator {
    std::vector<double> sqrt_lambdas;
    PairDirection direction = PairDirection::Create;

    static PairOperator creation(std::span<const double> lambdas);
    static PairOperator annihilation(std::span<const double> lambdas);

    int mode_count() const { return static_cast<int>(sqrt_lambdas.size()); }
};

// c+|psi>: pair-raising mode n multiplies the amplitude by (k_n + 1) for
// boson constituents (the sqrt(k+1) of a_n+ and b_n+ combine) and kills
// already-occupied fermionic modes.
FockState apply_creation(const PairOperator& op, const FockState& state);

// c|psi>: pair-lowering with bosonic factor k_n.
FockState apply_annihilation(const PairOperator& op, const FockState& state);

// Dispatches on op.direction.
FockState apply(const PairOperator& op, const FockState& state);

// <x|y> over the shared occupation basis.
std::complex<double> inner_product(const FockState& x, const FockState& y);

// ||c+^N |0>||^2 / N!  built by N literal operator applications; the
// independent oracle for chi_table. Guarded by mode_count^N <= 1e7.
double chi_by_oracle(std::span<const double> lambdas, Statistics stats, int n);

struct EpsilonMeasurement {
    double alpha = 0.0;
    double eps_norm_sq = 0.0;
};

// Decomposes c|N> = alpha_N sqrt(N) |N-1> + |eps_N> by explicit projection
// on normalized oracle states; N >= 2.
EpsilonMeasurement epsilon_by_oracle(std::span<const double> lambdas, Statistics stats, int n);

// <psi| c c+ - c+ c |psi> for a normalized state; equals
// sum lambda_n + s <psi|Delta|psi> with Delta = sum lambda_n (a_n+ a_n + b_n+ b_n).
double commutator_expectation(std::span<const double> lambdas, Statistics stats,
                              const FockState& state);

// <psi|Delta|psi>: each pair in mode n contributes 2 lambda_n.
double delta_expectation(std::span<const double> lambdas, const FockState& state);

}  // namespace coboson
