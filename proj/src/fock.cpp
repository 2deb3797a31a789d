#include "coboson/fock.hpp"

#include <cmath>

#include "coboson/errors.hpp"

namespace coboson {

namespace {

void check_modes(const PairOperator& op, const FockState& state) {
    if (op.mode_count() != state.mode_count) {
        throw InvalidParameter("operator and state mode counts differ");
    }
}

std::vector<double> checked_sqrt(std::span<const double> lambdas) {
    if (lambdas.empty()) throw InvalidParameter("pair operator needs at least one mode");
    double sum = 0.0;
    std::vector<double> roots(lambdas.size());
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        if (!(lambdas[i] >= 0.0)) throw InvalidParameter("pair amplitudes lambda must be nonnegative");
        sum += lambdas[i];
        roots[i] = std::sqrt(lambdas[i]);
    }
    if (sum > 1.0 + 1e-12) throw InvalidParameter("pair amplitudes must satisfy sum lambda <= 1");
    return roots;
}

void guard_state_count(std::size_t mode_count, int n) {
    if (n > 0 && static_cast<double>(n) * std::log(static_cast<double>(std::max<std::size_t>(mode_count, 1))) >
                     std::log(1e7) * (1.0 + 1e-12)) {
        throw SizeGuardError("oracle refused: mode_count^N exceeds 1e7 states");
    }
}

double exact_factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

FockState normalized_composite(const PairOperator& op, int n, Statistics stats) {
    FockState state = FockState::vacuum(op.mode_count(), stats);
    for (int i = 0; i < n; ++i) state = apply_creation(op, state);
    const double nsq = state.norm_sq();
    if (!(nsq > 0.0)) throw NumericError("composite state vanished; cannot normalize");
    const double inv = 1.0 / std::sqrt(nsq);
    for (auto& [occ, amp] : state.amplitudes) amp *= inv;
    return state;
}

}  // namespace

FockState FockState::vacuum(int mode_count, Statistics stats) {
    if (mode_count < 1) throw InvalidParameter("vacuum needs at least one mode");
    FockState s;
    s.stats = stats;
    s.mode_count = mode_count;
    s.amplitudes[Occupation(static_cast<std::size_t>(mode_count), 0)] = 1.0;
    return s;
}

double FockState::norm_sq() const {
    double acc = 0.0;
    for (const auto& [occ, amp] : amplitudes) acc += std::norm(amp);
    return acc;
}

void FockState::prune(double threshold) {
    for (auto it = amplitudes.begin(); it != amplitudes.end();) {
        if (std::abs(it->second) < threshold) {
            pruned_norm_sq += std::norm(it->second);
            it = amplitudes.erase(it);
        } else {
            ++it;
        }
    }
}

PairOperator PairOperator::creation(std::span<const double> lambdas) {
    return {checked_sqrt(lambdas), PairDirection::Create};
}

PairOperator PairOperator::annihilation(std::span<const double> lambdas) {
    return {checked_sqrt(lambdas), PairDirection::Annihilate};
}

FockState apply_creation(const PairOperator& op, const FockState& state) {
    check_modes(op, state);
    FockState out;
    out.stats = state.stats;
    out.mode_count = state.mode_count;
    out.pruned_norm_sq = state.pruned_norm_sq;
    for (const auto& [occ, amp] : state.amplitudes) {
        for (int m = 0; m < state.mode_count; ++m) {
            const double s = op.sqrt_lambdas[static_cast<std::size_t>(m)];
            if (s == 0.0) continue;
            const int k = occ[static_cast<std::size_t>(m)];
            if (state.stats == Statistics::Fermion && k >= 1) continue;  // pair mode full
            Occupation next = occ;
            ++next[static_cast<std::size_t>(m)];
            const double factor = (state.stats == Statistics::Boson) ? static_cast<double>(k + 1) : 1.0;
            out.amplitudes[next] += amp * s * factor;
        }
    }
    out.prune();
    return out;
}

FockState apply_annihilation(const PairOperator& op, const FockState& state) {
    check_modes(op, state);
    FockState out;
    out.stats = state.stats;
    out.mode_count = state.mode_count;
    out.pruned_norm_sq = state.pruned_norm_sq;
    for (const auto& [occ, amp] : state.amplitudes) {
        for (int m = 0; m < state.mode_count; ++m) {
            const double s = op.sqrt_lambdas[static_cast<std::size_t>(m)];
            if (s == 0.0) continue;
            const int k = occ[static_cast<std::size_t>(m)];
            if (k == 0) continue;
            Occupation next = occ;
            --next[static_cast<std::size_t>(m)];
            const double factor = (state.stats == Statistics::Boson) ? static_cast<double>(k) : 1.0;
            out.amplitudes[next] += amp * s * factor;
        }
    }
    out.prune();
    return out;
}

FockState apply(const PairOperator& op, const FockState& state) {
    return op.direction == PairDirection::Create ? apply_creation(op, state)
                                                 : apply_annihilation(op, state);
}

std::complex<double> inner_product(const FockState& x, const FockState& y) {
    if (x.mode_count != y.mode_count) throw InvalidParameter("states live on different mode counts");
    // Iterate the smaller map against the larger one.
    const FockState& small = (x.amplitudes.size() <= y.amplitudes.size()) ? x : y;
    const FockState& large = (x.amplitudes.size() <= y.amplitudes.size()) ? y : x;
    const bool swapped = &small != &x;
    std::complex<double> acc = 0.0;
    for (const auto& [occ, amp] : small.amplitudes) {
        auto it = large.amplitudes.find(occ);
        if (it == large.amplitudes.end()) continue;
        acc += swapped ? std::conj(it->second) * amp : std::conj(amp) * it->second;
    }
    return acc;
}

double chi_by_oracle(std::span<const double> lambdas, Statistics stats, int n) {
    if (n < 0) throw InvalidParameter("N must be nonnegative");
    if (n == 0) return 1.0;
    guard_state_count(lambdas.size(), n);
    const PairOperator op = PairOperator::creation(lambdas);
    FockState state = FockState::vacuum(op.mode_count(), stats);
    for (int i = 0; i < n; ++i) state = apply_creation(op, state);
    return state.norm_sq() / exact_factorial(n);
}

EpsilonMeasurement epsilon_by_oracle(std::span<const double> lambdas, Statistics stats, int n) {
    if (n < 2) throw InvalidParameter("epsilon oracle requires N >= 2");
    guard_state_count(lambdas.size(), n);
    const PairOperator op = PairOperator::creation(lambdas);

    const FockState state_n = normalized_composite(op, n, stats);
    const FockState state_n1 = normalized_composite(op, n - 1, stats);
    const FockState lowered = apply_annihilation(op, state_n);

    const std::complex<double> overlap = inner_product(state_n1, lowered);
    if (std::abs(overlap.imag()) > 1e-12) {
        throw NumericError("composite overlap acquired an imaginary part");
    }
    EpsilonMeasurement result;
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    result.alpha = overlap.real() / sqrt_n;

    // |eps> = c|N> - alpha sqrt(N) |N-1>; check it carries no |N-1> component.
    FockState eps = lowered;
    for (const auto& [occ, amp] : state_n1.amplitudes) {
        eps.amplitudes[occ] -= result.alpha * sqrt_n * amp;
    }
    eps.prune();
    if (std::abs(inner_product(state_n1, eps)) > 1e-12) {
        throw NumericError("epsilon correction failed orthogonality to |N-1>");
    }

    double eps_sq = lowered.norm_sq() - n * result.alpha * result.alpha;
    if (eps_sq < 0.0) {
        if (eps_sq < -1e-12) throw NumericError("epsilon norm came out significantly negative");
        eps_sq = 0.0;
    }
    result.eps_norm_sq = eps_sq;
    return result;
}

double commutator_expectation(std::span<const double> lambdas, Statistics stats,
                              const FockState& state) {
    if (stats != state.stats) throw InvalidParameter("statistics flag does not match the state");
    if (std::abs(state.norm_sq() - 1.0) > 1e-12) {
        throw ContractViolation("commutator expectation requires a normalized state");
    }
    const PairOperator create = PairOperator::creation(lambdas);
    const PairOperator destroy = PairOperator::annihilation(lambdas);
    return apply_creation(create, state).norm_sq() - apply_annihilation(destroy, state).norm_sq();
}

double delta_expectation(std::span<const double> lambdas, const FockState& state) {
    if (static_cast<int>(lambdas.size()) != state.mode_count) {
        throw InvalidParameter("spectrum and state mode counts differ");
    }
    double acc = 0.0;
    for (const auto& [occ, amp] : state.amplitudes) {
        double diag = 0.0;
        for (int m = 0; m < state.mode_count; ++m) {
            diag += 2.0 * lambdas[static_cast<std::size_t>(m)] * occ[static_cast<std::size_t>(m)];
        }
        acc += std::norm(amp) * diag;
    }
    return acc;
}

}  // namespace coboson
