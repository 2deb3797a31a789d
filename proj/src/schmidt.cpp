#include "coboson/schmidt.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>

#include "coboson/errors.hpp"

namespace coboson {

namespace {

void check_uniform_increasing(const Eigen::VectorXd& coords, const char* axis) {
    if (coords.size() < 2) throw InvalidParameter(std::string(axis) + " axis needs at least 2 samples");
    const double step = coords[1] - coords[0];
    if (!(step > 0.0)) throw InvalidParameter(std::string(axis) + " coordinates must be strictly increasing");
    for (Eigen::Index i = 1; i < coords.size(); ++i) {
        const double d = coords[i] - coords[i - 1];
        // 1e-12 relative to the step, plus rounding slack for the
        // coordinates themselves (differences of nearly equal values).
        const double tol = 1e-12 * step + 4e-16 * std::max(std::abs(coords[i]), std::abs(coords[i - 1]));
        if (std::abs(d - step) > tol) {
            throw InvalidParameter(std::string(axis) + " coordinates must have a constant step");
        }
    }
}

}  // namespace

WaveFunctionGrid WaveFunctionGrid::make(Eigen::MatrixXcd amplitudes, Eigen::VectorXd xa_coords,
                                        Eigen::VectorXd xb_coords) {
    if (amplitudes.rows() != xa_coords.size() || amplitudes.cols() != xb_coords.size()) {
        throw InvalidParameter("amplitude matrix shape must match coordinate lengths");
    }
    check_uniform_increasing(xa_coords, "xa");
    check_uniform_increasing(xb_coords, "xb");
    WaveFunctionGrid g;
    g.amplitudes = std::move(amplitudes);
    g.xa_coords = std::move(xa_coords);
    g.xb_coords = std::move(xb_coords);
    g.dxa = g.xa_coords[1] - g.xa_coords[0];
    g.dxb = g.xb_coords[1] - g.xb_coords[0];
    return g;
}

double WaveFunctionGrid::discrete_norm_sq() const {
    return amplitudes.squaredNorm() * dxa * dxb;
}

bool WaveFunctionGrid::is_normalized(double tol) const {
    return std::abs(discrete_norm_sq() - 1.0) <= tol;
}

void normalize(WaveFunctionGrid& grid) {
    const double nsq = grid.discrete_norm_sq();
    if (!(nsq > 0.0) || !std::isfinite(nsq)) {
        throw NumericError("cannot normalize a zero or non-finite grid");
    }
    grid.amplitudes /= std::sqrt(nsq);
}

double SchmidtSpectrum::kept_mass() const {
    // Ascending accumulation: smallest eigenvalues first.
    double s = 0.0;
    for (auto it = lambdas.rbegin(); it != lambdas.rend(); ++it) s += *it;
    return s;
}

void SchmidtSpectrum::validate(double mass_tol) const {
    if (lambdas.empty()) throw InvalidParameter("spectrum has no eigenvalues");
    double prev = std::numeric_limits<double>::infinity();
    for (double l : lambdas) {
        if (!(l >= 0.0)) throw InvalidParameter("Schmidt eigenvalues must be nonnegative");
        if (l > prev) throw InvalidParameter("Schmidt eigenvalues must be in descending order");
        prev = l;
    }
    if (!(tail_mass >= 0.0)) throw InvalidParameter("tail mass must be nonnegative");
    if (std::abs(kept_mass() + tail_mass - 1.0) > mass_tol) {
        throw ContractViolation("spectrum mass + tail does not account for 1");
    }
}

SchmidtSpectrum explicit_spectrum(std::vector<double> lambdas, double tail_mass) {
    SchmidtSpectrum spec;
    spec.lambdas = std::move(lambdas);
    std::sort(spec.lambdas.begin(), spec.lambdas.end(), std::greater<double>());
    spec.tail_mass = tail_mass;
    spec.source = SpectrumSource::Explicit;
    spec.validate();
    return spec;
}

SchmidtSpectrum uniform_spectrum(int mode_count) {
    if (mode_count < 1) throw InvalidParameter("uniform spectrum needs at least one mode");
    SchmidtSpectrum spec;
    spec.lambdas.assign(static_cast<std::size_t>(mode_count), 1.0 / mode_count);
    spec.tail_mass = 0.0;
    spec.source = SpectrumSource::Uniform;
    spec.source_param = static_cast<double>(mode_count);
    return spec;
}

SchmidtSpectrum geometric_spectrum(double z, double tolerance) {
    if (!(z >= 0.0) || z >= 1.0) throw InvalidParameter("z must lie in [0, 1)");
    if (!(tolerance > 0.0) || tolerance >= 1.0) throw InvalidParameter("tolerance must lie in (0, 1)");
    SchmidtSpectrum spec;
    spec.source = SpectrumSource::Geometric;
    spec.source_param = z;
    if (z == 0.0) {
        spec.lambdas = {1.0};
        spec.tail_mass = 0.0;
        return spec;
    }
    // Smallest M with z^M <= tolerance; the discarded mass is exactly z^M.
    long m = std::lround(std::ceil(std::log(tolerance) / std::log(z)));
    m = std::max(m, 1L);
    while (std::pow(z, m) > tolerance) ++m;
    while (m > 1 && std::pow(z, m - 1) <= tolerance) --m;
    if (m > 100'000'000L) {
        throw SizeGuardError("geometric spectrum would exceed 1e8 modes; use the closed-form path");
    }
    spec.lambdas.resize(static_cast<std::size_t>(m));
    const double head = 1.0 - z;
    for (long n = 0; n < m; ++n) spec.lambdas[static_cast<std::size_t>(n)] = head * std::pow(z, n);
    spec.tail_mass = std::pow(z, m);
    return spec;
}

WaveFunctionGrid build_gaussian_grid(const GaussianParams& params, double half_extent,
                                     int points_per_axis) {
    if (!(params.sigma_c > 0.0) || !(params.sigma_r > 0.0)) {
        throw InvalidParameter("Gaussian widths must be positive");
    }
    if (!(half_extent > 0.0)) throw InvalidParameter("half extent must be positive");
    if (points_per_axis < 16) throw InvalidParameter("need at least 16 points per axis");

    const int p = points_per_axis;
    const double step = 2.0 * half_extent / (p - 1);
    Eigen::VectorXd coords(p);
    for (int i = 0; i < p; ++i) coords[i] = -half_extent + i * step;

    const double inv_c2 = 1.0 / (params.sigma_c * params.sigma_c);
    const double inv_r2 = 1.0 / (params.sigma_r * params.sigma_r);
    Eigen::MatrixXcd amp(p, p);
    for (int i = 0; i < p; ++i) {
        for (int j = 0; j < p; ++j) {
            const double sum = coords[i] + coords[j];
            const double diff = coords[i] - coords[j];
            amp(i, j) = std::exp(-sum * sum * inv_c2 - diff * diff * inv_r2);
        }
    }
    WaveFunctionGrid grid = WaveFunctionGrid::make(std::move(amp), coords, coords);
    normalize(grid);
    return grid;
}

SchmidtSpectrum schmidt_decompose(const WaveFunctionGrid& grid, int rank_cut) {
    const int max_rank = static_cast<int>(std::min(grid.amplitudes.rows(), grid.amplitudes.cols()));
    if (rank_cut < 1 || rank_cut > max_rank) {
        throw InvalidParameter("rank_cut must lie in [1, min(rows, cols)]");
    }
    if (!grid.is_normalized()) {
        throw ContractViolation("grid must be normalized before decomposition");
    }

    // Quadrature weighting: the singular values of psi * sqrt(dxa dxb) are
    // the sqrt(lambda_n) of the continuum decomposition.
    const double w = std::sqrt(grid.dxa * grid.dxb);
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(grid.amplitudes * w, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success) throw NumericError("singular value decomposition failed");

    SchmidtSpectrum spec;
    spec.source = SpectrumSource::NumericSvd;
    spec.lambdas.resize(static_cast<std::size_t>(rank_cut));
    // tail_mass = 1 - sum(kept), evaluated as the directly summed discarded
    // weight: the difference form loses the small tail inside the rounding
    // of the unit total.
    double discarded = 0.0;
    for (Eigen::Index i = svd.singularValues().size() - 1; i >= rank_cut; --i) {
        const double s = svd.singularValues()[i];
        discarded += s * s;
    }
    for (int i = rank_cut - 1; i >= 0; --i) {
        double l = svd.singularValues()[i];
        l *= l;
        // Squares below the truncation floor are SVD noise; zero them so a
        // product state is exactly rank one (Pauli accounting depends on it).
        if (l < 1e-14) {
            discarded += l;
            l = 0.0;
        }
        spec.lambdas[static_cast<std::size_t>(i)] = l;
    }
    spec.tail_mass = discarded;
    spec.modes_a = svd.matrixU().leftCols(rank_cut) / std::sqrt(grid.dxa);
    spec.modes_b = svd.matrixV().leftCols(rank_cut).conjugate() / std::sqrt(grid.dxb);
    return spec;
}

double schmidt_number(const SchmidtSpectrum& spec) {
    spec.validate();
    double purity = 0.0;
    for (auto it = spec.lambdas.rbegin(); it != spec.lambdas.rend(); ++it) purity += *it * *it;
    if (purity == 0.0) throw InvalidParameter("all-zero spectrum has no Schmidt number");
    double k = 1.0 / purity;
    // SVD rounding can push lambda_0 a few ulp above 1 on a product state;
    // K < 1 is nonphysical, clamp the noise.
    if (k < 1.0 && k > 1.0 - 1e-8) k = 1.0;
    return k;
}

double entanglement_entropy(const SchmidtSpectrum& spec) {
    spec.validate();
    double bits = 0.0;
    for (auto it = spec.lambdas.rbegin(); it != spec.lambdas.rend(); ++it) {
        if (*it > 0.0) bits -= *it * std::log2(*it);
    }
    return bits;
}

double z_from_widths(const GaussianParams& params) {
    if (!(params.sigma_c > 0.0) || !(params.sigma_r > 0.0)) {
        throw InvalidParameter("Gaussian widths must be positive");
    }
    const double q = (params.sigma_r - params.sigma_c) / (params.sigma_r + params.sigma_c);
    return q * q;
}

double k_from_z(double z) {
    if (!(z >= 0.0) || z >= 1.0) throw InvalidParameter("z must lie in [0, 1)");
    return (1.0 + z) / (1.0 - z);
}

double z_from_k(double schmidt_number) {
    if (!(schmidt_number >= 1.0)) throw InvalidParameter("Schmidt number must be >= 1");
    return (schmidt_number - 1.0) / (schmidt_number + 1.0);
}

}  // namespace coboson
