#pragma once

#include <Eigen/Core>
#include <optional>
#include <vector>

namespace coboson {

// Widths of the double-Gaussian pair wavefunction
//   psi(xa, xb) ~ exp(-(xa+xb)^2/sigma_c^2) * exp(-(xa-xb)^2/sigma_r^2).
struct GaussianParams {
    double sigma_c = 1.0;  // width along xa + xb
    double sigma_r = 1.0;  // width along xa - xb
};

// Discretized two-particle amplitude psi(xa, xb) on a uniform rectangular
// grid. Rows index xa samples, columns xb samples.
struct WaveFunctionGrid {
    Eigen::MatrixXcd amplitudes;
    Eigen::VectorXd xa_coords;
    Eigen::VectorXd xb_coords;
    double dxa = 0.0;
    double dxb = 0.0;

    // Validates shape and uniform, strictly increasing coordinates and fills
    // in the step sizes.
    static WaveFunctionGrid make(Eigen::MatrixXcd amplitudes, Eigen::VectorXd xa_coords,
                                 Eigen::VectorXd xb_coords);

    // sum |psi_ij|^2 dxa dxb
    double discrete_norm_sq() const;
    bool is_normalized(double tol = 1e-8) const;
};

// Rescales the grid so the discrete L2 norm is 1.
void normalize(WaveFunctionGrid& grid);

enum class SpectrumSource { NumericSvd, Geometric, Uniform, Explicit };

// Ordered Schmidt eigenvalues with tail-mass accounting. The eigenvalue list
// is the sole input to every compositeness quantity downstream; the attached
// mode matrices (present after an SVD) never enter those computations.
struct SchmidtSpectrum {
    std::vector<double> lambdas;  // nonnegative, descending
    double tail_mass = 0.0;       // weight discarded by truncation
    SpectrumSource source = SpectrumSource::Explicit;
    double source_param = 0.0;  // z for Geometric, mode count for Uniform

    // Columns are mode functions sampled on the grid, orthonormal under the
    // discrete inner product sum conj(f_i) g_i dx.
    std::optional<Eigen::MatrixXcd> modes_a;
    std::optional<Eigen::MatrixXcd> modes_b;

    std::size_t size() const { return lambdas.size(); }
    double kept_mass() const;

    // Checks: nonnegative, non-increasing, kept mass + tail accounts for 1.
    void validate(double mass_tol = 1e-9) const;
};

// Spectrum from a raw eigenvalue list (sorted descending internally).
SchmidtSpectrum explicit_spectrum(std::vector<double> lambdas, double tail_mass = 0.0);

// lambda_n = 1/M for n = 0..M-1; the equal-weight spectrum with K = M.
SchmidtSpectrum uniform_spectrum(int mode_count);

// lambda_n = (1-z) z^n truncated at the smallest M with tail z^M <= tolerance;
// the tail mass is recorded exactly as z^M.
SchmidtSpectrum geometric_spectrum(double z, double tolerance = 1e-14);

// Normalized double-Gaussian sampled on [-half_extent, half_extent]^2.
WaveFunctionGrid build_gaussian_grid(const GaussianParams& params, double half_extent,
                                     int points_per_axis);

// Quadrature-weighted singular value decomposition of the amplitude matrix;
// lambda_n = (n-th singular value)^2, keeping rank_cut values. Mode matrices
// are attached, orthonormal under the discrete inner product.
SchmidtSpectrum schmidt_decompose(const WaveFunctionGrid& grid, int rank_cut);

// K = 1 / sum lambda_n^2 over kept values. The effective number of Schmidt
// mode pairs; 1 for a product state, M for a uniform M-mode spectrum.
double schmidt_number(const SchmidtSpectrum& spec);

// -sum lambda_n log2 lambda_n, in bits, with 0 log 0 = 0.
double entanglement_entropy(const SchmidtSpectrum& spec);

// z = ((sigma_r - sigma_c) / (sigma_r + sigma_c))^2 for the double Gaussian.
double z_from_widths(const GaussianParams& params);

// K(z) = (1 - z^2) / (1 - z)^2 = (1 + z) / (1 - z) for a geometric spectrum,
// and the inverse z = (K - 1) / (K + 1).
double k_from_z(double z);
double z_from_k(double schmidt_number);

}  // namespace coboson
