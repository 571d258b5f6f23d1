#pragma once

#include "cvqkd/constellation.hpp"

#include <Eigen/Dense>

#include <complex>

namespace cvqkd {

/// Coherent state |alpha> truncated to photon numbers 0..nmax. The squared
/// norm deficit equals the upper Poisson tail of |alpha|² beyond nmax.
struct FockVector {
    Eigen::VectorXcd amplitudes;
    int nmax = 0;
};

/// Hermitian operator on the truncated Fock space.
struct DensityMatrix {
    Eigen::MatrixXcd entries;
    int nmax = 0;

    int dim() const { return nmax + 1; }
};

FockVector coherent_state_fock(std::complex<double> alpha, int nmax);

/// Upper Poisson tail P(N > nmax) at mean `mean`.
double poisson_tail(double mean, int nmax);

/// Smallest truncation with total neglected tail mass below tail_tol for the
/// modulated state of `c`. Throws truncation_error when the cap is too small.
int choose_nmax(const ConstellationSpec& c, double tail_tol = 1e-10,
                int cap = 256);

/// rho = sum_k p_k |alpha_k><alpha_k| with alpha_k = (p_k + i q_k)/2.
DensityMatrix modulated_density_matrix(const ConstellationSpec& c, int nmax);

/// Thermal state with mean photon number n_bar (the Gaussian-modulation
/// average state).
DensityMatrix thermal_state(double n_bar, int nmax);

/// D(rho, sigma) = (1/2) * sum |eigenvalues of rho - sigma|.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

double mean_photon(const DensityMatrix& rho);

/// Hermiticity / positivity / trace sanity check; throws on violation.
void validate(const DensityMatrix& rho, double tail_tol = 1e-6);

/// Principal square root via Hermitian eigendecomposition (negative
/// eigenvalues from truncation noise are clamped to zero).
Eigen::MatrixXcd matrix_sqrt(const DensityMatrix& rho);

/// Truncated annihilation operator, a[n, n+1] = sqrt(n+1).
Eigen::MatrixXcd annihilation_operator(int nmax);

/// True if the constellation maps onto itself under a 90 deg rotation with
/// matched probabilities (always holds for build_pcs_qam output). The
/// modulated state is then block-diagonal in photon number mod 4.
bool has_z4_symmetry(const ConstellationSpec& c, double tol = 1e-12);

/// Trace distance between the modulated state of `c` and the thermal state
/// with mean photon n_bar. Uses the mod-4 block structure when available,
/// which is ~16x faster than the dense route; falls back to the dense
/// computation otherwise. Agrees with trace_distance() to machine precision.
double trace_distance_pcs_thermal(const ConstellationSpec& c, double n_bar,
                                  int nmax);

/// sqrt(rho) of the modulated state, using the block fast path when the
/// symmetry holds.
Eigen::MatrixXcd modulated_sqrt(const ConstellationSpec& c, int nmax);

} // namespace cvqkd
