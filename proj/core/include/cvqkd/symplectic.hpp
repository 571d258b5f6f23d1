#pragma once

#include <Eigen/Dense>

#include <utility>
#include <vector>

namespace cvqkd {

/// Symplectic form for n modes in (x1,p1,x2,p2,...) ordering.
Eigen::MatrixXd symplectic_form(int n_modes);

/// Symplectic eigenvalues of a 2n x 2n covariance matrix (SNU, vacuum = 1)
/// via the spectrum of i*Omega*Gamma. Values below 1 - 1e-9 are unphysical
/// and raise unphysical_state_error; smaller dips from roundoff are clamped
/// to 1.
std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& gamma);

/// Two-mode closed form from the Delta invariant:
///   nu_{1,2}² = (Delta ± sqrt(Delta² - 4 det Gamma)) / 2,
///   Delta = det A + det B + 2 det C.
/// Independent route used to cross-check the general eigen-decomposition.
std::pair<double, double> symplectic_eigenvalues_two_mode(
    const Eigen::Matrix4d& gamma);

} // namespace cvqkd
