#include "cvqkd/symplectic.hpp"
#include "cvqkd/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace cvqkd {

Eigen::MatrixXd symplectic_form(int n_modes) {
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
    for (int m = 0; m < n_modes; ++m) {
        omega(2 * m, 2 * m + 1) = 1.0;
        omega(2 * m + 1, 2 * m) = -1.0;
    }
    return omega;
}

std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& gamma) {
    const int dim = int(gamma.rows());
    if (dim % 2 != 0 || gamma.cols() != dim)
        throw std::invalid_argument("covariance matrix must be 2n x 2n");
    const int n = dim / 2;

    // Eigenvalues of Omega*Gamma come in pairs ±i*nu.
    Eigen::EigenSolver<Eigen::MatrixXd> es(symplectic_form(n) * gamma);
    std::vector<double> nus;
    for (int k = 0; k < dim; ++k) {
        const double v = es.eigenvalues()(k).imag();
        if (v > 0.0) nus.push_back(v);
    }
    std::sort(nus.begin(), nus.end(), std::greater<>());
    if (int(nus.size()) != n)
        throw unphysical_state_error("degenerate symplectic spectrum");
    for (double& v : nus) {
        if (v < 1.0 - 1e-9)
            throw unphysical_state_error("symplectic eigenvalue below 1");
        v = std::max(v, 1.0);
    }
    return nus;
}

std::pair<double, double> symplectic_eigenvalues_two_mode(
    const Eigen::Matrix4d& gamma) {
    const Eigen::Matrix2d a = gamma.topLeftCorner<2, 2>();
    const Eigen::Matrix2d b = gamma.bottomRightCorner<2, 2>();
    const Eigen::Matrix2d c = gamma.topRightCorner<2, 2>();
    const double delta = a.determinant() + b.determinant() +
                         2.0 * c.determinant();
    const double det = gamma.determinant();
    const double disc = std::max(delta * delta - 4.0 * det, 0.0);
    const double n1 = std::sqrt(std::max((delta + std::sqrt(disc)) / 2.0, 0.0));
    const double n2 = std::sqrt(std::max((delta - std::sqrt(disc)) / 2.0, 0.0));
    if (n1 < 1.0 - 1e-9 || n2 < 1.0 - 1e-9)
        throw unphysical_state_error("symplectic eigenvalue below 1");
    return {std::max(n1, 1.0), std::max(n2, 1.0)};
}

} // namespace cvqkd
