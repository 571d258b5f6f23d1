#include "cvqkd/fock.hpp"
#include "cvqkd/errors.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>

namespace cvqkd {

FockVector coherent_state_fock(std::complex<double> alpha, int nmax) {
    if (nmax < 0) throw std::domain_error("nmax must be >= 0");
    FockVector v;
    v.nmax = nmax;
    v.amplitudes = Eigen::VectorXcd::Zero(nmax + 1);
    const double a2 = std::norm(alpha);
    if (a2 == 0.0) {
        v.amplitudes(0) = 1.0;
        return v;
    }
    // <n|alpha> = exp(-|a|²/2) a^n / sqrt(n!), evaluated in the log domain so
    // |alpha|² up to ~100 stays finite.
    const double log_mod = std::log(std::abs(alpha));
    const double phase = std::arg(alpha);
    for (int n = 0; n <= nmax; ++n) {
        const double log_amp = -0.5 * a2 + n * log_mod - 0.5 * std::lgamma(n + 1.0);
        v.amplitudes(n) = std::polar(std::exp(log_amp), n * phase);
    }
    return v;
}

double poisson_tail(double mean, int nmax) {
    if (mean <= 0.0) return 0.0;
    // P(N > nmax) = P(nmax+1, mean), the lower regularized incomplete gamma.
    return boost::math::gamma_p(double(nmax) + 1.0, mean);
}

int choose_nmax(const ConstellationSpec& c, double tail_tol, int cap) {
    auto total_tail = [&](int nmax) {
        double t = 0.0;
        for (std::size_t k = 0; k < c.size(); ++k)
            t += c.pmf[k] * poisson_tail(std::norm(c.points[k]) / 4.0, nmax);
        return t;
    };
    int lo = 0, hi = cap;
    const double tail_cap = total_tail(cap);
    if (tail_cap >= tail_tol)
        throw truncation_error("nmax cap insufficient for requested tail mass",
                               tail_cap);
    while (lo < hi) { // smallest nmax meeting the tolerance
        const int mid = (lo + hi) / 2;
        if (total_tail(mid) < tail_tol) hi = mid;
        else lo = mid + 1;
    }
    return lo;
}

DensityMatrix modulated_density_matrix(const ConstellationSpec& c, int nmax) {
    double tail = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k)
        tail += c.pmf[k] * poisson_tail(std::norm(c.points[k]) / 4.0, nmax);
    if (tail >= 1e-8)
        throw truncation_error("insufficient nmax for modulated state", tail);

    DensityMatrix rho;
    rho.nmax = nmax;
    rho.entries = Eigen::MatrixXcd::Zero(nmax + 1, nmax + 1);
    for (std::size_t k = 0; k < c.size(); ++k) {
        const std::complex<double> alpha = c.points[k] / 2.0;
        const FockVector v = coherent_state_fock(alpha, nmax);
        rho.entries.noalias() +=
            c.pmf[k] * (v.amplitudes * v.amplitudes.adjoint());
    }
    return rho;
}

DensityMatrix thermal_state(double n_bar, int nmax) {
    if (n_bar < 0.0) throw std::domain_error("n_bar must be >= 0");
    DensityMatrix rho;
    rho.nmax = nmax;
    rho.entries = Eigen::MatrixXcd::Zero(nmax + 1, nmax + 1);
    if (n_bar == 0.0) {
        rho.entries(0, 0) = 1.0;
        return rho;
    }
    const double log_ratio = std::log(n_bar) - std::log(n_bar + 1.0);
    for (int n = 0; n <= nmax; ++n)
        rho.entries(n, n) = std::exp(n * log_ratio - std::log(n_bar + 1.0));
    return rho;
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.nmax != sigma.nmax)
        throw std::invalid_argument("trace_distance: dimension mismatch");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
        rho.entries - sigma.entries, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double mean_photon(const DensityMatrix& rho) {
    double n = 0.0;
    for (int k = 0; k <= rho.nmax; ++k) n += k * rho.entries(k, k).real();
    return n;
}

void validate(const DensityMatrix& rho, double tail_tol) {
    if ((rho.entries - rho.entries.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw unphysical_state_error("density matrix not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.entries,
                                                       Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10)
        throw unphysical_state_error("density matrix has negative eigenvalue");
    const double tr = rho.entries.trace().real();
    if (tr > 1.0 + 1e-10 || tr < 1.0 - tail_tol)
        throw unphysical_state_error("density matrix trace out of range");
}

Eigen::MatrixXcd matrix_sqrt(const DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.entries);
    Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
    return es.eigenvectors() * lam.cwiseSqrt().asDiagonal() *
           es.eigenvectors().adjoint();
}

Eigen::MatrixXcd annihilation_operator(int nmax) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(nmax + 1, nmax + 1);
    for (int n = 0; n < nmax; ++n) a(n, n + 1) = std::sqrt(double(n + 1));
    return a;
}

bool has_z4_symmetry(const ConstellationSpec& c, double tol) {
    for (std::size_t k = 0; k < c.size(); ++k) {
        const std::complex<double> rot(-c.points[k].imag(), c.points[k].real());
        bool found = false;
        for (std::size_t l = 0; l < c.size(); ++l) {
            if (std::abs(c.points[l] - rot) <= tol * (1.0 + std::abs(rot)) &&
                std::abs(c.pmf[l] - c.pmf[k]) <= tol) {
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

namespace {

// rho restricted to photon numbers n = r (mod 4), r = 0..3. Valid whenever
// the constellation is Z4 symmetric; cross-residue entries vanish exactly.
std::array<Eigen::MatrixXcd, 4> blocked_modulated(const ConstellationSpec& c,
                                                  int nmax) {
    std::array<Eigen::MatrixXcd, 4> blocks;
    for (int r = 0; r < 4; ++r) {
        const int sz = (nmax - r) / 4 + (r <= nmax ? 1 : 0);
        blocks[r] = Eigen::MatrixXcd::Zero(sz, sz);
    }
    Eigen::VectorXcd sub[4];
    for (std::size_t k = 0; k < c.size(); ++k) {
        const FockVector v = coherent_state_fock(c.points[k] / 2.0, nmax);
        for (int r = 0; r < 4; ++r) {
            const int sz = int(blocks[r].rows());
            sub[r].resize(sz);
            for (int i = 0; i < sz; ++i) sub[r](i) = v.amplitudes(r + 4 * i);
            blocks[r].noalias() += c.pmf[k] * (sub[r] * sub[r].adjoint());
        }
    }
    return blocks;
}

} // namespace

double trace_distance_pcs_thermal(const ConstellationSpec& c, double n_bar,
                                  int nmax) {
    if (!has_z4_symmetry(c)) {
        return trace_distance(modulated_density_matrix(c, nmax),
                              thermal_state(n_bar, nmax));
    }
    auto blocks = blocked_modulated(c, nmax);
    const double log_ratio =
        n_bar > 0.0 ? std::log(n_bar) - std::log(n_bar + 1.0) : 0.0;
    double dist = 0.0;
    for (int r = 0; r < 4; ++r) {
        for (int i = 0; i < blocks[r].rows(); ++i) {
            const int n = r + 4 * i;
            const double th =
                n_bar > 0.0
                    ? std::exp(n * log_ratio - std::log(n_bar + 1.0))
                    : (n == 0 ? 1.0 : 0.0);
            blocks[r](i, i) -= th;
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
            blocks[r], Eigen::EigenvaluesOnly);
        dist += es.eigenvalues().cwiseAbs().sum();
    }
    return 0.5 * dist;
}

Eigen::MatrixXcd modulated_sqrt(const ConstellationSpec& c, int nmax) {
    if (!has_z4_symmetry(c)) return matrix_sqrt(modulated_density_matrix(c, nmax));
    const auto blocks = blocked_modulated(c, nmax);
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(nmax + 1, nmax + 1);
    for (int r = 0; r < 4; ++r) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(blocks[r]);
        const Eigen::MatrixXcd sb = es.eigenvectors() *
                                    es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
                                    es.eigenvectors().adjoint();
        for (int i = 0; i < sb.rows(); ++i)
            for (int j = 0; j < sb.cols(); ++j)
                s(r + 4 * i, r + 4 * j) = sb(i, j);
    }
    return s;
}

} // namespace cvqkd
