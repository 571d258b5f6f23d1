#include "cvqkd/security.hpp"
#include "cvqkd/errors.hpp"
#include "cvqkd/fock.hpp"
#include "cvqkd/symplectic.hpp"

#include <boost/math/distributions/normal.hpp>
#include <nlohmann/json.hpp>

#include <cmath>

namespace cvqkd {

namespace {

const Eigen::Matrix2d kSigmaZ = (Eigen::Matrix2d() << 1, 0, 0, -1).finished();
const Eigen::Matrix2d kI2 = Eigen::Matrix2d::Identity();

Eigen::Matrix4d two_mode_gamma(const CovarianceModel& cov) {
    Eigen::Matrix4d g;
    g.topLeftCorner<2, 2>() = cov.V * kI2;
    g.bottomRightCorner<2, 2>() = cov.W * kI2;
    g.topRightCorner<2, 2>() = cov.Z * kSigmaZ;
    g.bottomLeftCorner<2, 2>() = cov.Z * kSigmaZ;
    return g;
}

double entropy_from_spectrum(const std::vector<double>& nus) {
    double s = 0.0;
    for (double nu : nus) s += g_function((nu - 1.0) / 2.0);
    return s;
}

} // namespace

double vb_predict(double V_A, double T, double eta, double V_el, double xi_B) {
    return eta * T / 2.0 * V_A + 1.0 + V_el + xi_B;
}

double xi_at_entrance(double xi_B, double eta, double T) {
    if (eta * T <= 0.0)
        throw std::domain_error("xi_at_entrance requires eta*T > 0");
    return 2.0 * xi_B / (eta * T);
}

double mutual_information(double V_A, double T, double eta, double V_el,
                          double xi_B) {
    const double snr = (eta * T * V_A / 2.0) / (1.0 + V_el + xi_B);
    return std::log2(1.0 + snr);
}

double g_function(double n_bar) {
    if (n_bar < 0.0) throw std::domain_error("g_function needs n_bar >= 0");
    if (n_bar == 0.0) return 0.0;
    return (n_bar + 1.0) * std::log2(n_bar + 1.0) - n_bar * std::log2(n_bar);
}

ModulationQuantities dbl_quantities(const ConstellationSpec& c, int nmax_cap) {
    const double n_mean = modulation_stats(c).n_mean;
    if (n_mean < 1e-12) return {0.0, 0.0, n_mean};
    const int nmax = choose_nmax(c, 1e-10, nmax_cap);
    const Eigen::MatrixXcd s = modulated_sqrt(c, nmax);
    // tr(S a S a†) expanded entrywise; a is a single superdiagonal so the
    // full products are never formed.
    double cq = 0.0;
    for (int i = 0; i < nmax; ++i)
        for (int j = 1; j <= nmax; ++j)
            cq += std::sqrt(double(j) * double(i + 1)) *
                  (s(i, j - 1) * s(j, i + 1)).real();
    const double w = std::max(n_mean + 1.0 - cq * cq / n_mean, 0.0);
    return {cq, w, n_mean};
}

CovarianceModel covariance_model(const std::optional<ConstellationSpec>& mod,
                                 double V_A, double T, double eta, double V_el,
                                 double xi_A) {
    const double z_gauss = std::sqrt(T * V_A * (V_A + 2.0));
    double z = z_gauss;
    if (mod) {
        const auto stats = modulation_stats(*mod);
        if (std::abs(stats.V_A - V_A) > 1e-6 * std::max(1.0, V_A))
            throw std::invalid_argument(
                "covariance_model: V_A inconsistent with constellation");
        const auto q = dbl_quantities(*mod);
        // Conservative correlation of the arbitrary-modulation bound: equals
        // the Gaussian value when w = 0 and shrinks with the modulation's
        // distance from the thermal ensemble.
        z = std::sqrt(T) * (2.0 * q.c - std::sqrt(2.0 * q.w * xi_A));
        z = std::clamp(z, 0.0, z_gauss);
    }
    CovarianceModel cov{V_A + 1.0, T * (V_A + xi_A) + 1.0, z, eta, V_el};
    symplectic_eigenvalues(two_mode_gamma(cov)); // physicality gate
    return cov;
}

double holevo_bound(const CovarianceModel& cov) {
    const Eigen::Matrix4d gamma_ab = two_mode_gamma(cov);
    const double s_e = entropy_from_spectrum(symplectic_eigenvalues(gamma_ab));

    double s_e_cond;
    if (cov.eta >= 1.0 - 1e-12 && cov.V_el <= 0.0) {
        // Ideal receiver: heterodyne directly on mode B.
        const double v_cond = cov.V - cov.Z * cov.Z / (cov.W + 1.0);
        Eigen::Matrix2d g = v_cond * kI2;
        Eigen::MatrixXd gd = g;
        s_e_cond = entropy_from_spectrum(symplectic_eigenvalues(gd));
    } else {
        // Trusted receiver: beamsplitter of transmittance eta with one arm of
        // an EPR pair (variance v_d) modeling the electronic noise, then
        // heterodyne on the transmitted port. Chosen so the measured variance
        // reproduces V_B = eta*T/2 V_A + 1 + V_el + xi_B.
        const double eta = std::min(cov.eta, 1.0 - 1e-6);
        const double v_d = 1.0 + 2.0 * cov.V_el / (1.0 - eta);

        // Modes (A, B, F, G) in (x,p) pairs.
        Eigen::MatrixXd gamma = Eigen::MatrixXd::Identity(8, 8);
        gamma.topLeftCorner<4, 4>() = gamma_ab;
        gamma.block<2, 2>(4, 4) = v_d * kI2;
        gamma.block<2, 2>(6, 6) = v_d * kI2;
        const double epr = std::sqrt(std::max(v_d * v_d - 1.0, 0.0));
        gamma.block<2, 2>(4, 6) = epr * kSigmaZ;
        gamma.block<2, 2>(6, 4) = epr * kSigmaZ;

        Eigen::MatrixXd bs = Eigen::MatrixXd::Identity(8, 8);
        const double t = std::sqrt(eta), r = std::sqrt(1.0 - eta);
        bs.block<2, 2>(2, 2) = t * kI2;
        bs.block<2, 2>(2, 4) = r * kI2;
        bs.block<2, 2>(4, 2) = -r * kI2;
        bs.block<2, 2>(4, 4) = t * kI2;
        gamma = bs * gamma * bs.transpose();

        // Condition modes (A, F, G) on a heterodyne measurement of B.
        Eigen::Matrix<int, 6, 1> keep;
        keep << 0, 1, 4, 5, 6, 7;
        Eigen::MatrixXd g_keep(6, 6), cross(6, 2);
        for (int i = 0; i < 6; ++i) {
            for (int j = 0; j < 6; ++j) g_keep(i, j) = gamma(keep(i), keep(j));
            for (int j = 0; j < 2; ++j) cross(i, j) = gamma(keep(i), 2 + j);
        }
        const Eigen::Matrix2d gb =
            gamma.block<2, 2>(2, 2) + kI2; // heterodyne adds one vacuum unit
        const Eigen::MatrixXd cond =
            g_keep - cross * gb.inverse() * cross.transpose();
        s_e_cond = entropy_from_spectrum(symplectic_eigenvalues(cond));
    }
    return s_e - s_e_cond;
}

double normal_upper_quantile(double epsilon) {
    if (epsilon <= 0.0 || epsilon >= 1.0)
        throw std::domain_error("epsilon must lie in (0,1)");
    boost::math::normal dist;
    return boost::math::quantile(boost::math::complement(dist, epsilon));
}

double worst_case_xi(double xi_hat, double N, double epsilon,
                     double total_noise_var) {
    if (N < 2.0) throw std::domain_error("block size N must be >= 2");
    return xi_hat + normal_upper_quantile(epsilon) * std::sqrt(2.0) *
                        total_noise_var / std::sqrt(N);
}

RateReport secret_fraction_report(const std::optional<ConstellationSpec>& mod,
                                  double V_A, const LinkBudget& link,
                                  const SecurityConfig& sec) {
    RateReport r{};
    r.modulation = mod ? ("pcs" + std::to_string(mod->order)) : "gaussian";
    r.V_A = V_A;
    r.T = link.T;
    r.eta = link.eta;
    r.V_el = link.V_el;
    r.xi_B = link.xi_B;
    r.beta = sec.beta;
    r.epsilon = sec.epsilon;
    r.N = sec.N;
    r.mode = sec.finite_size ? "finite-size" : "asymptotic";

    r.xi_used = sec.finite_size
                    ? worst_case_xi(link.xi_B, sec.N, sec.epsilon,
                                    1.0 + link.V_el + link.xi_B)
                    : link.xi_B;
    // Finite-size mode evaluates the whole rate at the worst-case excess
    // noise, mutual information included, as in worst-case parameter
    // estimation practice.
    r.I_AB = mutual_information(V_A, link.T, link.eta, link.V_el, r.xi_used);
    const double xi_a = xi_at_entrance(r.xi_used, link.eta, link.T);
    const auto cov =
        covariance_model(mod, V_A, link.T, link.eta, link.V_el, xi_a);
    r.chi_EB = holevo_bound(cov);
    r.secret_fraction = sec.beta * r.I_AB - r.chi_EB;
    return r;
}

double skr(double secret_fraction, double R_S, double R_pilots) {
    if (R_S <= 0.0) throw std::domain_error("symbol rate must be positive");
    if (R_pilots < 0.0 || R_pilots >= 1.0)
        throw std::domain_error("pilot rate must lie in [0,1)");
    const double raw = 2.0 * R_S * (1.0 - R_pilots) * secret_fraction;
    return std::max(raw, 0.0);
}

void apply_skr(RateReport& r, double R_S, double R_pilots) {
    r.skr_raw = 2.0 * R_S * (1.0 - R_pilots) * r.secret_fraction;
    r.skr = std::max(r.skr_raw, 0.0);
}

std::string to_json(const RateReport& r) {
    nlohmann::json j;
    j["I_AB"] = r.I_AB;
    j["chi_EB"] = r.chi_EB;
    j["secret_fraction"] = r.secret_fraction;
    j["skr"] = r.skr;
    j["skr_raw"] = r.skr_raw;
    j["xi_used"] = r.xi_used;
    j["mode"] = r.mode;
    j["inputs"] = {{"modulation", r.modulation}, {"V_A", r.V_A}, {"T", r.T},
                   {"eta", r.eta},               {"V_el", r.V_el},
                   {"xi_B", r.xi_B},             {"beta", r.beta},
                   {"epsilon", r.epsilon},       {"N", r.N}};
    // The mutual information uses the Gaussian-input capacity formula; the
    // epsilon budget is spent entirely on the excess-noise bound.
    j["notes"] = {"I_AB: Gaussian-input heterodyne capacity",
                  "epsilon budget: excess-noise estimator only"};
    return j.dump();
}

} // namespace cvqkd
