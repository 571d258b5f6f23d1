#pragma once

#include "cvqkd/constellation.hpp"

#include <optional>
#include <string>

namespace cvqkd {

/// Channel and receiver parameters in shot-noise units (N0 = 1).
struct LinkBudget {
    double T = 1.0;    // channel transmittance
    double eta = 1.0;  // receiver quantum efficiency (trusted)
    double V_el = 0.0; // electronic noise variance (trusted)
    double xi_B = 0.0; // excess noise at Bob (untrusted)
};

struct SecurityConfig {
    double beta = 0.95;    // reconciliation efficiency
    double epsilon = 1e-8; // security parameter, spent on the xi bound
    double N = 2.8e6;      // block size in symbols
    bool finite_size = true;
};

/// Two-mode entanglement-based picture of the channel before the trusted
/// receiver: diag terms V (Alice), W (Bob), off-diagonal Z (times sigma_z).
/// eta/V_el are carried along for the conditional entropy step.
struct CovarianceModel {
    double V;
    double W;
    double Z;
    double eta;
    double V_el;
};

struct RateReport {
    double I_AB;            // bits/symbol, per polarization
    double chi_EB;          // bits/symbol
    double secret_fraction; // beta*I_AB - chi_EB (raw, may be negative)
    double skr;             // bits/second, clamped at 0
    double skr_raw;         // unclamped
    double xi_used;         // SNU fed to the Holevo step
    std::string mode;       // "asymptotic" | "finite-size"
    // input echo for reproducibility
    std::string modulation;
    double V_A, T, eta, V_el, xi_B, beta, epsilon, N;
};

double vb_predict(double V_A, double T, double eta, double V_el, double xi_B);

double xi_at_entrance(double xi_B, double eta, double T);

/// Gaussian-channel heterodyne capacity log2(1 + SNR),
/// SNR = (eta*T*V_A/2) / (1 + V_el + xi_B).
double mutual_information(double V_A, double T, double eta, double V_el,
                          double xi_B);

/// von Neumann entropy of a thermal state with mean photon number n_bar.
double g_function(double n_bar);

/// Modulation-dependent quantities of the arbitrary-modulation key-rate
/// bound, computed numerically in the truncated Fock basis:
///   c = tr(sqrt(rho) a sqrt(rho) a\dagger),  w = <n> + 1 - c²/<n>.
/// For the Gaussian (thermal) ensemble c = sqrt(<n>(<n>+1)) and w = 0.
struct ModulationQuantities {
    double c;
    double w;
    double n_mean;
};
ModulationQuantities dbl_quantities(const ConstellationSpec& c,
                                    int nmax_cap = 256);

/// Entanglement-based covariance model. Pass std::nullopt for Gaussian
/// modulation (Z = sqrt(T V_A (V_A+2))); a constellation gives the
/// conservative discrete-modulation Z, never above the Gaussian value.
CovarianceModel covariance_model(const std::optional<ConstellationSpec>& mod,
                                 double V_A, double T, double eta, double V_el,
                                 double xi_A);

/// chi_EB = S(E) - S(E|B) with Eve purifying the channel only; the receiver
/// (eta as a beamsplitter, V_el as trusted thermal noise) is conditioned out
/// of Eve's knowledge after Bob's heterodyne measurement.
double holevo_bound(const CovarianceModel& cov);

/// Upper quantile of the standard normal distribution.
double normal_upper_quantile(double epsilon);

/// xi_wc = xi_hat + z(epsilon) * sqrt(2) * total_noise_var / sqrt(N),
/// total_noise_var = 1 + V_el + xi_hat.
double worst_case_xi(double xi_hat, double N, double epsilon,
                     double total_noise_var);

RateReport secret_fraction_report(const std::optional<ConstellationSpec>& mod,
                                  double V_A, const LinkBudget& link,
                                  const SecurityConfig& sec);

/// SKR = 2 R_S (1 - R_pilots) * secret_fraction (2 = polarization mux).
double skr(double secret_fraction, double R_S, double R_pilots);

/// Fill the skr fields of a report.
void apply_skr(RateReport& r, double R_S, double R_pilots);

std::string to_json(const RateReport& r);

} // namespace cvqkd
