#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cvqkd {

/// Probabilistically shaped square-lattice QAM.
///
/// Points live on the odd-integer lattice {±1,±3,...}² times `scale`; the
/// probability mass function is Maxwell-Boltzmann exp(-nu*(x²+y²)) evaluated
/// on the *unit* lattice, so the (nu, V_A) pairs are decoupled: nu fixes the
/// shape, scale fixes the per-quadrature variance.
///
/// Quadrature convention: a point (p, q) in shot-noise units corresponds to
/// the coherent state |(p+iq)/2>, hence V_A = 2<n>.
struct ConstellationSpec {
    int order = 4;
    double nu = 0.0;
    double scale = 1.0;
    std::vector<std::complex<double>> points; // (p_k, q_k), scaled, SNU
    std::vector<double> pmf;

    std::size_t size() const { return points.size(); }
};

struct ModulationStats {
    double V_A;    // per-quadrature modulation variance, SNU
    double n_mean; // mean photon number, V_A / 2
};

/// Build a PCS QAM spec. If target_VA is given the lattice scale is chosen so
/// the per-quadrature variance equals it; otherwise scale = 1.
ConstellationSpec build_pcs_qam(int order, double nu,
                                std::optional<double> target_VA = std::nullopt);

ModulationStats modulation_stats(const ConstellationSpec& c);

/// i.i.d. draws from the constellation pmf, deterministic per seed.
std::vector<std::complex<double>> sample_symbols(const ConstellationSpec& c,
                                                 std::size_t n,
                                                 std::uint64_t seed);

/// JSON round-trip (probabilities at 17 significant digits).
std::string to_json(const ConstellationSpec& c);
ConstellationSpec constellation_from_json(const std::string& text);

} // namespace cvqkd
