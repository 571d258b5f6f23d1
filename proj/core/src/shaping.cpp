#include "cvqkd/shaping.hpp"
#include "cvqkd/errors.hpp"
#include "cvqkd/fock.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace cvqkd {

NuOptResult optimize_nu(int order, double target_VA, double nu_tol,
                        int nmax_cap) {
    if (target_VA <= 0.0) throw std::domain_error("target V_A must be positive");

    // Coarse grid: nu = 0 plus 39 log-spaced points in [1e-3, 2].
    std::vector<double> grid{0.0};
    const int npts = 39;
    for (int i = 0; i < npts; ++i)
        grid.push_back(std::pow(10.0, -3.0 + (std::log10(2e3)) * i / (npts - 1)));

    // One truncation for all candidates so trace distances are comparable.
    int nmax = 0;
    for (double nu : grid) {
        const auto spec = build_pcs_qam(order, nu, target_VA);
        nmax = std::max(nmax, choose_nmax(spec, 1e-10, nmax_cap));
    }
    auto objective = [&](double nu) {
        const auto spec = build_pcs_qam(order, nu, target_VA);
        return trace_distance_pcs_thermal(spec, target_VA / 2.0, nmax);
    };

    std::vector<double> val(grid.size());
    std::size_t best = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        val[i] = objective(grid[i]);
        if (val[i] < val[best]) best = i;
    }

    // Bracket around the best grid point, then golden-section refine.
    double a = grid[best > 0 ? best - 1 : 0];
    double b = grid[std::min(best + 1, grid.size() - 1)];
    if (a == b) b = a + 10.0 * nu_tol;

    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = objective(x1), f2 = objective(x2);
    int iters = 0;
    const int iter_cap = 200;
    while (b - a > nu_tol) {
        if (++iters > iter_cap)
            throw optimization_error("optimize_nu failed to converge",
                                     f1 < f2 ? x1 : x2);
        if (f1 < f2) {
            b = x2;
            x2 = x1; f2 = f1;
            x1 = b - phi * (b - a);
            f1 = objective(x1);
        } else {
            a = x1;
            x1 = x2; f1 = f2;
            x2 = a + phi * (b - a);
            f2 = objective(x2);
        }
    }
    const double nu_star = f1 < f2 ? x1 : x2;
    return {nu_star, std::min(f1, f2), nmax};
}

} // namespace cvqkd
