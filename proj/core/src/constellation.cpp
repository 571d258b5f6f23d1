#include "cvqkd/constellation.hpp"
#include "cvqkd/errors.hpp"
#include "cvqkd/rng.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <numeric>
#include <sstream>

namespace cvqkd {

namespace {

int lattice_side(int order) {
    if (order < 4) throw constellation_shape_error("QAM order must be >= 4");
    int side = static_cast<int>(std::lround(std::sqrt(double(order))));
    if (side * side != order)
        throw constellation_shape_error("QAM order must be a perfect square");
    // side must itself be a power of two (4, 16, 64, 256, 1024, ...)
    if ((side & (side - 1)) != 0)
        throw constellation_shape_error("QAM order must be an even power of two");
    return side;
}

} // namespace

ConstellationSpec build_pcs_qam(int order, double nu,
                                std::optional<double> target_VA) {
    if (nu < 0.0) throw std::domain_error("shaping exponent nu must be >= 0");
    if (target_VA && *target_VA <= 0.0)
        throw std::domain_error("target V_A must be positive");
    const int side = lattice_side(order);

    ConstellationSpec c;
    c.order = order;
    c.nu = nu;
    c.points.reserve(order);
    c.pmf.reserve(order);

    // Unit lattice coordinates {-(side-1), ..., -1, 1, ..., side-1} (odd).
    std::vector<double> axis(side);
    for (int i = 0; i < side; ++i) axis[i] = double(2 * i - side + 1);

    double norm = 0.0;
    double m2 = 0.0; // E[x²] per quadrature on the unit lattice
    for (int iy = 0; iy < side; ++iy) {
        for (int ix = 0; ix < side; ++ix) {
            const double x = axis[ix], y = axis[iy];
            const double r2 = x * x + y * y;
            // Subtract the minimal radius so weights stay well-scaled for
            // large nu (pmf is invariant under a common factor).
            const double w = std::exp(-nu * (r2 - 2.0));
            c.points.emplace_back(x, y);
            c.pmf.push_back(w);
            norm += w;
            m2 += w * x * x;
        }
    }
    for (double& p : c.pmf) p /= norm;
    m2 /= norm;

    c.scale = target_VA ? std::sqrt(*target_VA / m2) : 1.0;
    for (auto& pt : c.points) pt *= c.scale;
    return c;
}

ModulationStats modulation_stats(const ConstellationSpec& c) {
    double va = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k)
        va += c.pmf[k] * c.points[k].real() * c.points[k].real();
    return {va, va / 2.0};
}

std::vector<std::complex<double>> sample_symbols(const ConstellationSpec& c,
                                                 std::size_t n,
                                                 std::uint64_t seed) {
    std::vector<double> cdf(c.size());
    std::partial_sum(c.pmf.begin(), c.pmf.end(), cdf.begin());
    cdf.back() = 1.0;

    auto rng = block_rng(seed, 0);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<std::complex<double>> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = uni(rng);
        const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
        out[i] = c.points[std::size_t(it - cdf.begin())];
    }
    return out;
}

std::string to_json(const ConstellationSpec& c) {
    nlohmann::json j;
    j["order"] = c.order;
    j["nu"] = c.nu;
    j["scale"] = c.scale;
    auto& pts = j["points"] = nlohmann::json::array();
    for (const auto& p : c.points) pts.push_back({p.real(), p.imag()});
    j["pmf"] = c.pmf;
    // nlohmann serializes doubles with round-trip-exact (>= 17 significant
    // digit) formatting, so parse(to_json(c)) is bit-stable.
    return j.dump();
}

ConstellationSpec constellation_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    ConstellationSpec c;
    c.order = j.at("order").get<int>();
    c.nu = j.at("nu").get<double>();
    c.scale = j.at("scale").get<double>();
    for (const auto& p : j.at("points"))
        c.points.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
    c.pmf = j.at("pmf").get<std::vector<double>>();
    if (c.points.size() != c.pmf.size() || int(c.points.size()) != c.order)
        throw constellation_shape_error("inconsistent constellation JSON");
    return c;
}

} // namespace cvqkd
