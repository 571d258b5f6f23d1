#pragma once

#include <stdexcept>
#include <string>

namespace cvqkd {

// Error taxonomy: invalid user input vs numerically detected model breakage.
struct constellation_shape_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct truncation_error : std::runtime_error {
    double tail_mass;
    truncation_error(const std::string& msg, double tail)
        : std::runtime_error(msg), tail_mass(tail) {}
};
struct unphysical_state_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct optimization_error : std::runtime_error {
    double best_iterate;
    optimization_error(const std::string& msg, double best)
        : std::runtime_error(msg), best_iterate(best) {}
};
struct sync_failure_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct equalizer_divergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ambiguous_cfo_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct calibration_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct estimation_precision_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace cvqkd
