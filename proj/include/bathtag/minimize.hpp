// minimize.hpp: Golden-section scalar minimization with a coarse grid pre-scan

#pragma once

#include <functional>

namespace bathtag {

struct MinimizeOptions {
    int prescan_points{21};
    double x_tolerance{1e-10};
    // Objectives whose pre-scan spread is below this are reported flat.
    double flat_tolerance{1e-14};
    int max_iterations{300};
};

struct ScalarMinimum {
    double x{};
    double value{};
    bool boundary{false};  // optimum sits on an end of the search interval
    bool flat{false};      // objective constant to flat_tolerance; x is the midpoint
};

using ScalarFunction = std::function<double(double)>;

// Plain golden-section search on [lo, hi], assuming a single minimum there.
ScalarMinimum golden_section(const ScalarFunction& f, double lo, double hi,
                             double x_tolerance = 1e-10, int max_iterations = 300);

// Samples `prescan_points` evenly spaced points, refines every local minimum
// of the samples by golden section within its neighbouring grid cells and
// returns the global one. Throws std::domain_error on non-finite evaluations.
ScalarMinimum minimize_scalar(const ScalarFunction& f, double lo, double hi,
                              const MinimizeOptions& options = {});

}  // namespace bathtag
