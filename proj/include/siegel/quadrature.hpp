#pragma once

#include <functional>
#include <string>
#include <vector>

#include "siegel/common.hpp"

namespace siegel {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;  // sum of |K15 - G7| over the final partition
    std::size_t intervals = 0;
    std::size_t evaluations = 0;
};

/// Raised when the error target is not met before every interval has hit the
/// depth limit. Carries the partially converged value.
class ConvergenceFailure : public std::runtime_error {
public:
    ConvergenceFailure(const std::string& what, QuadratureResult partial)
        : std::runtime_error(what), partial_(partial) {}
    const QuadratureResult& partial() const noexcept { return partial_; }

private:
    QuadratureResult partial_;
};

struct GaussKronrodPanel {
    double lo = 0.0, hi = 0.0;
    double kronrod = 0.0;
    double error = 0.0;
    int depth = 0;
};

/// One 15-point Kronrod panel with its embedded 7-point Gauss estimate.
GaussKronrodPanel gauss_kronrod_15(const std::function<double(double)>& f, double lo, double hi, int depth);

/// Globally adaptive Gauss-Kronrod on [lo, hi]: bisect the panel with the
/// largest error (ties to the leftmost) until the summed error is below
/// abs_tolerance. The result is summed in interval order, so it is a pure
/// function of the inputs.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                                    double abs_tolerance, int max_depth);

}  // namespace siegel
