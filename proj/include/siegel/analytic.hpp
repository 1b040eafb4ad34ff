#pragma once

#include <array>
#include <complex>
#include <utility>

#include <json.hpp>

#include "siegel/quadrature.hpp"
#include "siegel/zeta.hpp"

namespace siegel {

struct QuadratureSpec {
    double abs_tolerance = 1e-8;
    int max_depth = 60;
    double tail_cutoff = 1e3;  // [T, inf) is integrated after t = T/u

    void validate() const;
    QuadratureSpec halved() const {
        QuadratureSpec s = *this;
        s.abs_tolerance *= 0.5;
        return s;
    }
};

struct JValues {
    std::array<double, 4> J{};
    std::array<double, 4> error_estimates{};

    double J1() const noexcept { return J[0]; }
    double J2() const noexcept { return J[1]; }
    double J3() const noexcept { return J[2]; }
    double J4() const noexcept { return J[3]; }
};

/// sqrt((0.999 + t^2)(1 + t^2)(4 + t^2)); 0.999 bounds beta^2 from below.
double j_denominator(double t);

/// log(e(|t| + 14/5)), the t-dependent part of the bound for |L(1+it, chi)|.
double dudek_factor(double t);

/// Integrand of J_index (index 1..4). Indices 3 and 4 require t >= 3.
double j_integrand(int index, double t, const ZetaEvaluator& evaluator = {});

/// J1, J2 on [-3, 3] folded onto [0, 3]; J3, J4 on [3, T] plus the mapped
/// tail. The six pieces are independent and run under OpenMP.
JValues compute_J(const QuadratureSpec& spec = {}, const ZetaEvaluator& evaluator = {});

namespace serial {
JValues compute_J(const QuadratureSpec& spec = {}, const ZetaEvaluator& evaluator = {});
}  // namespace serial

/// J1 or J2 integrated over the full interval [-3, 3] without folding.
QuadratureResult integrate_unfolded(int index, const QuadratureSpec& spec, const ZetaEvaluator& evaluator = {});

/// Closed-form upper bound for the part of J3 (index 3) or J4 (index 4)
/// beyond t = T, from denominator >= t^3.
double j_tail_bound(int index, double T);

/// Integral of J3 or J4 integrand over [lo, hi] (both >= 3).
QuadratureResult integrate_j_segment(int index, double lo, double hi, const QuadratureSpec& spec,
                                     const ZetaEvaluator& evaluator = {});

/// Each J rounded up at the third decimal, paired as
/// (ceil(J1) + ceil(J3), ceil(J2) + ceil(J4)).
std::pair<double, double> rounded_bound_constants(const JValues& j);

/// Smallest multiple of 1e-3 not below x.
double round_up_3(double x);

/// |1/(s(s+2)(s+3)) - (1/(6s) - 1/(2(s+2)) + 1/(3(s+3)))|. Poles rejected.
double partial_fraction_residual(std::complex<double> s);

nlohmann::json to_json(const JValues& j, const QuadratureSpec& spec);

}  // namespace siegel
