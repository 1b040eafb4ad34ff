#include "siegel/analytic.hpp"

#include <cmath>
#include <string>

#include "siegel/common.hpp"

namespace siegel {

namespace {

// J3 and J4 carry 0.6/sqrt(2 pi); J1 and J2 carry 1/(2 pi).
const double kLineFactor = 1.0 / (2.0 * kPi);
const double kTailFactor = 0.6 / std::sqrt(2.0 * kPi);

void require_index(int index) {
    if (index < 1 || index > 4)
        throw InvalidArgument("j_integrand: index must be in 1..4, got " + std::to_string(index));
}

enum class Piece { Line, Body, Tail };

struct PieceSpec {
    int index;
    Piece piece;
};

constexpr std::array<PieceSpec, 6> kPieces{{
    {1, Piece::Line}, {2, Piece::Line}, {3, Piece::Body}, {3, Piece::Tail}, {4, Piece::Body}, {4, Piece::Tail},
}};

QuadratureResult integrate_piece(const PieceSpec& p, const QuadratureSpec& spec, const ZetaEvaluator& ev) {
    const double T = spec.tail_cutoff;
    switch (p.piece) {
        case Piece::Line: {
            // even integrand: 2 * int_0^3
            auto f = [&](double t) { return j_integrand(p.index, t, ev); };
            QuadratureResult r = integrate_adaptive(f, 0.0, 3.0, 0.5 * spec.abs_tolerance, spec.max_depth);
            r.value *= 2.0;
            r.error *= 2.0;
            return r;
        }
        case Piece::Body:
            return integrate_j_segment(p.index, 3.0, T, {0.5 * spec.abs_tolerance, spec.max_depth, T}, ev);
        case Piece::Tail: {
            // int_T^inf g(t) dt = int_0^1 g(T/u) T/u^2 du
            auto f = [&](double u) { return j_integrand(p.index, T / u, ev) * T / (u * u); };
            return integrate_adaptive(f, 0.0, 1.0, 0.5 * spec.abs_tolerance, spec.max_depth);
        }
    }
    return {};
}

JValues assemble(const std::array<QuadratureResult, 6>& r) {
    JValues j;
    j.J[0] = r[0].value;
    j.J[1] = r[1].value;
    j.J[2] = r[2].value + r[3].value;
    j.J[3] = r[4].value + r[5].value;
    j.error_estimates = {r[0].error, r[1].error, r[2].error + r[3].error, r[4].error + r[5].error};
    return j;
}

}  // namespace

void QuadratureSpec::validate() const {
    if (!(abs_tolerance > 0.0)) throw InvalidArgument("QuadratureSpec: abs_tolerance must be positive");
    if (!(tail_cutoff >= 3.0)) throw InvalidArgument("QuadratureSpec: tail cutoff must be >= 3");
    if (max_depth < 1) throw InvalidArgument("QuadratureSpec: max_depth must be >= 1");
}

double j_denominator(double t) {
    const double t2 = t * t;
    return std::sqrt((0.999 + t2) * (1.0 + t2) * (4.0 + t2));
}

double dudek_factor(double t) { return 1.0 + std::log(std::fabs(t) + 14.0 / 5.0); }

double j_integrand(int index, double t, const ZetaEvaluator& evaluator) {
    require_index(index);
    if (index <= 2) {
        const double base = kLineFactor * abs_t_zeta_one_minus_it(t, evaluator) / j_denominator(t);
        return index == 1 ? base : base * dudek_factor(t);
    }
    if (!(t >= 3.0)) throw InvalidArgument("j_integrand: indices 3 and 4 need t >= 3");
    const double base = kTailFactor * t * std::log(t) / j_denominator(t);
    return index == 3 ? base : base * dudek_factor(t);
}

JValues compute_J(const QuadratureSpec& spec, const ZetaEvaluator& evaluator) {
    spec.validate();
    std::array<QuadratureResult, 6> results;
    std::array<std::string, 6> errors;
#pragma omp parallel for schedule(dynamic, 1)
    for (int i = 0; i < 6; ++i) {
        try {
            results[static_cast<std::size_t>(i)] = integrate_piece(kPieces[static_cast<std::size_t>(i)], spec, evaluator);
        } catch (const ConvergenceFailure& e) {
            results[static_cast<std::size_t>(i)] = e.partial();
            errors[static_cast<std::size_t>(i)] = e.what();
        }
    }
    for (std::size_t i = 0; i < errors.size(); ++i) {
        if (errors[i].empty()) continue;
        const JValues partial = assemble(results);
        QuadratureResult summary;
        summary.value = partial.J[static_cast<std::size_t>(kPieces[i].index - 1)];
        summary.error = partial.error_estimates[static_cast<std::size_t>(kPieces[i].index - 1)];
        throw ConvergenceFailure("compute_J: J" + std::to_string(kPieces[i].index) + ": " + errors[i], summary);
    }
    return assemble(results);
}

namespace serial {

JValues compute_J(const QuadratureSpec& spec, const ZetaEvaluator& evaluator) {
    spec.validate();
    std::array<QuadratureResult, 6> results;
    for (std::size_t i = 0; i < kPieces.size(); ++i) results[i] = integrate_piece(kPieces[i], spec, evaluator);
    return assemble(results);
}

}  // namespace serial

QuadratureResult integrate_unfolded(int index, const QuadratureSpec& spec, const ZetaEvaluator& evaluator) {
    if (index != 1 && index != 2) throw InvalidArgument("integrate_unfolded: index must be 1 or 2");
    auto f = [&](double t) { return j_integrand(index, t, evaluator); };
    return integrate_adaptive(f, -3.0, 3.0, spec.abs_tolerance, spec.max_depth);
}

QuadratureResult integrate_j_segment(int index, double lo, double hi, const QuadratureSpec& spec,
                                     const ZetaEvaluator& evaluator) {
    if (index != 3 && index != 4) throw InvalidArgument("integrate_j_segment: index must be 3 or 4");
    auto f = [&](double t) { return j_integrand(index, t, evaluator); };
    return integrate_adaptive(f, lo, hi, spec.abs_tolerance, spec.max_depth);
}

double j_tail_bound(int index, double T) {
    if (index != 3 && index != 4) throw InvalidArgument("j_tail_bound: index must be 3 or 4");
    if (!(T >= 3.0)) throw InvalidArgument("j_tail_bound: T must be >= 3");
    const double L = std::log(T);
    const double log_moment = (L + 1.0) / T;                 // int_T^inf log t / t^2
    const double log2_moment = (L * L + 2.0 * L + 2.0) / T;  // int_T^inf log^2 t / t^2
    if (index == 3) return kTailFactor * log_moment;
    // log(e(t + 2.8)) <= 1 + log t + 2.8/T for t >= T
    return kTailFactor * ((1.0 + 2.8 / T) * log_moment + log2_moment);
}

double round_up_3(double x) { return std::ceil(x * 1000.0 - 1e-9) / 1000.0; }

std::pair<double, double> rounded_bound_constants(const JValues& j) {
    for (double v : j.J)
        if (!std::isfinite(v)) throw InvalidArgument("rounded_bound_constants: non-finite J value");
    const double a = round_up_3(j.J1()) + round_up_3(j.J3());
    const double b = round_up_3(j.J2()) + round_up_3(j.J4());
    return {std::round(a * 1000.0) / 1000.0, std::round(b * 1000.0) / 1000.0};
}

double partial_fraction_residual(std::complex<double> s) {
    if (s == 0.0 || s == -2.0 || s == -3.0)
        throw InvalidArgument("partial_fraction_residual: s is a pole");
    const std::complex<double> lhs = 1.0 / (s * (s + 2.0) * (s + 3.0));
    const std::complex<double> rhs = 1.0 / (6.0 * s) - 1.0 / (2.0 * (s + 2.0)) + 1.0 / (3.0 * (s + 3.0));
    return std::abs(lhs - rhs);
}

nlohmann::json to_json(const JValues& j, const QuadratureSpec& spec) {
    return {{"J1", j.J[0]},
            {"J2", j.J[1]},
            {"J3", j.J[2]},
            {"J4", j.J[3]},
            {"err1", j.error_estimates[0]},
            {"err2", j.error_estimates[1]},
            {"err3", j.error_estimates[2]},
            {"err4", j.error_estimates[3]},
            {"quadrature",
             {{"abs_tolerance", spec.abs_tolerance},
              {"max_depth", spec.max_depth},
              {"tail_cutoff", spec.tail_cutoff}}}};
}

}  // namespace siegel
