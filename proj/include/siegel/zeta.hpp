#pragma once

#include <complex>
#include <cstdint>

namespace siegel {

/// Riemann zeta by Euler-Maclaurin summation. Validated for Re(s) >= 0 and
/// |Im(s)| <= 1e4; stateless and thread-safe.
class ZetaEvaluator {
public:
    static constexpr double kMaxImag = 1e4;

    ZetaEvaluator() = default;
    ZetaEvaluator(std::uint64_t min_terms, double terms_per_unit_t, int bernoulli_order);

    /// Throws PoleError at s = 1 and UnsupportedDomain outside the envelope.
    std::complex<double> operator()(std::complex<double> s) const;

    /// N = max(min_terms, ceil(terms_per_unit_t * |t|)).
    std::uint64_t truncation_terms(double t) const;
    int bernoulli_order() const noexcept { return bernoulli_order_; }

private:
    std::uint64_t min_terms_ = 50;
    double terms_per_unit_t_ = 10.0;
    int bernoulli_order_ = 12;
};

std::complex<double> zeta(std::complex<double> s, const ZetaEvaluator& evaluator = {});

/// Stieltjes constants used for the Laurent expansion at s = 1.
inline constexpr double kStieltjes0 = 0.57721566490153286060651209008240243;
inline constexpr double kStieltjes1 = -0.07281584548367672486058637587490131;

/// |t * zeta(1 - i t)|, switching to the two-term Laurent expansion for |t| < 1e-2.
double abs_t_zeta_one_minus_it(double t, const ZetaEvaluator& evaluator = {});

inline constexpr double kLaurentRadius = 1e-2;

}  // namespace siegel
