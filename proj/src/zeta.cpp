#include "siegel/zeta.hpp"

#include <array>
#include <cmath>
#include <string>

#include "siegel/common.hpp"

namespace siegel {

namespace {

// B_{2k} / (2k)! for k = 1..7.
constexpr std::array<double, 7> kBernoulliOverFactorial{
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
};

}  // namespace

ZetaEvaluator::ZetaEvaluator(std::uint64_t min_terms, double terms_per_unit_t, int bernoulli_order)
    : min_terms_(min_terms), terms_per_unit_t_(terms_per_unit_t), bernoulli_order_(bernoulli_order) {
    if (min_terms_ < 2) throw InvalidArgument("ZetaEvaluator: min_terms must be >= 2");
    if (bernoulli_order_ < 2 || bernoulli_order_ > 14 || bernoulli_order_ % 2 != 0)
        throw InvalidArgument("ZetaEvaluator: bernoulli_order must be even in [2, 14]");
}

std::uint64_t ZetaEvaluator::truncation_terms(double t) const {
    const auto scaled = static_cast<std::uint64_t>(std::ceil(terms_per_unit_t_ * std::fabs(t)));
    return std::max(min_terms_, scaled);
}

std::complex<double> ZetaEvaluator::operator()(std::complex<double> s) const {
    if (s == std::complex<double>(1.0, 0.0)) throw PoleError("zeta: pole at s = 1");
    if (!(s.real() >= 0.0) || !(std::fabs(s.imag()) <= kMaxImag))
        throw UnsupportedDomain("zeta: s outside Re(s) >= 0, |Im(s)| <= 1e4");

    const std::uint64_t n_terms = truncation_terms(s.imag());
    // Direct part, smallest terms first.
    std::complex<double> direct = 0.0;
    for (std::uint64_t n = n_terms - 1; n >= 1; --n)
        direct += std::exp(-s * std::log(static_cast<double>(n)));

    const double nd = static_cast<double>(n_terms);
    const std::complex<double> n_pow = std::exp(-s * std::log(nd));  // N^{-s}
    std::complex<double> tail = n_pow * nd / (s - 1.0) + 0.5 * n_pow;

    // B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
    std::complex<double> rising = s;
    std::complex<double> power = n_pow / nd;
    const int k_max = bernoulli_order_ / 2;
    for (int k = 1; k <= k_max; ++k) {
        tail += kBernoulliOverFactorial[static_cast<std::size_t>(k - 1)] * rising * power;
        rising *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
        power /= nd * nd;
    }
    return direct + tail;
}

std::complex<double> zeta(std::complex<double> s, const ZetaEvaluator& evaluator) { return evaluator(s); }

double abs_t_zeta_one_minus_it(double t, const ZetaEvaluator& evaluator) {
    if (std::fabs(t) < kLaurentRadius) {
        // t zeta(1 - it) = i + g0 t + i g1 t^2 + O(t^3)
        const double re = kStieltjes0 * t;
        const double im = 1.0 + kStieltjes1 * t * t;
        return std::hypot(re, im);
    }
    return std::abs(t * evaluator({1.0, -t}));
}

}  // namespace siegel
