#include "siegel/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>

namespace siegel {

namespace {

// Kronrod abscissae on [0, 1] (odd indices are the Gauss-7 nodes) and weights.
constexpr std::array<double, 8> kNodes{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> kKronrodWeights{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
constexpr std::array<double, 4> kGaussWeights{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct ByError {
    bool operator()(const GaussKronrodPanel& a, const GaussKronrodPanel& b) const {
        if (a.error != b.error) return a.error < b.error;
        return a.lo > b.lo;
    }
};

}  // namespace

GaussKronrodPanel gauss_kronrod_15(const std::function<double(double)>& f, double lo, double hi, int depth) {
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = f(mid);
    double kronrod = fc * kKronrodWeights[7];
    double gauss = fc * kGaussWeights[3];
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kNodes[j];
        const double pair = f(mid - dx) + f(mid + dx);
        kronrod += kKronrodWeights[j] * pair;
        if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
    }
    kronrod *= half;
    gauss *= half;
    return {lo, hi, kronrod, std::fabs(kronrod - gauss), depth};
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                                    double abs_tolerance, int max_depth) {
    if (!(abs_tolerance > 0.0)) throw InvalidArgument("integrate_adaptive: tolerance must be positive");
    if (!(hi > lo)) throw InvalidArgument("integrate_adaptive: empty interval");

    std::priority_queue<GaussKronrodPanel, std::vector<GaussKronrodPanel>, ByError> open;
    std::vector<GaussKronrodPanel> frozen;  // at max depth; cannot be refined
    std::size_t evaluations = 15;
    open.push(gauss_kronrod_15(f, lo, hi, 0));
    double total_error = open.top().error;

    while (total_error > abs_tolerance && !open.empty()) {
        const GaussKronrodPanel worst = open.top();
        open.pop();
        if (worst.depth >= max_depth) {
            frozen.push_back(worst);
            continue;
        }
        const double mid = 0.5 * (worst.lo + worst.hi);
        auto left = gauss_kronrod_15(f, worst.lo, mid, worst.depth + 1);
        auto right = gauss_kronrod_15(f, mid, worst.hi, worst.depth + 1);
        evaluations += 30;
        total_error += left.error + right.error - worst.error;
        open.push(left);
        open.push(right);
    }

    std::vector<GaussKronrodPanel> all = std::move(frozen);
    while (!open.empty()) {
        all.push_back(open.top());
        open.pop();
    }
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
    QuadratureResult res;
    CompensatedSum value, error;
    for (const auto& p : all) {
        value += p.kronrod;
        error += p.error;
    }
    res.value = value.value();
    res.error = error.value();
    res.intervals = all.size();
    res.evaluations = evaluations;
    if (res.error > abs_tolerance)
        throw ConvergenceFailure("integrate_adaptive: error " + std::to_string(res.error) +
                                     " above tolerance " + std::to_string(abs_tolerance) +
                                     " at depth limit " + std::to_string(max_depth),
                                 res);
    return res;
}

}  // namespace siegel
