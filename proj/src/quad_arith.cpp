#include "siegel/quad_arith.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "siegel/common.hpp"
#include "siegel/sieve.hpp"

namespace siegel {

bool is_squarefree(std::uint64_t n) {
    if (n == 0) return false;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p != 0) continue;
        n /= p;
        if (n % p == 0) return false;
    }
    return true;
}

bool is_fundamental(std::int64_t D) {
    if (D >= 0) throw InvalidArgument("is_fundamental: D must be negative, got " + std::to_string(D));
    const auto d = static_cast<std::uint64_t>(-D);
    if (d < 3) return false;
    if (d % 4 == 3) return is_squarefree(d);
    if (d % 4 == 0) {
        const std::uint64_t m = d / 4;
        return (m % 4 == 1 || m % 4 == 2) && is_squarefree(m);
    }
    return false;
}

FundamentalDiscriminant::FundamentalDiscriminant(std::int64_t d) : d_(d) {
    if (d < 3 || !is_fundamental(-d))
        throw InvalidArgument("-" + std::to_string(d) + " is not a fundamental discriminant");
}

FundamentalDiscriminant next_fundamental(std::int64_t from) {
    std::int64_t d = std::max<std::int64_t>(from, 3);
    while (!is_fundamental(-d)) ++d;
    return FundamentalDiscriminant(d);
}

int jacobi(std::int64_t a, std::int64_t n) {
    if (n <= 0 || n % 2 == 0) throw InvalidArgument("jacobi: n must be odd and positive");
    std::uint64_t x = static_cast<std::uint64_t>(((a % n) + n) % n);
    auto y = static_cast<std::uint64_t>(n);
    int result = 1;
    while (x != 0) {
        while (x % 2 == 0) {
            x /= 2;
            const std::uint64_t r = y % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(x, y);
        if (x % 4 == 3 && y % 4 == 3) result = -result;
        x %= y;
    }
    return y == 1 ? result : 0;
}

int kronecker(std::int64_t D, std::int64_t n) {
    if (n == 0) return (D == 1 || D == -1) ? 1 : 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (D < 0) result = -1;
    }
    int twos = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++twos;
    }
    if (twos > 0) {
        if (D % 2 == 0) return 0;
        const std::int64_t r = ((D % 8) + 8) % 8;
        if ((r == 3 || r == 5) && (twos % 2 == 1)) result = -result;
    }
    if (n == 1) return result;
    return result * jacobi(D, n);
}

int omega(std::uint64_t n) {
    int w = 0;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p != 0) continue;
        ++w;
        while (n % p == 0) n /= p;
    }
    return w + (n > 1 ? 1 : 0);
}

// ---------------------------------------------------------------------------
// nu

std::uint32_t NuOracle::nu_prime_power(std::uint64_t p, int alpha) const {
    const int c = chi_(static_cast<std::int64_t>(p));
    if (c == 0) return alpha == 1 ? 1 : 0;
    return static_cast<std::uint32_t>(1 + c);
}

std::uint32_t NuOracle::nu_uncached(std::uint64_t a) const {
    std::uint32_t result = 1;
    for (std::uint64_t p = 2; p * p <= a; p += (p == 2 ? 1 : 2)) {
        if (a % p != 0) continue;
        int alpha = 0;
        while (a % p == 0) {
            a /= p;
            ++alpha;
        }
        result *= nu_prime_power(p, alpha);
        if (result == 0) return 0;
    }
    if (a > 1) result *= nu_prime_power(a, 1);
    return result;
}

std::uint32_t NuOracle::nu(std::uint64_t a) const {
    if (a == 0) throw InvalidArgument("nu: a must be >= 1");
    {
        std::lock_guard lock(mu_);
        if (auto it = cache_.find(a); it != cache_.end()) return it->second;
    }
    const std::uint32_t v = nu_uncached(a);
    std::lock_guard lock(mu_);
    cache_.emplace(a, v);
    return v;
}

std::vector<std::uint32_t> NuOracle::table(std::uint64_t n) const {
    std::vector<std::uint32_t> nu(n + 1, 0);
    if (n == 0) return nu;
    nu[1] = 1;
    const auto spf = sieve::smallest_prime_factors(static_cast<std::uint32_t>(n));
    for (std::uint64_t a = 2; a <= n; ++a) {
        const std::uint64_t p = spf[a];
        std::uint64_t m = a;
        int alpha = 0;
        while (m % p == 0) {
            m /= p;
            ++alpha;
        }
        nu[a] = nu[m] * nu_prime_power(p, alpha);
    }
    return nu;
}

std::uint32_t nu(const NuOracle& oracle, std::uint64_t a) { return oracle.nu(a); }

std::uint32_t nu_bruteforce(FundamentalDiscriminant disc, std::uint64_t a) {
    if (a == 0) throw InvalidArgument("nu_bruteforce: a must be >= 1");
    const auto ia = static_cast<std::int64_t>(a);
    const std::int64_t mod = 4 * ia;
    const std::int64_t target = ((-disc.d()) % mod + mod) % mod;
    std::uint32_t count = 0;
    for (std::int64_t b = -ia + 1; b <= ia; ++b)
        if ((b * b) % mod == target) ++count;
    return count;
}

// ---------------------------------------------------------------------------
// reduced forms

bool is_reduced(const QuadForm& f) {
    return (-f.a < f.b && f.b <= f.a && f.a < f.c) || (0 <= f.b && f.b <= f.a && f.a == f.c);
}

ReducedFormSet reduced_forms(FundamentalDiscriminant disc) {
    const std::int64_t d = disc.d();
    const auto bmax = static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(d / 3)));
    const std::int64_t b0 = d % 2;  // b has the parity of d
    const std::int64_t nb = bmax < b0 ? 0 : (bmax - b0) / 2 + 1;
    std::vector<std::vector<QuadForm>> per_b(static_cast<std::size_t>(nb));
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < nb; ++i) {
        const std::int64_t b = b0 + 2 * i;
        const std::int64_t m = (b * b + d) / 4;  // = a * c
        auto& out = per_b[static_cast<std::size_t>(i)];
        const std::int64_t amax = static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(m)));
        for (std::int64_t a = std::max<std::int64_t>(b, 1); a <= amax; ++a) {
            if (m % a != 0) continue;
            const std::int64_t c = m / a;
            out.push_back({a, b, c});
            if (b > 0 && b < a && a < c) out.push_back({a, -b, c});
        }
    }
    ReducedFormSet set{disc, {}};
    for (auto& v : per_b) set.forms.insert(set.forms.end(), v.begin(), v.end());
    std::sort(set.forms.begin(), set.forms.end());
    return set;
}

namespace serial {

ReducedFormSet reduced_forms(FundamentalDiscriminant disc) {
    const std::int64_t d = disc.d();
    const auto amax = static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(d / 3)));
    ReducedFormSet set{disc, {}};
    for (std::int64_t a = 1; a <= amax; ++a) {
        for (std::int64_t b = -a + 1; b <= a; ++b) {
            const std::int64_t num = b * b + d;
            if (num % (4 * a) != 0) continue;
            const QuadForm f{a, b, num / (4 * a)};
            if (is_reduced(f)) set.forms.push_back(f);
        }
    }
    return set;
}

}  // namespace serial

nlohmann::json to_json(const ReducedFormSet& set) {
    auto forms = nlohmann::json::array();
    for (const auto& f : set.forms) forms.push_back({f.a, f.b, f.c});
    return {{"d", set.discriminant.d()}, {"h", set.class_number()}, {"forms", forms}};
}

// ---------------------------------------------------------------------------
// norm sums

namespace {

std::uint64_t floor_arg(double x, const char* what) {
    if (!(x >= 1.0)) throw InvalidArgument(std::string(what) + ": x must be >= 1");
    return static_cast<std::uint64_t>(std::floor(x));
}

std::vector<double> nu_over_a_prefix(const NuOracle& oracle, std::uint64_t n) {
    const auto nu = oracle.table(n);
    std::vector<double> prefix(n + 1, 0.0);
    CompensatedSum acc;
    for (std::uint64_t a = 1; a <= n; ++a) {
        acc.add(static_cast<double>(nu[a]) / static_cast<double>(a));
        prefix[a] = acc.value();
    }
    return prefix;
}

}  // namespace

double nu_reciprocal_sum(const NuOracle& oracle, double x) {
    const std::uint64_t n = floor_arg(x, "nu_reciprocal_sum");
    return nu_over_a_prefix(oracle, n)[n];
}

double ideal_norm_reciprocal_sum(const NuOracle& oracle, double x) {
    const std::uint64_t n = floor_arg(x, "ideal_norm_reciprocal_sum");
    const auto prefix = nu_over_a_prefix(oracle, n);
    CompensatedSum acc;
    for (std::uint64_t u = 1; u * u <= n; ++u) {
        const double u2 = static_cast<double>(u * u);
        acc.add(prefix[n / (u * u)] / u2);
    }
    return acc.value();
}

std::uint32_t ideal_count_coefficient(FundamentalDiscriminant disc, std::uint64_t n) {
    if (n == 0) throw InvalidArgument("ideal_count_coefficient: n must be >= 1");
    const KroneckerChar chi(disc);
    std::int64_t r = 0;
    for (std::uint64_t m = 1; m * m <= n; ++m) {
        if (n % m != 0) continue;
        r += chi(static_cast<std::int64_t>(m));
        if (m * m != n) r += chi(static_cast<std::int64_t>(n / m));
    }
    return static_cast<std::uint32_t>(r);
}

namespace {

VerificationReport exact_report(const char* claim, std::uint64_t n,
                                const std::vector<std::int64_t>& lhs, const std::vector<std::int64_t>& rhs) {
    VerificationReport r;
    r.range_lo = 1;
    r.range_hi = static_cast<double>(n);
    CheckSummary check{claim, 1.0, static_cast<double>(n)};
    check.min_slack = 0.0;
    check.argmin = 1.0;
    for (std::uint64_t a = 1; a <= n; ++a) {
        ++check.evaluated;
        if (lhs[a] != rhs[a])
            r.failures.push_back({static_cast<double>(a), claim, -std::fabs(static_cast<double>(lhs[a] - rhs[a]))});
    }
    r.checks.push_back(check);
    r.finalize();
    return r;
}

}  // namespace

VerificationReport check_nu_table(FundamentalDiscriminant disc, std::uint64_t max_a) {
    if (max_a < 1) throw InvalidArgument("check_nu_table: max_a must be >= 1");
    const auto table = NuOracle(disc).table(max_a);
    std::vector<std::int64_t> lhs(max_a + 1, 0), rhs(max_a + 1, 0);
    const auto n = static_cast<std::int64_t>(max_a);
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t a = 1; a <= n; ++a) {
        lhs[static_cast<std::size_t>(a)] = table[static_cast<std::size_t>(a)];
        rhs[static_cast<std::size_t>(a)] = nu_bruteforce(disc, static_cast<std::uint64_t>(a));
    }
    return exact_report("nu_formula", max_a, lhs, rhs);
}

VerificationReport check_coefficient_identity(FundamentalDiscriminant disc, std::uint64_t max_n) {
    if (max_n < 1) throw InvalidArgument("check_coefficient_identity: max_n must be >= 1");
    const auto nu = NuOracle(disc).table(max_n);
    std::vector<std::int64_t> lhs(max_n + 1, 0), rhs(max_n + 1, 0);
    for (std::uint64_t u = 1; u * u <= max_n; ++u)
        for (std::uint64_t a = 1; u * u * a <= max_n; ++a) lhs[u * u * a] += nu[a];
    for (std::uint64_t n = 1; n <= max_n; ++n) rhs[n] = ideal_count_coefficient(disc, n);
    return exact_report("dedekind_coefficient", max_n, lhs, rhs);
}

// ---------------------------------------------------------------------------
// lemma on h(-d)

VerificationReport check_lemma_h(FundamentalDiscriminant disc) {
    const std::int64_t d = disc.d();
    if (d <= kWatkinsBound)
        throw InvalidArgument("check_lemma_h: requires d > 300000000, got d = " + std::to_string(d));
    const auto h = static_cast<std::int64_t>(reduced_forms(disc).class_number());
    if (h < 101)
        throw InvalidArgument("check_lemma_h: requires h(-d) >= 101, got h(-" + std::to_string(d) +
                              ") = " + std::to_string(h));

    // a <= sqrt(d)/2  <=>  4 a^2 <= d
    const std::uint64_t amax = isqrt(static_cast<std::uint64_t>(d) / 4);
    const NuOracle oracle(disc);
    const auto nu = oracle.table(amax);
    std::int64_t count = 0;
    CompensatedSum recip;
    for (std::uint64_t a = 1; a <= amax; ++a) {
        count += nu[a];
        recip.add(static_cast<double>(nu[a]) / static_cast<double>(a));
    }

    VerificationReport r;
    r.range_lo = 1;
    r.range_hi = static_cast<double>(amax);
    const double hd = static_cast<double>(h);
    auto add = [&](const char* claim, double slack) {
        r.checks.push_back({claim, 1.0, static_cast<double>(amax), 1, slack, static_cast<double>(d)});
        if (slack < 0.0) r.failures.push_back({static_cast<double>(d), claim, slack});
    };
    add("lemma_h_count", static_cast<double>(h - count));
    add("lemma_h_reciprocal", hd / 11.0 - recip.value());
    add("lemma_h_chain", 9.161 + (hd - 101.0) / 35.0 - recip.value());
    if (4 * amax * amax == static_cast<std::uint64_t>(d))
        r.failures.push_back({static_cast<double>(d), "lemma_h_boundary", 0.0});
    r.finalize();
    return r;
}

std::vector<FundamentalDiscriminant> lemma_h_sample(std::uint64_t seed) {
    std::vector<FundamentalDiscriminant> out;
    std::int64_t next = kWatkinsBound + 1;
    for (int i = 0; i < 10; ++i) {
        out.push_back(next_fundamental(next));
        next = out.back().d() + 1;
    }
    std::mt19937_64 gen(seed);
    constexpr std::uint64_t kSpan = 1000000000ULL - kWatkinsBound - 1000;
    while (out.size() < 20) {
        const auto start = static_cast<std::int64_t>(kWatkinsBound + 1 + gen() % kSpan);
        const auto fd = next_fundamental(start);
        if (std::find(out.begin(), out.end(), fd) == out.end()) out.push_back(fd);
    }
    return out;
}

ClassNumberFormulaCheck class_number_formula_check(FundamentalDiscriminant disc, std::uint64_t terms) {
    const std::int64_t d = disc.d();
    ClassNumberFormulaCheck out;
    out.d = d;
    out.h = reduced_forms(disc).class_number();
    const double w = d == 3 ? 6.0 : (d == 4 ? 4.0 : 2.0);
    out.formula = 2.0 * kPi * static_cast<double>(out.h) / (w * std::sqrt(static_cast<double>(d)));

    std::vector<double> chi(static_cast<std::size_t>(d));
    std::int64_t partial = 0, max_partial = 0;
    for (std::int64_t r = 0; r < d; ++r) {
        chi[static_cast<std::size_t>(r)] = kronecker(-d, r);
        partial += static_cast<std::int64_t>(chi[static_cast<std::size_t>(r)]);
        max_partial = std::max(max_partial, std::abs(partial));
    }
    double sum = 0.0;
    const auto ud = static_cast<std::uint64_t>(d);
    for (std::uint64_t base = 0; base <= terms; base += ud) {
        const std::uint64_t top = std::min(ud, terms + 1 - base);
        for (std::uint64_t r = (base == 0 ? 1 : 0); r < top; ++r)
            sum += chi[r] / static_cast<double>(base + r);
    }
    out.series = sum;
    out.tail_bound = 2.0 * static_cast<double>(max_partial) / static_cast<double>(terms + 1);
    out.consistent = std::fabs(out.formula - out.series) <= out.tail_bound + 1e-9;
    return out;
}

}  // namespace siegel
