#include <doctest.h>

#include <cmath>
#include <numeric>
#include <omp.h>

#include "oracles.hpp"
#include "siegel/common.hpp"
#include "siegel/quad_arith.hpp"

using namespace siegel;

namespace {

// 20 fundamental discriminants mixing both residue classes, ramified 2, and
// the largest one with class number 98.
const std::vector<std::int64_t> kSample = {3,   4,   7,   8,   11,  15,  19,  20,  23,  24,
                                           31,  35,  40,  43,  52,  163, 408, 1155, 9240, 2383747};

std::int64_t first_with_chi(std::int64_t d, int value) {
    const KroneckerChar chi{FundamentalDiscriminant(d)};
    for (std::int64_t p = 3;; p += 2)
        if (oracle::is_prime(p) && chi(p) == value) return p;
}

}  // namespace

TEST_CASE("fundamental discriminants") {
    CHECK(is_fundamental(-3));
    CHECK_FALSE(is_fundamental(-12));
    CHECK(is_fundamental(-2383747));
    CHECK_THROWS_AS(is_fundamental(0), InvalidArgument);
    CHECK_THROWS_AS(is_fundamental(5), InvalidArgument);
    for (std::int64_t d = 1; d <= 5000; ++d) REQUIRE(is_fundamental(-d) == (d >= 3 && oracle::fundamental(d)));
    for (std::int64_t d : kSample) CHECK_NOTHROW(FundamentalDiscriminant{d});
    CHECK_THROWS_AS(FundamentalDiscriminant{12}, InvalidArgument);
    CHECK(next_fundamental(300000001).d() == 300000003);
}

TEST_CASE("Kronecker symbol") {
    CHECK(kronecker(-4, 2) == 0);
    CHECK(kronecker(-3, 2) == -1);
    CHECK(kronecker(-7, 2) == 1);
    CHECK(kronecker(-3, -1) == -1);
    CHECK_THROWS_AS(jacobi(3, 4), InvalidArgument);
    for (std::int64_t d = 3; d <= 300; ++d) {
        if (!oracle::fundamental(d)) continue;
        for (std::int64_t n = 1; n <= 1000; ++n) REQUIRE(kronecker(-d, n) == oracle::kronecker(-d, n));
    }
}

TEST_CASE("character axioms") {
    for (std::int64_t d : {3, 4, 23, 40, 163, 1155}) {
        const KroneckerChar chi{FundamentalDiscriminant(d)};
        CHECK(chi(-1) == -1);
        for (std::int64_t n = 1; n <= 1000; ++n) {
            REQUIRE(chi(n + d) == chi(n));
            REQUIRE((chi(n) == 0) == (std::gcd(n, d) > 1));
            for (std::int64_t m = 1; m <= 1000; m += 7) REQUIRE(chi(m * n) == chi(m) * chi(n));
        }
    }
}

TEST_CASE("nu on prime powers") {
    const FundamentalDiscriminant disc(23);
    const NuOracle o(disc);
    CHECK(nu(o, 1) == 1);
    const auto split = static_cast<std::uint64_t>(first_with_chi(23, 1));
    const auto inert = static_cast<std::uint64_t>(first_with_chi(23, -1));
    CHECK(nu(o, split) == 2);
    CHECK(nu(o, split * split * split) == 2);
    CHECK(nu(o, inert) == 0);
    CHECK(nu(o, inert * inert * inert) == 0);
    CHECK(nu(o, inert * inert) == 0);
    CHECK(nu(o, 23) == 1);
    CHECK(nu(o, 23 * 23) == 0);
    CHECK_THROWS_AS(nu(o, 0), InvalidArgument);
}

TEST_CASE("brute-force congruence count") {
    CHECK(nu_bruteforce(FundamentalDiscriminant(3), 1) == 1);
    CHECK(nu_bruteforce(FundamentalDiscriminant(4), 2) == 1);
    for (std::int64_t d : {3, 23, 40, 2383747})
        for (std::int64_t a = 1; a <= 300; ++a)
            REQUIRE(nu_bruteforce(FundamentalDiscriminant(d), a) ==
                    static_cast<std::uint32_t>(oracle::congruence_count(d, a)));
}

TEST_CASE("nu formula equals the congruence count for a <= 2000") {
    for (std::int64_t d : kSample) {
        CAPTURE(d);
        const FundamentalDiscriminant disc(d);
        const NuOracle o(disc);
        const auto table = o.table(2000);
        for (std::uint64_t a = 1; a <= 2000; ++a) {
            REQUIRE(table[a] == nu_bruteforce(disc, a));
            REQUIRE(o.nu(a) == table[a]);
        }
        CHECK(check_nu_table(disc, 2000).passed);
    }
}

TEST_CASE("nu is multiplicative and bounded by 2^w") {
    for (std::int64_t d : kSample) {
        const auto t = NuOracle(FundamentalDiscriminant(d)).table(250000);
        for (std::uint64_t m = 1; m <= 500; ++m)
            for (std::uint64_t n = 1; n <= 500; ++n)
                if (std::gcd(m, n) == 1) REQUIRE(t[m * n] == t[m] * t[n]);
    }
    const auto t = NuOracle(FundamentalDiscriminant(1155)).table(100000);
    for (std::uint64_t a = 1; a <= 100000; ++a) REQUIRE(t[a] <= (1u << omega(a)));
    for (std::uint64_t a = 1; a <= 2000; ++a) REQUIRE(omega(a) == oracle::omega(a));
}

TEST_CASE("concurrent nu lookups") {
    const NuOracle o(FundamentalDiscriminant(2383747));
    const auto t = o.table(20000);
    std::vector<std::uint32_t> got(20001, 0);
    omp_set_num_threads(4);
#pragma omp parallel for schedule(dynamic, 7)
    for (int a = 1; a <= 20000; ++a) got[static_cast<std::size_t>(a)] = o.nu(static_cast<std::uint64_t>(a));
    omp_set_num_threads(omp_get_num_procs());
    for (std::size_t a = 1; a <= 20000; ++a) REQUIRE(got[a] == t[a]);
}

TEST_CASE("reduced forms") {
    const auto h3 = reduced_forms(FundamentalDiscriminant(3));
    CHECK(h3.class_number() == 1);
    CHECK(h3.forms == std::vector<QuadForm>{{1, 1, 1}});
    const auto h23 = reduced_forms(FundamentalDiscriminant(23));
    CHECK(h23.forms == std::vector<QuadForm>{{1, 1, 6}, {2, -1, 3}, {2, 1, 3}});
    CHECK(reduced_forms(FundamentalDiscriminant(2383747)).class_number() == 98);
    CHECK(reduced_forms(FundamentalDiscriminant(4)).class_number() == 1);
    CHECK(reduced_forms(FundamentalDiscriminant(163)).class_number() == 1);

    const auto j = to_json(h23);
    CHECK(j["d"] == 23);
    CHECK(j["h"] == 3);
    CHECK(j["forms"][1] == nlohmann::json::array({2, -1, 3}));
}

TEST_CASE("reduced forms: invariants, serial reference, analytic oracle") {
    for (std::int64_t d = 3; d <= 30000; ++d) {
        if (!oracle::fundamental(d)) continue;
        const FundamentalDiscriminant disc(d);
        const auto set = reduced_forms(disc);
        if (d % 7 == 0 || d < 2000) REQUIRE(set.forms == serial::reduced_forms(disc).forms);
        for (std::size_t i = 0; i < set.forms.size(); ++i) {
            const auto& f = set.forms[i];
            REQUIRE(is_reduced(f));
            REQUIRE(f.b * f.b - 4 * f.a * f.c == -d);
            if (i > 0) REQUIRE(set.forms[i - 1] < f);
        }
        if (d > 4 && d <= 1500)
            REQUIRE(static_cast<std::int64_t>(set.class_number()) == oracle::class_number(d));
    }
}

TEST_CASE("class number formula against the character series") {
    for (std::int64_t d = 3; d <= 10000; ++d) {
        if (!oracle::fundamental(d)) continue;
        const auto c = class_number_formula_check(FundamentalDiscriminant(d), 50000);
        CAPTURE(d);
        REQUIRE(c.consistent);
    }
    const auto big = class_number_formula_check(FundamentalDiscriminant(2383747));
    CHECK(big.h == 98);
    CHECK(big.consistent);
}

TEST_CASE("norm sums") {
    const NuOracle o3(FundamentalDiscriminant(3));
    CHECK(nu_reciprocal_sum(o3, 1) == 1.0);
    CHECK(ideal_norm_reciprocal_sum(o3, 1) == 1.0);
    double brute = 0.0;
    for (std::int64_t a = 1; a <= 10; ++a) brute += double(oracle::congruence_count(3, a)) / double(a);
    CHECK(nu_reciprocal_sum(o3, 10) == doctest::Approx(brute).epsilon(1e-15));
    CHECK_THROWS_AS(nu_reciprocal_sum(o3, 0.5), InvalidArgument);

    for (std::int64_t d : kSample) {
        const NuOracle o{FundamentalDiscriminant(d)};
        for (double x : {2.0, 17.5, 1000.0, 30000.0})
            REQUIRE(ideal_norm_reciprocal_sum(o, x) <= kPi * kPi / 6.0 * nu_reciprocal_sum(o, x));
    }

    const NuOracle o23(FundamentalDiscriminant(23));
    double via_r = 0.0;
    for (std::int64_t n = 1; n <= 10000; ++n) via_r += double(oracle::r(-23, n)) / double(n);
    CHECK(ideal_norm_reciprocal_sum(o23, 10000) == doctest::Approx(via_r).epsilon(1e-13));
}

TEST_CASE("Dirichlet coefficients of the Dedekind zeta function") {
    const FundamentalDiscriminant d23(23);
    CHECK(ideal_count_coefficient(d23, 1) == 1);
    CHECK(ideal_count_coefficient(d23, static_cast<std::uint64_t>(first_with_chi(23, -1))) == 0);
    for (std::int64_t n = 1; n <= 3000; ++n)
        REQUIRE(ideal_count_coefficient(d23, static_cast<std::uint64_t>(n)) == static_cast<std::uint32_t>(oracle::r(-23, n)));
    for (std::int64_t d : kSample) CHECK(check_coefficient_identity(FundamentalDiscriminant(d), 10000).passed);
}

TEST_CASE("short norm sum bound") {
    const auto first = next_fundamental(kWatkinsBound + 1);
    const auto r = check_lemma_h(first);
    CHECK(r.passed);
    CHECK(r.checks.size() == 3);
    for (const auto& c : r.checks) CHECK(c.min_slack > 0);
    CHECK_THROWS_AS(check_lemma_h(FundamentalDiscriminant(23)), InvalidArgument);
    CHECK_THROWS_AS(check_lemma_h(FundamentalDiscriminant(2383747)), InvalidArgument);

    std::uint64_t s = 0;
    double sr = 0.0;
    for (std::uint64_t n = 1; n <= 34; ++n) {
        s += 1u << oracle::omega(n);
        sr += double(1u << oracle::omega(n)) / double(n);
    }
    CHECK(s == 101);
    CHECK(sr <= 9.161);
}

TEST_CASE("lemma sample") {
    const auto a = lemma_h_sample(kDefaultSampleSeed);
    const auto b = lemma_h_sample(kDefaultSampleSeed);
    CHECK(a == b);
    REQUIRE(a.size() == 20);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].d() > kWatkinsBound);
        CHECK(a[i].d() < 1000000000);
        for (std::size_t j = 0; j < i; ++j) CHECK(a[i].d() != a[j].d());
    }
    std::int64_t next = kWatkinsBound + 1;
    for (std::size_t i = 0; i < 10; ++i) {
        CHECK(a[i] == next_fundamental(next));
        next = a[i].d() + 1;
    }
    CHECK(lemma_h_sample(1) != a);
}
