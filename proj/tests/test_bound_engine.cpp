#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "siegel/bound_engine.hpp"
#include "siegel/common.hpp"

using namespace siegel;

namespace {

const PrimePowerTable& table() {
    static const PrimePowerTable t = PrimePowerTable::build(2300000);
    return t;
}

const Theorem1Certificate& certificate() {
    static const Theorem1Certificate c = theorem1_certificate(table());
    return c;
}

double round3(double x) { return std::round(x * 1000.0) / 1000.0; }

}  // namespace

TEST_CASE("sigma") {
    CHECK(sigma(table(), 16) == doctest::Approx(3.78525).epsilon(1e-5));
    CHECK(sigma(table(), 16) < 3.786);
    CHECK(sigma(table(), 2) == 1.0);
    CHECK_THROWS_AS(sigma(table(), 1.5), InvalidArgument);
    CHECK_THROWS_AS(sigma(PrimePowerTable::build(100), 200), InvalidArgument);
    for (double t = 24.66; t <= 2e6; t *= 1.01) REQUIRE(sigma(table(), t) <= 2.0 * std::log(std::log(t)) + 2.07);
}

TEST_CASE("k0 and its corners") {
    CHECK(k0(45.0, 16) == 8);
    CHECK(k0(46.0, 16) == 9);
    CHECK(k0_corner(8, 16) == doctest::Approx(16.0 * std::log(16.0) + std::log(4.0)));
    CHECK(std::fabs(k0_corner(8, 16) - 45.747) < 1e-3);
    CHECK_THROWS_AS(k0(1.0, 16), InvalidArgument);
    CHECK_THROWS_AS(k0(45.0, 1.0), InvalidArgument);
}

TEST_CASE("case 1") {
    CHECK(case1_bound(42) == doctest::Approx(6.662).epsilon(1e-12));
    CHECK(case1_bound(42) > 6.6);
    CHECK(case1_bound(std::log(3e8)) == doctest::Approx(14.328).epsilon(1e-4));
    CHECK_THROWS_AS(case1_bound(42.5), InvalidArgument);
    CHECK_THROWS_AS(case1_bound(19.0), InvalidArgument);
    const BoundConstants c;
    CHECK(round3(396.0 / (kPi * kPi) * c.pi_frac) == doctest::Approx(c.numerator_a).epsilon(1e-12));
    CHECK(round3(396.0 / (kPi * kPi) * c.j_coeff * c.assumption_const / c.h_min) ==
          doctest::Approx(c.numerator_b).epsilon(1e-12));
}

TEST_CASE("case 2") {
    const double corner = k0_corner(8, 16);
    CHECK(case2_bound(std::nextafter(corner, 0.0), table()) > 6.53);
    CHECK(case2_bound(100, table()) > 6.5);
    CHECK_THROWS_AS(case2_bound(42, table()), InvalidArgument);
    CHECK_THROWS_AS(case2_bound(100.5, table()), InvalidArgument);
    const BoundConstants c;
    for (std::int64_t k = 11; k < 40; ++k) {
        const double kd = double(k);
        REQUIRE(c.case2_tail_coeff * (1 + kd) / (1 + kd - 3.786) / std::sqrt(kd) * std::pow(10.3 / kd, kd) < 1e-2);
    }
    BoundConstants tight;
    tight.case2_sigma = 3.7;
    CHECK_THROWS_AS(case2_bound(50, table(), tight), CertificationFailure);
}

TEST_CASE("case 2 scan") {
    const auto curve = case2_scan(1e-3, table());
    CHECK(curve.min_bound > 6.5);
    CHECK(curve.min_bound > 6.53);
    CHECK(curve.min_bound < 6.60);
    CHECK(std::fabs(curve.argmin_logd - 45.747) < 1e-3);
    CHECK(k0(curve.argmin_logd, 16) == 8);
    CHECK(k0(std::nextafter(curve.argmin_logd, 100.0), 16) == 9);
    CHECK(curve.samples.front().logd > 42.0);
    CHECK(curve.samples.back().logd == 100.0);

    std::set<double> xs;
    for (const auto& s : curve.samples) {
        REQUIRE(std::isfinite(s.bound));
        REQUIRE(s.bound > 0.0);
        xs.insert(s.logd);
    }
    CHECK(xs.size() == curve.samples.size());
    for (std::int64_t k = 8; k0_corner(k, 16) < 100.0; ++k) {
        double x = k0_corner(k, 16);
        while (k0(x, 16) > k) x = std::nextafter(x, 0.0);
        while (k0(std::nextafter(x, 200.0), 16) == k) x = std::nextafter(x, 200.0);
        CHECK(xs.count(x) == 1);
        CHECK(xs.count(std::nextafter(x, 200.0)) == 1);
    }

    // continuous between corners, jumps only where k0 changes
    for (std::size_t i = 1; i < curve.samples.size(); ++i) {
        const auto& a = curve.samples[i - 1];
        const auto& b = curve.samples[i];
        if (a.k0 == b.k0) REQUIRE(std::fabs(b.bound - a.bound) < 0.01);
        else REQUIRE(b.bound > a.bound);
    }

    CHECK(serial::case2_scan(1e-3, table()).samples.size() == curve.samples.size());
    const auto ref = serial::case2_scan(1e-3, table());
    for (std::size_t i = 0; i < ref.samples.size(); ++i) {
        REQUIRE(ref.samples[i].logd == curve.samples[i].logd);
        REQUIRE(ref.samples[i].bound == curve.samples[i].bound);
    }
    CHECK_THROWS_AS(case2_scan(0.0, table()), InvalidArgument);
    CHECK_THROWS_AS(case2_scan(0.02, table()), InvalidArgument);
    CHECK_THROWS_AS(case2_scan(1e-3, table(), 30.0, 100.0), InvalidArgument);
}

TEST_CASE("case 2 CSV") {
    const auto curve = case2_scan(1e-2, table(), 45.0, 46.0);
    const auto csv = to_csv(curve);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "logd,k0,sigma,bound");
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        REQUIRE(line.find(' ') == std::string::npos);
        REQUIRE(std::count(line.begin(), line.end(), ',') == 3);
    }
    CHECK(rows == curve.samples.size());
    CHECK(csv == to_csv(case2_scan(1e-2, table(), 45.0, 46.0)));
    CHECK(csv.find("45.7477139") != std::string::npos);
}

TEST_CASE("case 3 chain") {
    const auto ch = case3_chain(24.66, table());
    CHECK(ch.bound > 7.0);
    CHECK(ch.k0 >= 16);
    CHECK(ch.e_sigma_over_k0 < 0.778);
    CHECK(ch.e_sigma_over_k0_formula < 0.778);
    CHECK(ch.ratio < 1.401);
    CHECK(ch.tail < 0.0003);
    CHECK(ch.denominator < 2.738);
    CHECK(ch.linear_bound > 7.0);
    CHECK(ch.bound > ch.linear_bound);
    CHECK(0.016 * std::pow(0.778, 16) < 0.0003);
    CHECK(2.0 * 24.65 / std::log(24.65) >= 15.3);
    CHECK(case3_chain(std::nextafter(24.65, 100.0), table()).e_sigma_over_k0_formula < 0.778);
    CHECK(case3_logd(case3_t(123.0)) == doctest::Approx(123.0).epsilon(1e-15));
    CHECK(case3_t(100.0) > 24.65);
    CHECK_THROWS_AS(case3_chain(24.65, table()), InvalidArgument);
    CHECK_THROWS_AS(case3_chain(3e6, table()), InvalidArgument);

    BoundConstants c;
    c.case3_tail = 1e-6;
    try {
        case3_chain(30.0, table(), c);
        FAIL("chain should break");
    } catch (const CertificationFailure& e) {
        CHECK(e.link() == "case3_tail");
    }
    c = {};
    c.case3_ratio = 1.2;
    CHECK_THROWS_AS(case3_chain(30.0, table(), c), CertificationFailure);

    double prev = 0.0;
    for (double t = 24.66; t <= 500.0; t *= 1.002) {
        const auto x = case3_chain(t, table());
        REQUIRE(x.bound > 7.0);
        REQUIRE(x.bound >= prev);
        prev = x.bound;
    }
}

TEST_CASE("theorem 1 certificate") {
    const auto& cert = certificate();
    CHECK(cert.report.passed);
    CHECK(cert.report.failures.empty());
    CHECK(cert.min_bound > 6.5);
    CHECK(cert.margin > 0.0);
    CHECK(cert.argmin_case == "case2");
    CHECK(std::fabs(cert.argmin_logd - k0_corner(8, 16)) < 1e-9);
    CHECK(cert.case1_argmin == 42.0);
    CHECK(cert.case3_min > 7.0);
    CHECK(cert.case3_monotone_tail);
    CHECK(audit_passes(cert.audit));
    CHECK(cert.report.range_lo == doctest::Approx(std::log(3e8)));
    CHECK(cert.report.range_hi == 1000.0);

    std::set<std::string> claims;
    for (const auto& c : cert.report.checks) claims.insert(c.claim);
    for (const char* c : {"case1_bound", "case2_bound", "case3_bound", "case3_monotone_tail", "seam_42", "seam_100"})
        CHECK(claims.count(c) == 1);

    const auto j = to_json(cert);
    for (const char* k : {"range", "min_bound", "argmin", "margins", "constant_audit"}) CHECK(j.contains(k));
    CHECK(j["constant_audit"][0].contains("direction_ok"));
}

TEST_CASE("inverting the assumed constant breaks the certificate") {
    BoundConstants c;
    c.assumption_const = 8.0;
    const auto cert = theorem1_certificate(table(), 1e-2, c);
    CHECK_FALSE(cert.report.passed);
    CHECK(cert.margin < 0.0);
}

TEST_CASE("constant audit") {
    const auto audit = audit_constants();
    CHECK(audit_passes(audit));
    for (const auto& e : audit) {
        CAPTURE(e.name);
        CHECK(e.direction_ok);
    }
    const BoundConstants c;
    CHECK(c.numerator_a <= 396.0 / (kPi * kPi) * c.pi_frac);
    CHECK(c.numerator_b >= 396.0 / (kPi * kPi) * 0.132 * 6.5 / 101.0);
    CHECK(c.j_coeff_half >= (0.354 + 1.067 / std::log(3e8)) / (2.0 * kPi));
    CHECK(c.case2_denominator >= c.case2_main + c.case2_error_head);
    CHECK(c.case3_denominator >= 1.0 + 2.0 * std::log(2.0) + 3.6 / std::pow(std::log(24.65), 2));
    CHECK(c.case2_numerator_b > c.numerator_b / 16.0);

    BoundConstants bad;
    bad.numerator_a = 21.0;
    CHECK_FALSE(audit_passes(audit_constants(bad)));
    bad = {};
    bad.case3_denominator = 2.7;
    CHECK_FALSE(audit_passes(audit_constants(bad)));
}

TEST_CASE("J-derived constants") {
    JValues j;
    j.J = {0.19692, 0.45203, 0.15661, 0.61360};
    CHECK(audit_passes(audit_j_constants(j)));
    j.J[0] = 0.1985;
    CHECK_FALSE(audit_passes(audit_j_constants(j)));
}

TEST_CASE("divisor sieve") {
    const DivisorSieve s(10000);
    CHECK(s.sum_2w(34) == 101);
    CHECK(sum_2w(34) == 101);
    CHECK(sum_2w(1) == 1);
    CHECK(squarefree_count(1) == 1);
    CHECK(s.sum_2w_over_n(34) <= 9.161);
    CHECK(sum_2w_over_n(1) == 1.0);
    for (std::uint64_t n = 1; n <= 10000; ++n) {
        std::uint64_t sqfree_divisors = 0;
        for (std::uint64_t m = 1; m <= n; ++m)
            if (n % m == 0 && s.mobius(m) != 0) ++sqfree_divisors;
        REQUIRE((std::uint64_t{1} << s.omega(n)) == sqfree_divisors);
        if (n <= 3000) REQUIRE(s.omega(n) == oracle::omega(n));
    }
    CHECK(s.mobius(1) == 1);
    CHECK(s.mobius(6) == 1);
    CHECK(s.mobius(30) == -1);
    CHECK(s.mobius(12) == 0);
    CHECK_THROWS_AS(DivisorSieve(0), InvalidArgument);
}

TEST_CASE("sums against their main terms") {
    const double six = 6.0 / (kPi * kPi);
    const double y6 = 1e6;
    CHECK(std::fabs(double(squarefree_count(1000000)) / y6 - six) < 2.0 / std::sqrt(y6));
    double prev = 1.0;
    for (std::uint64_t y : {10000ull, 100000ull, 1000000ull}) {
        const double dev = std::fabs(double(sum_2w(y)) / (double(y) * std::log(double(y))) - six);
        CHECK(dev < prev);
        prev = dev;
    }
}

TEST_CASE("h to y") {
    CHECK(invert_h_to_y(101) == 34);
    CHECK(invert_h_to_y(1) == 1);
    CHECK(invert_h_to_y(100) == 34);
    CHECK(invert_h_to_y(102) == 35);
    const DivisorSieve s(5000);
    for (std::uint64_t h = 1; h <= 2000; ++h) {
        const auto y = invert_h_to_y(h);
        REQUIRE(s.sum_2w(y) >= h);
        if (y > 1) REQUIRE(s.sum_2w(y - 1) < h);
    }
    const auto y5 = double(invert_h_to_y(100000));
    const double main = 6.0 / (kPi * kPi) * y5 * std::log(y5);
    CHECK(main < 1e5);
    CHECK(main > 0.5e5);
    CHECK_THROWS_AS(invert_h_to_y(0), InvalidArgument);
}

TEST_CASE("theorem 2 ratio") {
    const auto p4 = theorem2_ratio(10000);
    CHECK(p4.ratio_to_2pi > 0.5);
    CHECK(p4.ratio_to_2pi < 1.5);
    const auto p6 = theorem2_ratio(1000000);
    CHECK(std::fabs(p6.ratio_to_2pi - 1.0) < std::fabs(p4.ratio_to_2pi - 1.0));
    CHECK(p4.y == invert_h_to_y(10000));
    CHECK(p4.s2 == doctest::Approx(sum_2w_over_n(p4.y)).epsilon(1e-15));
    CHECK(6.0 / (kPi * kPi) / (3.0 / (kPi * kPi)) * kPi == doctest::Approx(2.0 * kPi));
    CHECK_THROWS_AS(theorem2_ratio(100), InvalidArgument);
}
