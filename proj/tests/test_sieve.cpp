#include <doctest.h>
#include <omp.h>

#include "oracles.hpp"
#include "siegel/sieve.hpp"

using namespace siegel;

TEST_CASE("segmented primes match the plain sieve across segment edges") {
    const std::uint64_t seg = 2 * sieve::SegmentedSieve::kSegmentOdds;
    for (std::uint64_t limit : {std::uint64_t{0}, std::uint64_t{1}, std::uint64_t{2}, std::uint64_t{3},
                                std::uint64_t{100}, seg - 1, seg, seg + 1, 3 * seg + 7, std::uint64_t{2278421}}) {
        CAPTURE(limit);
        CHECK(sieve::primes_up_to(limit) == sieve::serial::primes_up_to(limit));
    }
}

TEST_CASE("primes against trial division") {
    const auto ps = sieve::primes_up_to(20000);
    std::vector<std::uint64_t> expect;
    for (std::uint64_t n = 2; n <= 20000; ++n)
        if (oracle::is_prime(n)) expect.push_back(n);
    CHECK(ps == expect);
}

TEST_CASE("prime sums do not depend on the thread count") {
    const sieve::SegmentedSieve s(3000000);
    auto term = [](std::uint64_t p) { return 1.0 / static_cast<double>(p); };
    omp_set_num_threads(1);
    const double one = sieve::prime_sum(s, term);
    omp_set_num_threads(4);
    const double four = sieve::prime_sum(s, term);
    omp_set_num_threads(omp_get_num_procs());
    CHECK(one == four);
    CHECK(one == doctest::Approx(sieve::serial::prime_sum(3000000, term)).epsilon(1e-15));
}

TEST_CASE("smallest prime factors") {
    const auto spf = sieve::smallest_prime_factors(5000);
    CHECK(spf[0] == 0);
    CHECK(spf[1] == 0);
    for (std::uint32_t n = 2; n <= 5000; ++n) {
        std::uint32_t p = 2;
        while (n % p != 0) ++p;
        REQUIRE(spf[n] == p);
    }
}
