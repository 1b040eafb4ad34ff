#pragma once

#include <cstdint>
#include <vector>

#include "siegel/common.hpp"

namespace siegel::sieve {

/// Odd-only segmented sieve of Eratosthenes. Segment k covers the odd
/// integers 1 + 2*kSegmentOdds*k + 2j, j in [0, kSegmentOdds). Segments are
/// independent, so callers can run them in any order and concatenate by index.
class SegmentedSieve {
public:
    static constexpr std::uint64_t kSegmentOdds = std::uint64_t{1} << 17;

    explicit SegmentedSieve(std::uint64_t limit);

    std::uint64_t limit() const noexcept { return limit_; }
    std::uint64_t segment_count() const noexcept { return segments_; }

    /// Fill `composite` (resized to kSegmentOdds) for segment k; entry j is 0
    /// iff the odd number lo + 2j is prime and within the limit.
    void mark(std::uint64_t k, std::vector<std::uint8_t>& composite) const;

    std::uint64_t segment_low(std::uint64_t k) const noexcept { return 1 + 2 * kSegmentOdds * k; }

private:
    std::uint64_t limit_;
    std::uint64_t segments_;
    std::vector<std::uint32_t> base_;  // odd primes up to sqrt(limit)
};

/// Primes <= limit, ascending. OpenMP over segments.
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

/// Sum of term(p) over primes p <= limit with per-segment compensated sums
/// merged in segment order, so the result is independent of thread count.
template <class Term>
double prime_sum(const SegmentedSieve& s, Term&& term) {
    const auto nseg = static_cast<std::int64_t>(s.segment_count());
    std::vector<CompensatedSum> partial(static_cast<std::size_t>(nseg));
    if (s.limit() >= 2) partial.front().add(term(std::uint64_t{2}));
#pragma omp parallel
    {
        std::vector<std::uint8_t> composite;
#pragma omp for schedule(dynamic, 4)
        for (std::int64_t k = 0; k < nseg; ++k) {
            s.mark(static_cast<std::uint64_t>(k), composite);
            const std::uint64_t lo = s.segment_low(static_cast<std::uint64_t>(k));
            CompensatedSum acc;
            for (std::uint64_t j = 0; j < SegmentedSieve::kSegmentOdds; ++j)
                if (!composite[j]) acc.add(term(lo + 2 * j));
            partial[static_cast<std::size_t>(k)] += acc;
        }
    }
    CompensatedSum total;
    for (const auto& p : partial) total += p;
    return total.value();
}

/// Smallest prime factor for every n <= limit (spf[0] = spf[1] = 0).
std::vector<std::uint32_t> smallest_prime_factors(std::uint32_t limit);

namespace serial {

/// Plain (unsegmented) sieve of Eratosthenes; reference for primes_up_to.
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

/// Reference for prime_sum: single pass, ascending order.
template <class Term>
double prime_sum(std::uint64_t limit, Term&& term) {
    CompensatedSum acc;
    for (auto p : primes_up_to(limit)) acc.add(term(p));
    return acc.value();
}

}  // namespace serial

}  // namespace siegel::sieve
