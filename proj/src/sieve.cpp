#include "siegel/sieve.hpp"

#include <algorithm>

namespace siegel::sieve {

SegmentedSieve::SegmentedSieve(std::uint64_t limit) : limit_(limit) {
    // Odd numbers 1, 3, ..., up to limit: (limit + 1) / 2 of them.
    const std::uint64_t odds = (limit + 1) / 2;
    segments_ = (odds + kSegmentOdds - 1) / kSegmentOdds;
    for (auto p : serial::primes_up_to(isqrt(limit)))
        if (p > 2) base_.push_back(static_cast<std::uint32_t>(p));
}

void SegmentedSieve::mark(std::uint64_t k, std::vector<std::uint8_t>& composite) const {
    composite.assign(kSegmentOdds, 0);
    const std::uint64_t lo = segment_low(k);
    const std::uint64_t hi = lo + 2 * (kSegmentOdds - 1);  // last odd in segment
    if (k == 0) composite[0] = 1;                          // the number 1
    if (hi > limit_) {
        const std::uint64_t first_out = limit_ < lo ? 0 : (limit_ - lo) / 2 + 1;
        std::fill(composite.begin() + static_cast<std::ptrdiff_t>(first_out), composite.end(), 1);
    }
    for (const std::uint64_t p : base_) {
        const std::uint64_t sq = p * p;
        if (sq > hi) break;
        std::uint64_t start = sq >= lo ? sq : ((lo + p - 1) / p) * p;
        if ((start & 1) == 0) start += p;
        for (std::uint64_t j = (start - lo) / 2; j < kSegmentOdds; j += p) composite[j] = 1;
    }
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
    if (limit < 2) return {};
    const SegmentedSieve s(limit);
    const auto nseg = static_cast<std::int64_t>(s.segment_count());
    std::vector<std::vector<std::uint64_t>> parts(static_cast<std::size_t>(nseg));
#pragma omp parallel
    {
        std::vector<std::uint8_t> composite;
#pragma omp for schedule(dynamic, 4)
        for (std::int64_t k = 0; k < nseg; ++k) {
            s.mark(static_cast<std::uint64_t>(k), composite);
            const std::uint64_t lo = s.segment_low(static_cast<std::uint64_t>(k));
            auto& out = parts[static_cast<std::size_t>(k)];
            for (std::uint64_t j = 0; j < SegmentedSieve::kSegmentOdds; ++j)
                if (!composite[j]) out.push_back(lo + 2 * j);
        }
    }
    std::vector<std::uint64_t> primes{2};
    for (const auto& part : parts) primes.insert(primes.end(), part.begin(), part.end());
    return primes;
}

std::vector<std::uint32_t> smallest_prime_factors(std::uint32_t limit) {
    std::vector<std::uint32_t> spf(static_cast<std::size_t>(limit) + 1, 0);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (spf[i] != 0) continue;
        for (std::uint64_t j = i; j <= limit; j += i)
            if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
    }
    return spf;
}

namespace serial {

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
    if (limit < 2) return {};
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint64_t> primes;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return primes;
}

}  // namespace serial

}  // namespace siegel::sieve
