#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "siegel/report.hpp"

namespace siegel {

struct PrimePower {
    std::uint64_t p = 0;
    int alpha = 0;
    std::uint64_t value = 0;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Every prime power <= limit in ascending order with running reciprocal
/// sums. Immutable once built; safe to share across threads.
class PrimePowerTable {
public:
    /// Throws InvalidArgument when limit < 2.
    static PrimePowerTable build(std::uint64_t limit);

    /// Assemble from persisted entries (see table_cache.hpp). Validates
    /// ordering and the cumulative increments.
    static PrimePowerTable from_entries(std::uint64_t limit, std::vector<PrimePower> entries,
                                        std::vector<double> cumulative);

    std::uint64_t limit() const noexcept { return limit_; }
    std::size_t size() const noexcept { return entries_.size(); }
    std::span<const PrimePower> entries() const noexcept { return entries_; }
    std::span<const double> cumulative() const noexcept { return cumulative_; }
    std::span<const double> prime_cumulative() const noexcept { return prime_cumulative_; }

    /// Index of the greatest prime power <= x, or -1 if x < 2.
    std::ptrdiff_t index_at_or_below(double x) const noexcept;
    /// Index of the least prime power >= x, or size() if none.
    std::size_t index_at_or_above(double x) const noexcept;

private:
    PrimePowerTable() = default;
    void fill_prime_cumulative();

    std::uint64_t limit_ = 0;
    std::vector<PrimePower> entries_;
    std::vector<double> cumulative_;
    std::vector<double> prime_cumulative_;
};

/// Sum of 1/p over primes p <= x. Requires 2 <= x <= limit.
double prime_reciprocal_sum(const PrimePowerTable& table, double x);

/// Sum of p^-alpha over prime powers p^alpha <= x. Requires 2 <= x <= limit.
double prime_power_reciprocal_sum(const PrimePowerTable& table, double x);

struct PrimeSquareSum {
    double value = 0.0;       // sum of 1/(p^2 - p) over p <= cutoff
    std::uint64_t cutoff = 0;
    double tail_bound = 0.0;  // >= the omitted part
};

/// Truncated sum of 1/(p^2 - p); cutoff chosen so the tail bound 1/cutoff
/// does not exceed `tolerance`. Requires 0 < tolerance < 1.
PrimeSquareSum compute_C(double tolerance);

struct MertensConstants {
    /// Mertens' constant, stored (OEIS A077761).
    static constexpr double kB1 = 0.26149721284764278375542683860869585;

    double B1 = kB1;
    double C = 0.0;
    double B2 = 0.0;
    double C_tail_bound = 0.0;

    static MertensConstants with_tolerance(double tolerance);
    /// Tolerance 1e-9, computed once per process.
    static const MertensConstants& standard();
};

/// eps(x) = sum_{p^a <= x} p^-a - log log x - B2.
double epsilon(const PrimePowerTable& table, const MertensConstants& constants, double x);

inline constexpr std::uint64_t kPropositionUpperEnd = 2278383;
inline constexpr std::uint64_t kPropositionLowerEnd = 2278421;
inline constexpr double kDefaultSlackFloor = 1e-7;

/// Both lattice checks behind the explicit window for eps(x):
///   claim "pp_upper": eps(q) < 0 for prime powers q in [2, 2278383];
///   claim "pp_lower": eps(q) + 1.75/(log q)^2 - 1/q > 0 for q in [2, 2278421].
/// OpenMP over table entries; the merged report is independent of threads.
VerificationReport verify_proposition(const PrimePowerTable& table,
                                      const MertensConstants& constants,
                                      double slack_floor = kDefaultSlackFloor);

/// |sum_{p<=x} 1/p - log log x - B1| <= 0.2/(log x)^3, claimed for x >= 2278383.
bool check_dusart(const PrimePowerTable& table, const MertensConstants& constants, double x);

namespace serial {
VerificationReport verify_proposition(const PrimePowerTable& table,
                                      const MertensConstants& constants,
                                      double slack_floor = kDefaultSlackFloor);
}  // namespace serial

}  // namespace siegel
