#include "siegel/prime_tools.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "siegel/common.hpp"
#include "siegel/sieve.hpp"

namespace siegel {

namespace {

void require_in_table(const PrimePowerTable& table, double x, const char* what) {
    if (!(x >= 2.0) || x > static_cast<double>(table.limit()))
        throw InvalidArgument(std::string(what) + ": x = " + std::to_string(x) +
                              " outside [2, " + std::to_string(table.limit()) + "]");
}

}  // namespace

PrimePowerTable PrimePowerTable::build(std::uint64_t limit) {
    if (limit < 2) throw InvalidArgument("build_prime_power_table: limit must be >= 2");
    PrimePowerTable t;
    t.limit_ = limit;
    for (const std::uint64_t p : sieve::primes_up_to(limit)) {
        std::uint64_t v = p;
        for (int alpha = 1;; ++alpha) {
            t.entries_.push_back({p, alpha, v});
            if (v > limit / p) break;
            v *= p;
        }
    }
    std::sort(t.entries_.begin(), t.entries_.end(),
              [](const PrimePower& a, const PrimePower& b) { return a.value < b.value; });
    t.cumulative_.reserve(t.entries_.size());
    CompensatedSum acc;
    for (const auto& e : t.entries_) {
        acc.add(1.0 / static_cast<double>(e.value));
        t.cumulative_.push_back(acc.value());
    }
    t.fill_prime_cumulative();
    return t;
}

PrimePowerTable PrimePowerTable::from_entries(std::uint64_t limit, std::vector<PrimePower> entries,
                                              std::vector<double> cumulative) {
    if (limit < 2) throw InvalidArgument("prime power table: limit must be >= 2");
    if (entries.size() != cumulative.size())
        throw InvalidArgument("prime power table: entry/cumulative length mismatch");
    double prev = 0.0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& e = entries[i];
        if (e.value > limit || (i > 0 && e.value <= entries[i - 1].value))
            throw InvalidArgument("prime power table: entries not strictly increasing within limit");
        const double step = cumulative[i] - prev;
        const double expect = 1.0 / static_cast<double>(e.value);
        if (std::fabs(step - expect) > 1e-12)
            throw InvalidArgument("prime power table: cumulative increment mismatch at value " +
                                  std::to_string(e.value));
        prev = cumulative[i];
    }
    PrimePowerTable t;
    t.limit_ = limit;
    t.entries_ = std::move(entries);
    t.cumulative_ = std::move(cumulative);
    t.fill_prime_cumulative();
    return t;
}

void PrimePowerTable::fill_prime_cumulative() {
    prime_cumulative_.clear();
    prime_cumulative_.reserve(entries_.size());
    CompensatedSum acc;
    for (const auto& e : entries_) {
        if (e.alpha == 1) acc.add(1.0 / static_cast<double>(e.value));
        prime_cumulative_.push_back(acc.value());
    }
}

std::ptrdiff_t PrimePowerTable::index_at_or_below(double x) const noexcept {
    auto it = std::upper_bound(entries_.begin(), entries_.end(), x,
                               [](double v, const PrimePower& e) { return v < static_cast<double>(e.value); });
    return (it - entries_.begin()) - 1;
}

std::size_t PrimePowerTable::index_at_or_above(double x) const noexcept {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), x,
                               [](const PrimePower& e, double v) { return static_cast<double>(e.value) < v; });
    return static_cast<std::size_t>(it - entries_.begin());
}

double prime_reciprocal_sum(const PrimePowerTable& table, double x) {
    require_in_table(table, x, "prime_reciprocal_sum");
    return table.prime_cumulative()[static_cast<std::size_t>(table.index_at_or_below(x))];
}

double prime_power_reciprocal_sum(const PrimePowerTable& table, double x) {
    require_in_table(table, x, "prime_power_reciprocal_sum");
    return table.cumulative()[static_cast<std::size_t>(table.index_at_or_below(x))];
}

PrimeSquareSum compute_C(double tolerance) {
    if (!(tolerance > 0.0 && tolerance < 1.0))
        throw InvalidArgument("compute_C: tolerance must lie in (0, 1)");
    // sum_{p > N} 1/(p^2 - p) <= sum_{n > N} 1/(n^2 - n) = 1/N.
    const auto cutoff = static_cast<std::uint64_t>(std::ceil(1.0 / tolerance));
    const sieve::SegmentedSieve s(cutoff);
    const double value = sieve::prime_sum(s, [](std::uint64_t p) {
        const double pd = static_cast<double>(p);
        return 1.0 / (pd * (pd - 1.0));
    });
    return {value, cutoff, 1.0 / static_cast<double>(cutoff)};
}

MertensConstants MertensConstants::with_tolerance(double tolerance) {
    const PrimeSquareSum c = compute_C(tolerance);
    MertensConstants m;
    m.C = c.value;
    m.C_tail_bound = c.tail_bound;
    m.B2 = m.B1 + m.C;
    return m;
}

const MertensConstants& MertensConstants::standard() {
    static const MertensConstants m = with_tolerance(1e-9);
    return m;
}

double epsilon(const PrimePowerTable& table, const MertensConstants& constants, double x) {
    return prime_power_reciprocal_sum(table, x) - std::log(std::log(x)) - constants.B2;
}

namespace {

constexpr const char* kUpperClaim = "pp_upper";
constexpr const char* kLowerClaim = "pp_lower";

VerificationReport check_block(const PrimePowerTable& table, const MertensConstants& constants,
                               double slack_floor, std::size_t begin, std::size_t end) {
    VerificationReport r;
    r.range_lo = 2;
    r.range_hi = static_cast<double>(kPropositionLowerEnd);
    CheckSummary upper{kUpperClaim, 2, static_cast<double>(kPropositionUpperEnd)};
    CheckSummary lower{kLowerClaim, 2, static_cast<double>(kPropositionLowerEnd)};
    const auto entries = table.entries();
    const auto cumulative = table.cumulative();

    auto record = [&](CheckSummary& s, double q, double slack) {
        ++s.evaluated;
        if (slack < s.min_slack) {
            s.min_slack = slack;
            s.argmin = q;
        }
        if (!(slack > 0.0)) r.failures.push_back({q, s.claim, slack});
        else if (slack < slack_floor) r.marginal.push_back({q, s.claim, slack});
    };

    for (std::size_t i = begin; i < end; ++i) {
        const std::uint64_t q = entries[i].value;
        if (q > kPropositionLowerEnd) break;
        const double qd = static_cast<double>(q);
        const double logq = std::log(qd);
        const double eps = cumulative[i] - std::log(logq) - constants.B2;
        if (q <= kPropositionUpperEnd) record(upper, qd, -eps);
        record(lower, qd, eps + 1.75 / (logq * logq) - 1.0 / qd);
    }
    r.checks = {upper, lower};
    r.finalize();
    return r;
}

void require_full_table(const PrimePowerTable& table) {
    if (table.limit() < kPropositionLowerEnd)
        throw InvalidArgument("verify_proposition: table limit " + std::to_string(table.limit()) +
                              " < " + std::to_string(kPropositionLowerEnd));
}

}  // namespace

VerificationReport verify_proposition(const PrimePowerTable& table, const MertensConstants& constants,
                                      double slack_floor) {
    require_full_table(table);
    // Fixed block partition: the merge sees the same pieces for any thread count.
    constexpr std::int64_t kBlocks = 64;
    const std::size_t n = table.size();
    std::vector<VerificationReport> parts(kBlocks);
#pragma omp parallel for schedule(static)
    for (std::int64_t b = 0; b < kBlocks; ++b) {
        const std::size_t lo = n * static_cast<std::size_t>(b) / kBlocks;
        const std::size_t hi = n * static_cast<std::size_t>(b + 1) / kBlocks;
        parts[static_cast<std::size_t>(b)] = check_block(table, constants, slack_floor, lo, hi);
    }
    VerificationReport out = parts.front();
    for (std::size_t b = 1; b < parts.size(); ++b) out.merge(parts[b]);
    return out;
}

namespace serial {

VerificationReport verify_proposition(const PrimePowerTable& table, const MertensConstants& constants,
                                      double slack_floor) {
    require_full_table(table);
    return check_block(table, constants, slack_floor, 0, table.size());
}

}  // namespace serial

bool check_dusart(const PrimePowerTable& table, const MertensConstants& constants, double x) {
    if (!(x >= static_cast<double>(kPropositionUpperEnd)))
        throw InvalidArgument("check_dusart: inequality only claimed for x >= 2278383");
    const double lhs = std::fabs(prime_reciprocal_sum(table, x) - std::log(std::log(x)) - constants.B1);
    const double lx = std::log(x);
    return lhs <= 0.2 / (lx * lx * lx);
}

}  // namespace siegel
