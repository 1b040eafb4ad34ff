#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "siegel/analytic.hpp"
#include "siegel/prime_tools.hpp"
#include "siegel/report.hpp"

namespace siegel {

/// Rounded constants of the case analysis. Lower bounds are rounded down
/// and upper bounds up; audit() re-derives each one.
struct BoundConstants {
    double beta_min = 0.999;
    double pi_frac = 0.523;          // < pi / ((3 - beta)(4 - beta))
    double assumption_const = 6.5;   // hypothesis (1 - beta) sqrt(d) <= 6.5
    double j_coeff = 0.132;          // 2 * 0.066
    double j_coeff_half = 0.066;
    double j_log_coeff = 0.354;      // rounded J1 + J3
    double j_const_coeff = 1.067;    // rounded J2 + J4
    double numerator_a = 20.984;
    double numerator_b = 0.341;
    double h_min = 101.0;
    double d_min = 3e8;

    double case2_ell = 16.0;
    double case2_sigma = 3.786;
    double case2_numerator_b = 0.022;
    double case2_main = 2.387;       // 1 + 2 log 2
    double case2_error_head = 0.469; // 3.6 / (log 16)^2
    double case2_denominator = 2.856;
    double case2_tail_coeff = 0.044; // 11 / (101 sqrt(2 pi))
    double case2_e_sigma = 10.3;     // e * 3.786

    double case3_t_min = 24.65;
    double case3_k0_floor = 15.3;
    double case3_e_sigma_over_k0 = 0.778;
    double case3_ratio = 1.401;
    double case3_tail_coeff = 0.016;
    double case3_tail = 0.0003;
    double case3_main = 2.737;
    double case3_denominator = 2.738;
    double case3_lead = 7.663;
    double case3_slope = 0.125;
    double case3_sigma_offset = 2.07;
    double case3_floor = 7.0;
};

struct AuditEntry {
    std::string name;
    double expression_value = 0.0;
    double stored_value = 0.0;
    bool stored_is_upper = true;  // stored must be >= expression (else <=)
    bool direction_ok = false;
};

/// Re-derive every rounded constant and check the rounding direction.
std::vector<AuditEntry> audit_constants(const BoundConstants& c = {});
bool audit_passes(const std::vector<AuditEntry>& audit);
nlohmann::json to_json(const std::vector<AuditEntry>& audit);

/// J-derived entries: (0.354, 1.067) from round-up of each J, and the
/// coefficient 0.066 of |J|.
std::vector<AuditEntry> audit_j_constants(const JValues& j, const BoundConstants& c = {});

/// 2 * sum_{p^a <= ell} p^-a.
double sigma(const PrimePowerTable& table, double ell);

/// ceil((logd/2 - log 2) / log ell).
std::int64_t k0(double logd, double ell);

/// abscissa in log d where k0 (for a fixed ell) steps from k to k + 1.
double k0_corner(std::int64_t k, double ell);

inline const double kLogDMin = 19.519293032620887;  // log(3e8)
inline constexpr double kCase1End = 42.0;
inline constexpr double kCase2End = 100.0;
inline constexpr double kCase3ScanEnd = 1000.0;

/// Case log d <= 42 (f = 1).
double case1_bound(double logd, const BoundConstants& c = {});

/// Case 42 < log d <= 100 (f = ell = 16). The table certifies sigma(16) < 3.786.
double case2_bound(double logd, const PrimePowerTable& table, const BoundConstants& c = {});

struct Case3Chain {
    double t = 0.0;
    double logd = 0.0;
    std::int64_t k0 = 0;
    double sigma = 0.0;
    double sigma_bound = 0.0;        // 2 log log t + 2.07
    double e_sigma_over_k0 = 0.0;    // exact sigma and k0
    double e_sigma_over_k0_formula = 0.0;
    double ratio = 0.0;              // (1 + k0)/(1 + k0 - sigma)
    double tail = 0.0;
    double denominator = 0.0;
    double bound = 0.0;              // (20.984 - 0.341 logd / t) / 2.738
    double linear_bound = 0.0;       // 7.663 - 0.125 (4t + log 4)/t
};

/// Case log d > 100 with f = ell = t = log(sqrt(d)/2)/2. Every link is
/// checked; a failed link throws CertificationFailure naming it.
Case3Chain case3_chain(double t, const PrimePowerTable& table, const BoundConstants& c = {});
double case3_bound(double t, const PrimePowerTable& table, const BoundConstants& c = {});

/// t as a function of log d, and back.
double case3_t(double logd);
double case3_logd(double t);

struct BoundSample {
    double logd = 0.0;
    std::int64_t k0 = 0;
    double sigma = 0.0;
    double bound = 0.0;
};

struct BoundCurve {
    std::vector<BoundSample> samples;  // ascending logd
    double min_bound = 0.0;
    double argmin_logd = 0.0;
};

/// Case-2 bound on (from, to] on a uniform grid plus both sides of every
/// k0 step. OpenMP over samples.
BoundCurve case2_scan(double grid_step, const PrimePowerTable& table, double from = kCase1End,
                      double to = kCase2End, const BoundConstants& c = {});

namespace serial {
BoundCurve case2_scan(double grid_step, const PrimePowerTable& table, double from = kCase1End,
                      double to = kCase2End, const BoundConstants& c = {});
}  // namespace serial

std::string to_csv(const BoundCurve& curve);

struct Theorem1Certificate {
    VerificationReport report;
    double min_bound = 0.0;
    double argmin_logd = 0.0;
    std::string argmin_case;
    double margin = 0.0;  // min_bound - assumption_const
    double case1_min = 0.0, case2_min = 0.0, case3_min = 0.0;
    double case1_argmin = 0.0, case2_argmin = 0.0, case3_argmin = 0.0;
    bool case3_monotone_tail = false;
    std::vector<AuditEntry> audit;
    BoundCurve curve;  // every sample across the three cases
};

/// Dispatch [log 3e8, 1000] across the three cases and certify every sample
/// exceeds assumption_const.
Theorem1Certificate theorem1_certificate(const PrimePowerTable& table, double grid_step = 1e-3,
                                         const BoundConstants& c = {});
nlohmann::json to_json(const Theorem1Certificate& cert);

/// Arithmetic sums over n <= y via one sieve.
class DivisorSieve {
public:
    explicit DivisorSieve(std::uint64_t y);
    std::uint64_t limit() const noexcept { return limit_; }
    int omega(std::uint64_t n) const { return omega_[n]; }
    int mobius(std::uint64_t n) const { return mu_[n]; }
    /// sum_{n <= y} 2^w(n), exact.
    std::uint64_t sum_2w(std::uint64_t y) const { return prefix_2w_[y]; }
    double sum_2w_over_n(std::uint64_t y) const { return prefix_2w_over_n_[y]; }
    std::uint64_t squarefree_count(std::uint64_t y) const { return prefix_sqfree_[y]; }

private:
    std::uint64_t limit_;
    std::vector<std::uint8_t> omega_;
    std::vector<std::int8_t> mu_;
    std::vector<std::uint64_t> prefix_2w_;
    std::vector<double> prefix_2w_over_n_;
    std::vector<std::uint64_t> prefix_sqfree_;
};

std::uint64_t sum_2w(std::uint64_t y);
double sum_2w_over_n(std::uint64_t y);
std::uint64_t squarefree_count(std::uint64_t y);

/// The y with sum_{a <= y-1} 2^w(a) < h <= sum_{a <= y} 2^w(a).
std::uint64_t invert_h_to_y(std::uint64_t h);

struct Theorem2Point {
    std::uint64_t h = 0;
    std::uint64_t y = 0;
    double s2 = 0.0;           // sum_{a <= y} 2^w(a)/a
    double lower_bound = 0.0;  // (6/pi^2) * pi h / s2, bound on (1 - beta) sqrt(d)
    double ratio = 0.0;        // lower_bound * (log h)^2 / h, tends to 2 pi
    double ratio_to_2pi = 0.0;
};

Theorem2Point theorem2_ratio(std::uint64_t h);

}  // namespace siegel
