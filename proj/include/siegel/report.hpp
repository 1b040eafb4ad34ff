#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

namespace siegel {

/// One point where a checked quantity was evaluated. `quantity` carries the
/// claim id so a failure line can be traced back to the claim it refutes.
struct SlackRecord {
    double value = 0.0;  // integer lattice point or real abscissa
    std::string quantity;
    double slack = 0.0;

    friend bool operator==(const SlackRecord&, const SlackRecord&) = default;
};

/// Summary of one named inequality inside a report.
struct CheckSummary {
    std::string claim;
    double range_lo = 0.0;
    double range_hi = 0.0;
    std::int64_t evaluated = 0;
    double min_slack = std::numeric_limits<double>::infinity();
    double argmin = 0.0;

    friend bool operator==(const CheckSummary&, const CheckSummary&) = default;
};

struct VerificationReport {
    double range_lo = 0.0;
    double range_hi = 0.0;
    std::vector<SlackRecord> failures;
    std::vector<SlackRecord> marginal;
    std::vector<CheckSummary> checks;
    double min_slack = std::numeric_limits<double>::infinity();
    bool passed = true;

    /// Recompute `passed` and `min_slack` from failures and checks, and
    /// sort the record lists by (value, quantity).
    void finalize();

    /// Associative merge; the result does not depend on merge order once
    /// finalize() has been called.
    void merge(const VerificationReport& other);

    friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

nlohmann::json to_json(const VerificationReport& report);

/// Integral values as JSON integers, everything else as doubles.
nlohmann::json number_json(double v);

}  // namespace siegel
