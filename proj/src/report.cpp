#include "siegel/report.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace siegel {

namespace {

void sort_records(std::vector<SlackRecord>& v) {
    std::sort(v.begin(), v.end(), [](const SlackRecord& a, const SlackRecord& b) {
        return std::tie(a.value, a.quantity) < std::tie(b.value, b.quantity);
    });
}

}  // namespace

nlohmann::json number_json(double v) {
    if (std::isfinite(v) && std::floor(v) == v && std::fabs(v) < 9.007199254740992e15)
        return static_cast<std::int64_t>(v);
    return v;
}

namespace {

nlohmann::json records_json(const std::vector<SlackRecord>& v) {
    auto arr = nlohmann::json::array();
    for (const auto& r : v)
        arr.push_back({{"value", number_json(r.value)}, {"quantity", r.quantity}, {"slack", r.slack}});
    return arr;
}

}  // namespace

void VerificationReport::finalize() {
    sort_records(failures);
    sort_records(marginal);
    std::sort(checks.begin(), checks.end(),
              [](const CheckSummary& a, const CheckSummary& b) { return a.claim < b.claim; });
    for (const auto& c : checks) min_slack = std::min(min_slack, c.min_slack);
    for (const auto& f : failures) min_slack = std::min(min_slack, f.slack);
    passed = failures.empty();
}

void VerificationReport::merge(const VerificationReport& other) {
    range_lo = std::min(range_lo, other.range_lo);
    range_hi = std::max(range_hi, other.range_hi);
    failures.insert(failures.end(), other.failures.begin(), other.failures.end());
    marginal.insert(marginal.end(), other.marginal.begin(), other.marginal.end());
    for (const auto& c : other.checks) {
        auto it = std::find_if(checks.begin(), checks.end(),
                               [&](const CheckSummary& x) { return x.claim == c.claim; });
        if (it == checks.end()) {
            checks.push_back(c);
            continue;
        }
        it->range_lo = std::min(it->range_lo, c.range_lo);
        it->range_hi = std::max(it->range_hi, c.range_hi);
        it->evaluated += c.evaluated;
        if (c.min_slack < it->min_slack ||
            (c.min_slack == it->min_slack && c.argmin < it->argmin)) {
            it->min_slack = c.min_slack;
            it->argmin = c.argmin;
        }
    }
    min_slack = std::min(min_slack, other.min_slack);
    finalize();
}

nlohmann::json to_json(const VerificationReport& report) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : report.checks) {
        checks.push_back({{"claim", c.claim},
                          {"range", {number_json(c.range_lo), number_json(c.range_hi)}},
                          {"evaluated", c.evaluated},
                          {"min_slack", c.min_slack},
                          {"argmin", number_json(c.argmin)}});
    }
    return {{"checked_range", {number_json(report.range_lo), number_json(report.range_hi)}},
            {"passed", report.passed},
            {"min_slack", report.min_slack},
            {"failures", records_json(report.failures)},
            {"marginal", records_json(report.marginal)},
            {"checks", checks}};
}

}  // namespace siegel
