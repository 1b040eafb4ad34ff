#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace siegel {

/// Precondition violated by the caller.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Evaluation requested exactly at a pole.
class PoleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Argument outside the envelope an evaluator has been validated for.
class UnsupportedDomain : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A certified inequality chain broke; `link()` names the failed step.
class CertificationFailure : public std::runtime_error {
public:
    CertificationFailure(std::string link, const std::string& what)
        : std::runtime_error(what), link_(std::move(link)) {}
    const std::string& link() const noexcept { return link_; }

private:
    std::string link_;
};

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
    CompensatedSum() = default;
    explicit CompensatedSum(double init) : sum_(init) {}

    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    CompensatedSum& operator+=(double x) noexcept {
        add(x);
        return *this;
    }
    CompensatedSum& operator+=(const CompensatedSum& o) noexcept {
        add(o.sum_);
        add(o.comp_);
        return *this;
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kEuler = 2.71828182845904523536028747135266250;

/// Integer square root: largest r with r*r <= n.
inline std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

}  // namespace siegel
