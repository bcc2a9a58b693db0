#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <limits>

namespace pwlab {

/// Non-negative magnitude stored as its natural logarithm; zero is -inf.
class LogMagnitude {
public:
    constexpr LogMagnitude() = default;

    static constexpr LogMagnitude zero() { return LogMagnitude(); }
    static LogMagnitude fromLog(double logValue) { return LogMagnitude(logValue); }
    static LogMagnitude fromValue(double value) {
        return value > 0 ? LogMagnitude(std::log(value)) : LogMagnitude();
    }

    double log() const { return log_; }
    bool isZero() const { return log_ == -std::numeric_limits<double>::infinity(); }
    bool isFinite() const { return std::isfinite(log_); }
    /// exp(log); overflows to +inf for huge magnitudes.
    double value() const { return std::exp(log_); }

    LogMagnitude operator*(LogMagnitude other) const {
        if (isZero() || other.isZero()) return zero();
        return LogMagnitude(log_ + other.log_);
    }
    LogMagnitude pow(double exponent) const {
        if (isZero()) return exponent > 0 ? zero() : LogMagnitude(0.0);
        return LogMagnitude(log_ * exponent);
    }

    auto operator<=>(const LogMagnitude&) const = default;

private:
    explicit LogMagnitude(double l) : log_(l) {}
    double log_ = -std::numeric_limits<double>::infinity();
};

/// Streaming log-sum-exp: accumulates log(sum exp(term)) without overflow.
class LogSumAccumulator {
public:
    void add(double logTerm) {
        if (logTerm == -std::numeric_limits<double>::infinity()) return;
        if (logTerm > max_) {
            sum_ = (max_ == -std::numeric_limits<double>::infinity()) ? 1.0
                                                                      : sum_ * std::exp(max_ - logTerm) + 1.0;
            max_ = logTerm;
        } else {
            sum_ += std::exp(logTerm - max_);
        }
    }
    double result() const {
        if (max_ == -std::numeric_limits<double>::infinity()) return max_;
        return max_ + std::log(sum_);
    }

private:
    double max_ = -std::numeric_limits<double>::infinity();
    double sum_ = 0.0;
};

/// Log of an L^p (or L^inf) Riemann sum: (log cell + log sum |.|^p) / p.
class LogLpAccumulator {
public:
    LogLpAccumulator(double p, double logCell) : p_(p), logCell_(logCell) {}
    void add(double logAbs) {
        if (std::isinf(p_)) {
            maxLog_ = std::max(maxLog_, logAbs);
        } else {
            sum_.add(p_ * logAbs);
        }
    }
    double result() const {
        if (std::isinf(p_)) return maxLog_;
        double s = sum_.result();
        if (s == -std::numeric_limits<double>::infinity()) return s;
        return (s + logCell_) / p_;
    }

private:
    double p_;
    double logCell_;
    double maxLog_ = -std::numeric_limits<double>::infinity();
    LogSumAccumulator sum_;
};

}  // namespace pwlab
