#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "pbx/errors.hpp"

namespace pbx {

/// Exact non-negative dyadic rational numerator / 2^exponent, stored reduced
/// (numerator odd or zero). All measure arithmetic in the library is exact;
/// floating point is never used.
class DyadicRatio {
public:
    constexpr DyadicRatio() = default;

    constexpr DyadicRatio(std::uint64_t numerator, unsigned exponent)
        : num_(numerator), exp_(exponent) {
        reduce();
    }

    static constexpr DyadicRatio zero() { return DyadicRatio(); }
    static constexpr DyadicRatio one() { return DyadicRatio(1, 0); }
    /// 1 / 2^k
    static constexpr DyadicRatio half_power(unsigned k) { return DyadicRatio(1, k); }

    constexpr std::uint64_t numerator() const { return num_; }
    constexpr unsigned exponent() const { return exp_; }
    constexpr bool is_zero() const { return num_ == 0; }

    friend constexpr DyadicRatio operator+(DyadicRatio a, DyadicRatio b) {
        unsigned e = a.exp_ > b.exp_ ? a.exp_ : b.exp_;
        if (e > 60) throw UsageError("dyadic exponent overflow");
        return DyadicRatio((a.num_ << (e - a.exp_)) + (b.num_ << (e - b.exp_)), e);
    }

    DyadicRatio& operator+=(DyadicRatio other) { return *this = *this + other; }

    friend constexpr DyadicRatio operator*(DyadicRatio a, DyadicRatio b) {
        return DyadicRatio(a.num_ * b.num_, a.exp_ + b.exp_);
    }

    friend constexpr bool operator==(DyadicRatio a, DyadicRatio b) {
        return a.num_ == b.num_ && a.exp_ == b.exp_;
    }

    friend constexpr auto operator<=>(DyadicRatio a, DyadicRatio b) {
        unsigned e = a.exp_ > b.exp_ ? a.exp_ : b.exp_;
        return (a.num_ << (e - a.exp_)) <=> (b.num_ << (e - b.exp_));
    }

    std::string str() const {
        if (exp_ == 0) return std::to_string(num_);
        return std::to_string(num_) + "/2^" + std::to_string(exp_);
    }

private:
    constexpr void reduce() {
        if (num_ == 0) {
            exp_ = 0;
            return;
        }
        while (exp_ > 0 && (num_ & 1u) == 0) {
            num_ >>= 1;
            --exp_;
        }
    }

    std::uint64_t num_ = 0;
    unsigned exp_ = 0;
};

} // namespace pbx
