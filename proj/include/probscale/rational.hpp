/**
 * @file rational.hpp
 * @brief Exact rational arithmetic for scaling exponents.
 *
 * Every exponent and threshold in the exponents module is an exact
 * fraction. Values are kept in lowest terms with a positive denominator;
 * zero is stored as 0/1. All arithmetic and comparisons are integer-exact,
 * no floating point is involved anywhere in this type.
 */
#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <ostream>

namespace probscale {

class Rational {
public:
    constexpr Rational() : num_(0), den_(1) {}
    constexpr Rational(std::int64_t n) : num_(n), den_(1) {}
    constexpr Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) {
        normalize();
    }

    constexpr std::int64_t num() const { return num_; }
    constexpr std::int64_t den() const { return den_; }

    constexpr bool is_integer() const { return den_ == 1; }
    constexpr int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

    constexpr Rational operator-() const { return Rational(-num_, den_); }

    constexpr Rational operator+(const Rational& r) const {
        return Rational(num_ * r.den_ + r.num_ * den_, den_ * r.den_);
    }
    constexpr Rational operator-(const Rational& r) const {
        return Rational(num_ * r.den_ - r.num_ * den_, den_ * r.den_);
    }
    constexpr Rational operator*(const Rational& r) const {
        return Rational(num_ * r.num_, den_ * r.den_);
    }
    constexpr Rational operator/(const Rational& r) const {
        if (r.num_ == 0) throw std::domain_error("Rational: division by zero");
        return Rational(num_ * r.den_, den_ * r.num_);
    }

    constexpr Rational& operator+=(const Rational& r) { return *this = *this + r; }
    constexpr Rational& operator-=(const Rational& r) { return *this = *this - r; }
    constexpr Rational& operator*=(const Rational& r) { return *this = *this * r; }
    constexpr Rational& operator/=(const Rational& r) { return *this = *this / r; }

    constexpr bool operator==(const Rational& r) const {
        return num_ == r.num_ && den_ == r.den_;
    }
    constexpr bool operator!=(const Rational& r) const { return !(*this == r); }

    // den_ > 0 on both sides, so cross multiplication preserves order.
    constexpr bool operator<(const Rational& r) const {
        return num_ * r.den_ < r.num_ * den_;
    }
    constexpr bool operator>(const Rational& r) const { return r < *this; }
    constexpr bool operator<=(const Rational& r) const { return !(r < *this); }
    constexpr bool operator>=(const Rational& r) const { return !(*this < r); }

    double to_double() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    /// "a/b", or just "a" when the value is an integer.
    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    /// Decimal rendering, exact when the expansion terminates within
    /// 15 digits, rounded otherwise.
    std::string decimal() const;

    /// Parses "a", "a/b", or "-a/b". Accepts both ASCII '-' and U+2212.
    static Rational parse(const std::string& text);

private:
    std::int64_t num_;
    std::int64_t den_;

    constexpr void normalize() {
        if (den_ == 0) throw std::domain_error("Rational: zero denominator");
        if (num_ == 0) {
            den_ = 1;
            return;
        }
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        num_ /= g;
        den_ /= g;
    }
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
}

/// A rational threshold endpoint plus whether the interval it bounds is
/// open there (the "s-" in statements like "supported in H^{s-}").
struct Threshold {
    Rational value;
    bool open_endpoint = false;
};

} // namespace probscale
