#pragma once

#include <charconv>
#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>

#include "rightsrisk/error.hpp"

namespace rightsrisk {

// Exact rational on 64-bit integers, always in lowest terms with a positive
// denominator. Intermediates are widened to 128 bits; a result that does not
// fit back into 64 bits throws Error.
class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t value) : num_(value) {} // NOLINT(implicit)
    Rational(std::int64_t num, std::int64_t den) { assign(num, den); }

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }

    bool is_zero() const noexcept { return num_ == 0; }
    int sign() const noexcept { return (num_ > 0) - (num_ < 0); }
    double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

    Rational operator-() const {
        Rational r;
        r.assign(-wide(num_), den_);
        return r;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        Rational r;
        r.assign(wide(a.num_) * b.den_ + wide(b.num_) * a.den_, wide(a.den_) * b.den_);
        return r;
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        Rational r;
        r.assign(wide(a.num_) * b.num_, wide(a.den_) * b.den_);
        return r;
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw Error("rational division by zero");
        Rational r;
        r.assign(wide(a.num_) * b.den_, wide(a.den_) * b.num_);
        return r;
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }

    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        return wide(a.num_) * b.den_ <=> wide(b.num_) * a.den_;
    }

    // "p" for integers, "p/q" otherwise.
    std::string str() const {
        std::string out = std::to_string(num_);
        if (den_ != 1) out += '/' + std::to_string(den_);
        return out;
    }

    static Rational parse(std::string_view text) {
        auto slash = text.find('/');
        auto read = [&](std::string_view part) {
            std::int64_t v = 0;
            auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
            if (ec != std::errc{} || ptr != part.data() + part.size() || part.empty())
                throw Error("malformed rational '" + std::string(text) + "'");
            return v;
        };
        if (slash == std::string_view::npos) return Rational(read(text));
        std::int64_t den = read(text.substr(slash + 1));
        if (den == 0) throw Error("zero denominator in '" + std::string(text) + "'");
        return Rational(read(text.substr(0, slash)), den);
    }

private:
    using wide_t = __int128;
    static wide_t wide(std::int64_t v) { return static_cast<wide_t>(v); }

    static wide_t gcd(wide_t a, wide_t b) {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b != 0) {
            wide_t t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    void assign(wide_t num, wide_t den) {
        if (den == 0) throw Error("rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        wide_t g = gcd(num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        constexpr wide_t lo = std::numeric_limits<std::int64_t>::min();
        constexpr wide_t hi = std::numeric_limits<std::int64_t>::max();
        if (num < lo || num > hi || den > hi) throw Error("rational overflow");
        num_ = static_cast<std::int64_t>(num);
        den_ = static_cast<std::int64_t>(den);
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

} // namespace rightsrisk
