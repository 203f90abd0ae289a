#ifndef SEATARR_RATIONAL_HPP
#define SEATARR_RATIONAL_HPP

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace seatarr {

/// Exact rational with 64-bit numerator/denominator, always normalized
/// (gcd 1, denominator positive). Comparisons use 128-bit cross products,
/// so they never overflow; arithmetic throws std::overflow_error if a
/// normalized result leaves the 64-bit range. There is no floating-point
/// fallback anywhere: verdicts that hinge on ties stay exact.
class Rational {
public:
    constexpr Rational() noexcept : num_(0), den_(1) {}
    Rational(long long value) noexcept : num_(value), den_(1) {}

    Rational(long long num, long long den) {
        if (den == 0) throw std::invalid_argument("rational: zero denominator");
        init(static_cast<__int128>(num), static_cast<__int128>(den));
    }

    long long num() const noexcept { return num_; }
    long long den() const noexcept { return den_; }

    bool is_zero() const noexcept { return num_ == 0; }
    bool is_negative() const noexcept { return num_ < 0; }
    bool is_positive() const noexcept { return num_ > 0; }
    bool is_integer() const noexcept { return den_ == 1; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return make(static_cast<__int128>(a.num_) * b.den_ +
                        static_cast<__int128>(b.num_) * a.den_,
                    static_cast<__int128>(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return make(static_cast<__int128>(a.num_) * b.den_ -
                        static_cast<__int128>(b.num_) * a.den_,
                    static_cast<__int128>(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return make(static_cast<__int128>(a.num_) * b.num_,
                    static_cast<__int128>(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::invalid_argument("rational: division by zero");
        return make(static_cast<__int128>(a.num_) * b.den_,
                    static_cast<__int128>(a.den_) * b.num_);
    }
    Rational operator-() const {
        Rational r;
        r.num_ = -num_;  // |num_| <= INT64_MAX by construction
        r.den_ = den_;
        return r;
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }

    friend bool operator==(const Rational& a, const Rational& b) noexcept {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) noexcept { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) noexcept {
        return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) noexcept { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) noexcept { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) noexcept { return !(a < b); }

    /// Serialized form: integers as plain digits, terminating decimals as
    /// decimal strings, everything else as "num/den".
    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        // A denominator of the form 2^a * 5^b has a terminating decimal
        // expansion of a bounded number of digits.
        long long d = den_;
        int twos = 0, fives = 0;
        while (d % 2 == 0) { d /= 2; ++twos; }
        while (d % 5 == 0) { d /= 5; ++fives; }
        if (d == 1 && twos <= 18 && fives <= 18) {
            int digits = twos > fives ? twos : fives;
            __int128 scale = 1;
            for (int i = 0; i < digits; ++i) scale *= 10;
            __int128 scaled = static_cast<__int128>(num_) * (scale / den_);
            bool neg = scaled < 0;
            if (neg) scaled = -scaled;
            std::string frac = int128_digits(scaled % scale);
            while (static_cast<int>(frac.size()) < digits) frac.insert(frac.begin(), '0');
            std::string whole = int128_digits(scaled / scale);
            return (neg ? "-" : "") + whole + "." + frac;
        }
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    /// Parses "12", "-3/4", "0.25", "-1.5". Exact; malformed input throws
    /// std::invalid_argument.
    static Rational parse(std::string_view text) {
        if (text.empty()) throw std::invalid_argument("rational: empty string");
        auto slash = text.find('/');
        if (slash != std::string_view::npos) {
            Rational n = parse_decimal(text.substr(0, slash));
            Rational d = parse_decimal(text.substr(slash + 1));
            if (!n.is_integer() || !d.is_integer())
                throw std::invalid_argument("rational: fraction parts must be integers");
            return Rational(n.num(), d.num());
        }
        return parse_decimal(text);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    long long num_;
    long long den_;

    void init(__int128 num, __int128 den) {
        if (den < 0) { num = -num; den = -den; }
        __int128 g = gcd128(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
        if (num > INT64_MAX || num < INT64_MIN || den > INT64_MAX)
            throw std::overflow_error("rational: value out of 64-bit range");
        num_ = static_cast<long long>(num);
        den_ = static_cast<long long>(den);
    }

    static Rational make(__int128 num, __int128 den) {
        Rational r;
        r.init(num, den);
        return r;
    }

    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        return a == 0 ? 1 : a;
    }

    static std::string int128_digits(__int128 v) {
        if (v == 0) return "0";
        std::string s;
        while (v > 0) { s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10))); v /= 10; }
        return s;
    }

    static Rational parse_decimal(std::string_view text) {
        size_t i = 0;
        bool neg = false;
        if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
            neg = text[i] == '-';
            ++i;
        }
        __int128 whole = 0;
        bool any = false;
        for (; i < text.size() && text[i] >= '0' && text[i] <= '9'; ++i) {
            whole = whole * 10 + (text[i] - '0');
            if (whole > static_cast<__int128>(INT64_MAX) * 1000000)
                throw std::overflow_error("rational: literal too large");
            any = true;
        }
        __int128 den = 1;
        if (i < text.size() && text[i] == '.') {
            ++i;
            for (; i < text.size() && text[i] >= '0' && text[i] <= '9'; ++i) {
                whole = whole * 10 + (text[i] - '0');
                den *= 10;
                if (den > static_cast<__int128>(INT64_MAX))
                    throw std::overflow_error("rational: too many decimal digits");
                any = true;
            }
        }
        if (!any || i != text.size())
            throw std::invalid_argument("rational: malformed literal '" + std::string(text) + "'");
        return make(neg ? -whole : whole, den);
    }
};

}  // namespace seatarr

template <>
struct std::hash<seatarr::Rational> {
    size_t operator()(const seatarr::Rational& r) const noexcept {
        return std::hash<long long>()(r.num()) * 1000003u ^ std::hash<long long>()(r.den());
    }
};

#endif
