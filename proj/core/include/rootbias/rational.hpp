#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace rootbias {

using BigRational = boost::multiprecision::cpp_rational;
__extension__ using Int128 = __int128;

/// Exact fraction, always in lowest terms with a positive denominator.
///
/// Values live in a pair of int64 as long as they fit.  Any operation whose
/// reduced result does not fit is carried out in arbitrary precision and the
/// value stays promoted until a later result fits again.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit from integers
    Rational(std::int64_t n, std::int64_t d);
    explicit Rational(const BigRational& v);

    std::int64_t numerator() const;
    std::int64_t denominator() const;
    BigRational to_big() const;

    bool is_integer() const;
    bool is_promoted() const { return big_.has_value(); }

    /// Integer value; throws std::logic_error when the denominator is not 1.
    std::int64_t to_integer() const;

    std::string str() const;

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational operator-() const;

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b);
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    int sign() const;

private:
    static Rational from_wide(Int128 n, Int128 d);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    std::optional<BigRational> big_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace rootbias
