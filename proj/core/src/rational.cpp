#include "rootbias/rational.hpp"

#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace rootbias {

namespace {

using i128 = Int128;

constexpr i128 kMin64 = std::numeric_limits<std::int64_t>::min();
constexpr i128 kMax64 = std::numeric_limits<std::int64_t>::max();

i128 abs128(i128 x) { return x < 0 ? -x : x; }

i128 gcd128(i128 a, i128 b) {
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool fits64(i128 x) { return x >= kMin64 && x <= kMax64; }

BigRational make_big(std::int64_t n, std::int64_t d) {
    return BigRational(boost::multiprecision::cpp_int(n), boost::multiprecision::cpp_int(d));
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
    if (d == 0) throw std::domain_error("Rational: zero denominator");
    *this = from_wide(n, d);
}

Rational::Rational(const BigRational& v) {
    using boost::multiprecision::cpp_int;
    const cpp_int& n = boost::multiprecision::numerator(v);
    const cpp_int& d = boost::multiprecision::denominator(v);
    if (n >= cpp_int(std::numeric_limits<std::int64_t>::min()) &&
        n <= cpp_int(std::numeric_limits<std::int64_t>::max()) &&
        d <= cpp_int(std::numeric_limits<std::int64_t>::max())) {
        num_ = n.convert_to<std::int64_t>();
        den_ = d.convert_to<std::int64_t>();
    } else {
        big_ = v;
    }
}

Rational Rational::from_wide(i128 n, i128 d) {
    if (d < 0) {
        n = -n;
        d = -d;
    }
    i128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    Rational r;
    if (fits64(n) && fits64(d)) {
        r.num_ = static_cast<std::int64_t>(n);
        r.den_ = static_cast<std::int64_t>(d);
        return r;
    }
    auto to_cpp = [](i128 x) {
        boost::multiprecision::cpp_int v = static_cast<std::int64_t>(x >> 64);
        v <<= 64;
        v += static_cast<std::uint64_t>(x);
        return v;
    };
    r.big_ = BigRational(to_cpp(n), to_cpp(d));
    return r;
}

std::int64_t Rational::numerator() const {
    if (big_) throw std::overflow_error("Rational: numerator exceeds 64 bits");
    return num_;
}

std::int64_t Rational::denominator() const {
    if (big_) throw std::overflow_error("Rational: denominator exceeds 64 bits");
    return den_;
}

BigRational Rational::to_big() const { return big_ ? *big_ : make_big(num_, den_); }

bool Rational::is_integer() const {
    return big_ ? boost::multiprecision::denominator(*big_) == 1 : den_ == 1;
}

std::int64_t Rational::to_integer() const {
    if (!is_integer()) throw std::logic_error("expected an integer, got " + str());
    if (big_) throw std::overflow_error("integer result exceeds 64 bits: " + str());
    return num_;
}

int Rational::sign() const {
    if (big_) return big_->sign();
    return (num_ > 0) - (num_ < 0);
}

std::string Rational::str() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

Rational operator+(const Rational& a, const Rational& b) {
    if (a.big_ || b.big_) return Rational(a.to_big() + b.to_big());
    i128 n = i128(a.num_) * b.den_ + i128(b.num_) * a.den_;
    return Rational::from_wide(n, i128(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
    if (a.big_ || b.big_) return Rational(a.to_big() * b.to_big());
    // Cross-cancel first so the common case never widens.
    i128 g1 = gcd128(a.num_, b.den_);
    i128 g2 = gcd128(b.num_, a.den_);
    if (g1 == 0) g1 = 1;
    if (g2 == 0) g2 = 1;
    i128 n = (i128(a.num_) / g1) * (i128(b.num_) / g2);
    i128 d = (i128(a.den_) / g2) * (i128(b.den_) / g1);
    return Rational::from_wide(n, d);
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.sign() == 0) throw std::domain_error("Rational: division by zero");
    if (a.big_ || b.big_) return Rational(a.to_big() / b.to_big());
    return a * Rational::from_wide(b.den_, b.num_);
}

Rational Rational::operator-() const {
    if (big_) return Rational(BigRational(-*big_));
    if (num_ == std::numeric_limits<std::int64_t>::min()) return from_wide(-i128(num_), den_);
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

bool operator==(const Rational& a, const Rational& b) {
    if (a.big_ || b.big_) return a.to_big() == b.to_big();
    return a.num_ == b.num_ && a.den_ == b.den_;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.big_ || b.big_) {
        BigRational x = a.to_big(), y = b.to_big();
        if (x < y) return std::strong_ordering::less;
        if (x > y) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }
    return i128(a.num_) * b.den_ <=> i128(b.num_) * a.den_;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    if (r.is_promoted()) return os << r.to_big();
    os << r.numerator();
    if (r.denominator() != 1) os << '/' << r.denominator();
    return os;
}

}  // namespace rootbias
