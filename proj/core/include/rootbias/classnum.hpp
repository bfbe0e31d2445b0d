#pragma once

#include "rootbias/rational.hpp"

#include <cstdint>
#include <vector>

namespace rootbias {

/// A non-positive discriminant with its fundamental/conductor split.
///
/// For value < 0, value = conductor^2 * fundamental with fundamental a
/// fundamental discriminant.  value = 0 is admitted only for H(0); it is
/// stored with fundamental = 0 and conductor = 1.
class Discriminant {
public:
    /// Throws std::invalid_argument unless value <= 0 and value = 0, 1 mod 4.
    explicit Discriminant(std::int64_t value);

    std::int64_t value() const { return value_; }
    std::int64_t fundamental() const { return fundamental_; }
    std::int64_t conductor() const { return conductor_; }
    /// |value|, the "D" of -D.
    std::int64_t magnitude() const { return -value_; }
    bool is_fundamental() const { return value_ < 0 && conductor_ == 1; }

private:
    std::int64_t value_;
    std::int64_t fundamental_;
    std::int64_t conductor_;
};

bool is_fundamental_discriminant(std::int64_t d);

struct QuadraticForm {
    std::int64_t a, b, c;
    friend bool operator==(const QuadraticForm&, const QuadraticForm&) = default;
};

/// Reduced positive-definite forms (a,b,c) of discriminant d.value():
/// |b| <= a <= c, and b >= 0 whenever |b| = a or a = c.  Sorted by (a, b).
std::vector<QuadraticForm> reduced_forms(const Discriminant& d, bool primitive_only);

/// Weighted class number h'(d): primitive reduced forms, the form of
/// discriminant -4 counted 1/2 and that of -3 counted 1/3.  Enumerated.
Rational h_prime(const Discriminant& d);

/// Hurwitz class number: all reduced forms, (a,0,a) weighted 1/2 and
/// (a,a,a) weighted 1/3.  H(0) = -1/12.  Enumerated.
Rational hurwitz(const Discriminant& d);

/// h'(lambda^2 * d_fund) via the Euler-product relation
/// lambda * prod_{p | lambda} (1 - (d/p)/p) * h'(d_fund).
Rational h_prime_scaled(const Discriminant& d_fund, std::uint64_t lambda);

/// Same quantity through the Mobius sum lambda * sum_{t | lambda} mu(t) (d/t) / t * h'(d_fund).
Rational h_prime_scaled_mobius(const Discriminant& d_fund, std::uint64_t lambda);

/// H(lambda^2 * d_fund) = sum_{t | lambda} mu(t) (d/t) sigma(lambda/t) h'(d_fund).
Rational hurwitz_via_relation(const Discriminant& d_fund, std::uint64_t lambda);

/// Drops the memoized h' and H tables (tests and benchmarks only).
void clear_class_number_cache();

}  // namespace rootbias
