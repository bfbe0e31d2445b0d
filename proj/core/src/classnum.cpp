#include "rootbias/classnum.hpp"

#include "rootbias/arith.hpp"

#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace rootbias {

namespace {

// Write-once memo table.  Racing writers compute the same value, so the
// first insert wins and later ones are dropped.
class Memo {
public:
    template <class F>
    Rational get(std::int64_t key, F&& compute) {
        {
            std::shared_lock lock(mutex_);
            if (auto it = table_.find(key); it != table_.end()) return it->second;
        }
        Rational v = compute();
        std::unique_lock lock(mutex_);
        return table_.try_emplace(key, std::move(v)).first->second;
    }

    void clear() {
        std::unique_lock lock(mutex_);
        table_.clear();
    }

private:
    std::shared_mutex mutex_;
    std::unordered_map<std::int64_t, Rational> table_;
};

Memo& h_prime_memo() {
    static Memo m;
    return m;
}

Memo& hurwitz_memo() {
    static Memo m;
    return m;
}

void require_negative(const Discriminant& d, const char* what) {
    if (d.value() >= 0)
        throw std::invalid_argument(std::string(what) + ": discriminant must be negative, got " +
                                    std::to_string(d.value()));
}

void require_fundamental(const Discriminant& d, const char* what) {
    if (!d.is_fundamental())
        throw std::invalid_argument(std::string(what) + ": " + std::to_string(d.value()) +
                                    " is not a fundamental discriminant");
}

Rational form_weight(const QuadraticForm& f) {
    if (f.a == f.c && f.b == 0) return Rational(1, 2);
    if (f.a == f.b && f.b == f.c) return Rational(1, 3);
    return Rational(1);
}

template <class Visit>
void for_each_reduced(std::int64_t disc, Visit&& visit) {
    const std::int64_t D = -disc;
    const std::int64_t a_max = static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(D / 3)));
    const std::int64_t parity = D % 2;  // b = d mod 2
    for (std::int64_t a = 1; a <= a_max; ++a) {
        std::int64_t b0 = parity ? -(a % 2 ? a : a - 1) : -(a % 2 ? a - 1 : a);
        for (std::int64_t b = b0; b <= a; b += 2) {
            const std::int64_t num = b * b + D;
            if (num % (4 * a)) continue;
            const std::int64_t c = num / (4 * a);
            if (c < a) continue;
            if (b < 0 && (-b == a || a == c)) continue;
            visit(QuadraticForm{a, b, c});
        }
    }
}

}  // namespace

bool is_fundamental_discriminant(std::int64_t d) {
    if (d == 0 || d == 1) return false;
    const std::int64_t r = ((d % 4) + 4) % 4;
    const std::uint64_t ad = static_cast<std::uint64_t>(d < 0 ? -d : d);
    if (r == 1) return is_squarefree(ad);
    if (r == 0) {
        const std::int64_t m = d / 4;
        const std::int64_t rm = ((m % 4) + 4) % 4;
        return (rm == 2 || rm == 3) && is_squarefree(ad / 4);
    }
    return false;
}

Discriminant::Discriminant(std::int64_t value) : value_(value), fundamental_(0), conductor_(1) {
    if (value > 0) throw std::invalid_argument("discriminant must be <= 0, got " + std::to_string(value));
    const std::int64_t r = ((value % 4) + 4) % 4;
    if (r == 2 || r == 3)
        throw std::invalid_argument("discriminant must be 0 or 1 mod 4, got " + std::to_string(value));
    if (value == 0) return;
    // |value| = f^2 * s with s squarefree.
    std::uint64_t s = 1, f = 1;
    for (auto [p, e] : factor(static_cast<std::uint64_t>(-value))) {
        if (e % 2) s *= p;
        for (unsigned i = 0; i < e / 2; ++i) f *= p;
    }
    const std::int64_t neg_s = -static_cast<std::int64_t>(s);
    if (((neg_s % 4) + 4) % 4 == 1) {
        fundamental_ = neg_s;
        conductor_ = static_cast<std::int64_t>(f);
    } else {
        // value = 0 mod 4 forces f even here.
        fundamental_ = 4 * neg_s;
        conductor_ = static_cast<std::int64_t>(f / 2);
    }
}

std::vector<QuadraticForm> reduced_forms(const Discriminant& d, bool primitive_only) {
    require_negative(d, "reduced_forms");
    std::vector<QuadraticForm> out;
    for_each_reduced(d.value(), [&](const QuadraticForm& f) {
        if (primitive_only && std::gcd(std::gcd(f.a, f.b), f.c) != 1) return;
        out.push_back(f);
    });
    return out;
}

Rational h_prime(const Discriminant& d) {
    require_negative(d, "h_prime");
    return h_prime_memo().get(d.value(), [&] {
        Rational h;
        for_each_reduced(d.value(), [&](const QuadraticForm& f) {
            if (std::gcd(std::gcd(f.a, f.b), f.c) == 1) h += form_weight(f);
        });
        return h;
    });
}

Rational hurwitz(const Discriminant& d) {
    if (d.value() == 0) return Rational(-1, 12);
    return hurwitz_memo().get(d.value(), [&] {
        Rational h;
        for_each_reduced(d.value(), [&](const QuadraticForm& f) { h += form_weight(f); });
        return h;
    });
}

Rational h_prime_scaled(const Discriminant& d_fund, std::uint64_t lambda) {
    require_fundamental(d_fund, "h_prime_scaled");
    if (lambda == 0) throw std::invalid_argument("h_prime_scaled: lambda must be positive");
    std::int64_t scale = 1;
    for (auto [p, e] : factor(lambda)) {
        const auto pp = static_cast<std::int64_t>(p);
        std::int64_t local = pp - kronecker(d_fund.value(), pp);
        for (unsigned i = 1; i < e; ++i) local = checked_mul(local, pp);
        scale = checked_mul(scale, local);
    }
    return Rational(scale) * h_prime(d_fund);
}

Rational h_prime_scaled_mobius(const Discriminant& d_fund, std::uint64_t lambda) {
    require_fundamental(d_fund, "h_prime_scaled_mobius");
    if (lambda == 0) throw std::invalid_argument("h_prime_scaled_mobius: lambda must be positive");
    Rational sum;
    for (std::uint64_t t : divisors(lambda)) {
        const int mu = mobius(t);
        if (mu == 0) continue;
        const int chi = kronecker(d_fund.value(), static_cast<std::int64_t>(t));
        sum += Rational(mu * chi, static_cast<std::int64_t>(t));
    }
    return Rational(static_cast<std::int64_t>(lambda)) * sum * h_prime(d_fund);
}

Rational hurwitz_via_relation(const Discriminant& d_fund, std::uint64_t lambda) {
    require_fundamental(d_fund, "hurwitz_via_relation");
    if (lambda == 0) throw std::invalid_argument("hurwitz_via_relation: lambda must be positive");
    std::int64_t weight = 0;
    for (std::uint64_t t : divisors(lambda)) {
        const int mu = mobius(t);
        if (mu == 0) continue;
        const int chi = kronecker(d_fund.value(), static_cast<std::int64_t>(t));
        weight = checked_add(weight, mu * chi * static_cast<std::int64_t>(sigma(lambda / t)));
    }
    return Rational(weight) * h_prime(d_fund);
}

void clear_class_number_cache() {
    h_prime_memo().clear();
    hurwitz_memo().clear();
}

}  // namespace rootbias
