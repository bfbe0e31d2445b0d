#include "rootbias/arith.hpp"
#include "rootbias/classnum.hpp"

#include <doctest.h>

#include <algorithm>
#include <stdexcept>
#include <thread>

using namespace rootbias;

namespace {

Rational H(std::int64_t d) { return hurwitz(Discriminant(d)); }
Rational hp(std::int64_t d) { return h_prime(Discriminant(d)); }

// Count SL2(Z)-inequivalent positive definite forms of discriminant d by
// brute force over a box, reducing each with the classical algorithm.
std::vector<QuadraticForm> brute_reduced(std::int64_t d) {
    std::vector<QuadraticForm> out;
    const std::int64_t bound = -d;  // a, |b| <= |d| is far more than needed
    for (std::int64_t a = 1; a <= bound; ++a)
        for (std::int64_t b = -a; b <= a; ++b) {
            const std::int64_t num = b * b - d;
            if (num % (4 * a) != 0) continue;
            const std::int64_t c = num / (4 * a);
            if (c < a) continue;
            if ((b < 0) && (-b == a || a == c)) continue;
            out.push_back({a, b, c});
        }
    std::sort(out.begin(), out.end(), [](auto& x, auto& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
    return out;
}

}  // namespace

TEST_CASE("Discriminant split") {
    const Discriminant d(-12);
    CHECK(d.fundamental() == -3);
    CHECK(d.conductor() == 2);
    CHECK(Discriminant(-16).fundamental() == -4);
    CHECK(Discriminant(-16).conductor() == 2);
    CHECK(Discriminant(-148).fundamental() == -148);
    CHECK(Discriminant(-148).is_fundamental());
    CHECK(Discriminant(-300).fundamental() == -3);
    CHECK(Discriminant(-300).conductor() == 10);
    CHECK(Discriminant(-63).fundamental() == -7);
    CHECK(Discriminant(-63).conductor() == 3);
    CHECK(Discriminant(0).value() == 0);
    CHECK_THROWS_AS(Discriminant(-5), std::invalid_argument);
    CHECK_THROWS_AS(Discriminant(5), std::invalid_argument);
    for (std::int64_t v = -4000; v < 0; ++v) {
        if (((v % 4) + 4) % 4 > 1) continue;
        const Discriminant x(v);
        REQUIRE(x.conductor() * x.conductor() * x.fundamental() == v);
        REQUIRE(is_fundamental_discriminant(x.fundamental()));
    }
}

TEST_CASE("fundamental discriminants") {
    for (std::int64_t d : {-3, -4, -7, -8, -11, -15, -20, -24, -148, -163}) CHECK(is_fundamental_discriminant(d));
    for (std::int64_t d : {-12, -16, -27, -28, -32, -36, -5, -1, 0}) CHECK_FALSE(is_fundamental_discriminant(d));
}

TEST_CASE("reduced form examples") {
    CHECK(reduced_forms(Discriminant(-3), false) == std::vector<QuadraticForm>{{1, 1, 1}});
    CHECK(reduced_forms(Discriminant(-148), true) == std::vector<QuadraticForm>{{1, 0, 37}, {2, 2, 19}});
    CHECK(reduced_forms(Discriminant(-12), false) == std::vector<QuadraticForm>{{1, 0, 3}, {2, 2, 2}});
    CHECK(reduced_forms(Discriminant(-12), true) == std::vector<QuadraticForm>{{1, 0, 3}});
}

TEST_CASE("reduced forms agree with a brute force box search") {
    for (std::int64_t d = -3; d >= -1500; --d) {
        if (((d % 4) + 4) % 4 > 1) continue;
        REQUIRE(reduced_forms(Discriminant(d), false) == brute_reduced(d));
    }
}

TEST_CASE("class number values") {
    CHECK(hp(-4) == Rational(1, 2));
    CHECK(hp(-3) == Rational(1, 3));
    CHECK(hp(-148) == Rational(2));
    CHECK(hp(-23) == Rational(3));
    CHECK(hp(-47) == Rational(5));
    CHECK(hp(-163) == Rational(1));
    CHECK(hp(-20) == Rational(2));
    CHECK(H(0) == Rational(-1, 12));
    CHECK(H(-3) == Rational(1, 3));
    CHECK(H(-4) == Rational(1, 2));
    CHECK(H(-12) == Rational(4, 3));
    CHECK(H(-15) == Rational(2));
    CHECK(H(-16) == Rational(3, 2));
    CHECK(H(-23) == Rational(3));
}

TEST_CASE("scaled class numbers, examples") {
    CHECK(h_prime_scaled(Discriminant(-3), 2) == Rational(1));
    CHECK(h_prime_scaled(Discriminant(-4), 3) == Rational(2));  // h(-36) = 2: (1,0,9), (2,2,5)
    CHECK(h_prime_scaled(Discriminant(-148), 1) == hp(-148));
    CHECK(hurwitz_via_relation(Discriminant(-4), 2) == Rational(3, 2));
    CHECK(hurwitz_via_relation(Discriminant(-3), 2) == Rational(4, 3));
    CHECK(hurwitz_via_relation(Discriminant(-23), 1) == hp(-23));
    CHECK_THROWS_AS(h_prime_scaled(Discriminant(-12), 2), std::invalid_argument);
}

TEST_CASE("Kronecker-Hurwitz class number relation") {
    // sum_{t^2 <= 4n} H(t^2 - 4n) = 2 sigma(n) - sum_{d | n} min(d, n/d), with H(0) = -1/12.
    for (std::int64_t n = 1; n <= 1500; ++n) {
        Rational lhs;
        const auto t_max = static_cast<std::int64_t>(isqrt(4 * n));
        for (std::int64_t t = -t_max; t <= t_max; ++t) lhs += H(t * t - 4 * n);
        std::int64_t rhs = 2 * static_cast<std::int64_t>(sigma(n));
        for (std::uint64_t d : divisors(n)) rhs -= static_cast<std::int64_t>(std::min<std::uint64_t>(d, n / d));
        REQUIRE(lhs == Rational(rhs));
    }
}

TEST_CASE("relations between h', H and their product forms") {
    for (std::int64_t d = 3; d <= 1000; ++d) {
        if (!is_fundamental_discriminant(-d)) continue;
        const Discriminant fund(-d);
        for (std::uint64_t lambda = 1; static_cast<std::int64_t>(lambda * lambda) * d <= 12000; ++lambda) {
            const std::int64_t v = -static_cast<std::int64_t>(lambda * lambda) * d;
            Rational sum;
            for (std::uint64_t t : divisors(lambda)) sum += hp(-static_cast<std::int64_t>(t * t) * d);
            REQUIRE(H(v) == sum);
            REQUIRE(h_prime_scaled(fund, lambda) == hp(v));
            REQUIRE(hurwitz_via_relation(fund, lambda) == H(v));
        }
        for (std::uint64_t lambda = 1; lambda <= 1000; lambda += (d < 50 ? 1 : 37))
            REQUIRE(h_prime_scaled(fund, lambda) == h_prime_scaled_mobius(fund, lambda));
    }
}

TEST_CASE("h' >= 1/3 with equality only at -3, 1/2 only at -4") {
    for (std::int64_t d = -3; d >= -3000; --d) {
        if (((d % 4) + 4) % 4 > 1) continue;
        const Rational v = hp(d);
        REQUIRE(v >= Rational(1, 3));
        REQUIRE((v == Rational(1, 3)) == (d == -3));
        REQUIRE((v == Rational(1, 2)) == (d == -4));
    }
}

TEST_CASE("concurrent lookups see consistent values") {
    clear_class_number_cache();
    std::vector<Rational> expected;
    for (std::int64_t d = 3; d <= 3000; d += 4) expected.push_back(H(-d));
    clear_class_number_cache();
    std::vector<std::jthread> threads;
    std::atomic<int> bad{0};
    for (int t = 0; t < 4; ++t)
        threads.emplace_back([&] {
            std::size_t i = 0;
            for (std::int64_t d = 3; d <= 3000; d += 4, ++i)
                if (H(-d) != expected[i]) ++bad;
        });
    threads.clear();
    CHECK(bad == 0);
}
