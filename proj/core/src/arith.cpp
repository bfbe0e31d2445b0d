#include "rootbias/arith.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace rootbias {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("int64 multiplication overflow");
    return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("int64 addition overflow");
    return r;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("uint64 multiplication overflow");
    return r;
}

Factorization factor(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("factor: n must be positive");
    Factorization f;
    auto strip = [&](std::uint64_t p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e > 0) f.push_back({p, e});
    };
    strip(2);
    strip(3);
    strip(5);
    // 2*3*5 wheel: the residues coprime to 30, offset from 7.
    static constexpr std::uint64_t kGaps[] = {4, 2, 4, 2, 4, 6, 2, 6};
    std::uint64_t p = 7;
    for (unsigned i = 0; p <= n / p; p += kGaps[i++ % 8]) strip(p);
    if (n > 1) f.push_back({n, 1});
    return f;
}

std::uint64_t multiply_out(const Factorization& f) {
    std::uint64_t n = 1;
    for (auto [p, e] : f)
        for (unsigned i = 0; i < e; ++i) n = checked_mul(n, p);
    return n;
}

std::vector<std::uint64_t> divisors(const Factorization& f) {
    std::vector<std::uint64_t> ds{1};
    for (auto [p, e] : f) {
        const std::size_t base = ds.size();
        std::uint64_t pk = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < base; ++j) ds.push_back(ds[j] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) { return divisors(factor(n)); }

LevelDecomposition decompose_level(std::uint64_t n) {
    LevelDecomposition d{n, 1, 1, factor(n)};
    for (auto [p, e] : d.factorization) {
        if (e % 2) d.squarefree_part *= p;
        for (unsigned i = 0; i < e / 2; ++i) d.square_root_part *= p;
    }
    return d;
}

int mobius(std::uint64_t n) {
    int m = 1;
    for (auto [p, e] : factor(n)) {
        if (e > 1) return 0;
        m = -m;
    }
    return m;
}

std::uint64_t euler_phi(std::uint64_t n) {
    std::uint64_t r = n;
    for (auto [p, e] : factor(n)) r = r / p * (p - 1);
    return r;
}

std::uint64_t sigma(std::uint64_t n) {
    std::uint64_t r = 1;
    for (auto [p, e] : factor(n)) {
        std::uint64_t term = 1, pk = 1;
        for (unsigned i = 0; i < e; ++i) {
            pk = checked_mul(pk, p);
            term += pk;
        }
        r = checked_mul(r, term);
    }
    return r;
}

std::uint64_t sigma0(std::uint64_t n) {
    std::uint64_t r = 1;
    for (auto [p, e] : factor(n)) r *= e + 1;
    return r;
}

unsigned omega(std::uint64_t n) { return static_cast<unsigned>(factor(n).size()); }

std::uint64_t odd_part(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("odd_part: n must be positive");
    while (n % 2 == 0) n /= 2;
    return n;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    auto f = factor(n);
    return f.size() == 1 && f[0].exponent == 1;
}

unsigned vp(std::uint64_t n, std::uint64_t p) {
    if (n == 0) throw std::invalid_argument("vp: n must be positive");
    if (!is_prime(p)) throw std::invalid_argument("vp: " + std::to_string(p) + " is not prime");
    unsigned e = 0;
    while (n % p == 0) {
        n /= p;
        ++e;
    }
    return e;
}

bool is_squarefree(std::uint64_t n) { return mobius(n) != 0; }

std::uint64_t isqrt(std::uint64_t n) {
    std::uint64_t r = 0;
    for (std::uint64_t bit = std::uint64_t{1} << 31; bit; bit >>= 1) {
        std::uint64_t c = r | bit;
        if (c * c <= n) r = c;
    }
    return r;
}

std::uint64_t exact_sqrt(std::uint64_t n) {
    std::uint64_t r = isqrt(n);
    return r * r == n ? r : 0;
}

bool is_cubefree_square(std::uint64_t n) {
    std::uint64_t m = exact_sqrt(n);
    return m != 0 && is_squarefree(m);
}

int kronecker(std::int64_t a, std::int64_t n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -1;
    }
    // Factor of two in n: (a/2) = 0, 1, -1 for a even, a = +-1 mod 8, a = +-3 mod 8.
    int twos = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++twos;
    }
    if (twos > 0) {
        if (a % 2 == 0) return 0;
        const std::int64_t r8 = ((a % 8) + 8) % 8;
        if ((twos % 2) && (r8 == 3 || r8 == 5)) result = -result;
    }
    // Now n is odd and positive: Jacobi symbol.
    std::int64_t m = a % n;
    if (m < 0) m += n;
    std::int64_t nn = n;
    while (m != 0) {
        while (m % 2 == 0) {
            m /= 2;
            const std::int64_t r = nn % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(m, nn);
        if (m % 4 == 3 && nn % 4 == 3) result = -result;
        m %= nn;
    }
    return nn == 1 ? result : 0;
}

}  // namespace rootbias
