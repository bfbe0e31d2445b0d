#pragma once

#include <cstdint>
#include <vector>

namespace rootbias {

struct PrimePower {
    std::uint64_t prime;
    unsigned exponent;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime factorization, primes strictly increasing.  Empty means 1.
using Factorization = std::vector<PrimePower>;

/// Throws std::invalid_argument for n = 0.
Factorization factor(std::uint64_t n);

/// Product of p^e; throws std::overflow_error if it does not fit.
std::uint64_t multiply_out(const Factorization& f);

/// All positive divisors in ascending order.
std::vector<std::uint64_t> divisors(std::uint64_t n);
std::vector<std::uint64_t> divisors(const Factorization& f);

/// N = N1 * N2^2 with N1 squarefree.
struct LevelDecomposition {
    std::uint64_t level;
    std::uint64_t squarefree_part;  // N1
    std::uint64_t square_root_part; // N2
    Factorization factorization;
};

LevelDecomposition decompose_level(std::uint64_t n);

int mobius(std::uint64_t n);
std::uint64_t euler_phi(std::uint64_t n);
std::uint64_t sigma(std::uint64_t n);
/// Number of divisors.
std::uint64_t sigma0(std::uint64_t n);
/// Number of distinct prime divisors.
unsigned omega(std::uint64_t n);
std::uint64_t odd_part(std::uint64_t n);
/// p-adic valuation; p must be prime.
unsigned vp(std::uint64_t n, std::uint64_t p);

bool is_prime(std::uint64_t n);
bool is_squarefree(std::uint64_t n);
/// n = m^2 with m squarefree (this includes n = 1).
bool is_cubefree_square(std::uint64_t n);
/// Exact integer square root when n is a perfect square, 0 otherwise.
std::uint64_t exact_sqrt(std::uint64_t n);
std::uint64_t isqrt(std::uint64_t n);

/// Kronecker symbol (a/n), full extension to all integers n.
int kronecker(std::int64_t a, std::int64_t n);

/// Overflow-checked helpers; throw std::overflow_error.
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);

/// (-1)^(k/2) for even k.
inline int sign_half_weight(int k) { return (k / 2) % 2 == 0 ? 1 : -1; }

}  // namespace rootbias
