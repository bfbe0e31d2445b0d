#include "rootbias/dims.hpp"

#include "rootbias/arith.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace rootbias {

namespace {

struct GroupCounts {
    std::int64_t index, nu2, nu3, nu_inf, genus;
};

GroupCounts group_counts(std::uint64_t level) {
    const auto f = factor(level);
    GroupCounts g{static_cast<std::int64_t>(level), 1, 1, 0, 0};
    for (auto [p, e] : f) {
        const auto pp = static_cast<std::int64_t>(p);
        g.index = g.index / pp * (pp + 1);
        g.nu2 *= e >= 2 && p == 2 ? 0 : 1 + kronecker(-4, pp);
        g.nu3 *= e >= 2 && p == 3 ? 0 : 1 + kronecker(-3, pp);
    }
    for (std::uint64_t d : divisors(f)) g.nu_inf += static_cast<std::int64_t>(euler_phi(std::gcd(d, level / d)));
    // 12 g = 12 + mu - 3 nu2 - 4 nu3 - 6 nu_inf
    const std::int64_t twelve_g = 12 + g.index - 3 * g.nu2 - 4 * g.nu3 - 6 * g.nu_inf;
    if (twelve_g % 12 != 0) throw std::logic_error("genus formula not integral at N = " + std::to_string(level));
    g.genus = twelve_g / 12;
    return g;
}

std::int64_t dim_from_counts(const GroupCounts& g, int k) {
    if (k == 2) return g.genus;
    return (k - 1) * (g.genus - 1) + (k / 2 - 1) * g.nu_inf + g.nu2 * (k / 4) + g.nu3 * (k / 3);
}

void require_args(std::uint64_t level, int k) {
    if (level == 0) throw std::invalid_argument("level must be positive");
    if (k < 2 || k % 2 != 0) throw std::invalid_argument("weight must be even and >= 2, got " + std::to_string(k));
}

// (mu * mu)(d): -2 at p, 1 at p^2, 0 at higher powers.
int mu_mu(const Factorization& f) {
    int r = 1;
    for (auto [p, e] : f) {
        if (e == 1) r *= -2;
        else if (e > 2) return 0;
    }
    return r;
}

}  // namespace

std::int64_t dim_sk(std::uint64_t level, int k) {
    require_args(level, k);
    return dim_from_counts(group_counts(level), k);
}

std::int64_t dim_sk_new(std::uint64_t level, int k) {
    require_args(level, k);
    std::int64_t d = 0;
    for (std::uint64_t m : divisors(level)) {
        const int w = mu_mu(factor(m));
        if (w != 0) d += w * dim_sk(level / m, k);
    }
    return d;
}

DimensionBreakdown dimension_breakdown(std::uint64_t level, int k) {
    require_args(level, k);
    const GroupCounts g = group_counts(level);
    return {level, k, g.index, g.nu2, g.nu3, g.nu_inf, g.genus, dim_from_counts(g, k), dim_sk_new(level, k)};
}

}  // namespace rootbias
