#pragma once

#include <cstdint>

namespace rootbias {

/// Index, elliptic point and cusp counts of Gamma0(N) and the resulting
/// cusp form dimensions in weight k.
struct DimensionBreakdown {
    std::uint64_t level;
    int weight;
    std::int64_t index_mu;
    std::int64_t nu2;
    std::int64_t nu3;
    std::int64_t nu_inf;
    std::int64_t genus;
    std::int64_t dim_full;
    std::int64_t dim_new;
};

DimensionBreakdown dimension_breakdown(std::uint64_t level, int k);

/// dim S_k(Gamma0(N)) from the valence formula.
std::int64_t dim_sk(std::uint64_t level, int k);

/// dim S_k^new(Gamma0(N)) = sum_{d | N} (mu*mu)(d) dim S_k(N/d).
std::int64_t dim_sk_new(std::uint64_t level, int k);

}  // namespace rootbias
