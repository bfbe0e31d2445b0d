#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace rootbias {

/// Conditions under which the root number bias Delta(N,k) vanishes.
enum class ZeroClass {
    K2_DimZero,            // k = 2 and the new space is zero
    K2_3758,               // k = 2 and N in {37, 58}
    SevenMod8_TwoExactly,  // 2 || N2 and N1 = 7 mod 8
    Level16_K2mod4,        // N = 16, k = 2 mod 4
    Level2Family,          // N = 2 N2^2 exceptions: {8,18} / {2,72} / (2,2)
    Level3Family,          // N = 3 N2^2 exceptions: {3,108} / 12 / (3,2)
    SquareLevelOneBalance, // N = N2^2, N2 squarefree: class number term cancels the level 1 (and 4) term
};

std::string_view to_string(ZeroClass z);

/// Delta(N,k) = dim S_k^new(N)^+ - dim S_k^new(N)^-.
std::int64_t delta(std::uint64_t level, int k);

struct RefinedDims {
    std::int64_t plus;
    std::int64_t minus;
    friend bool operator==(const RefinedDims&, const RefinedDims&) = default;
};

/// Throws std::logic_error if Delta and dim_new disagree in parity or size.
RefinedDims refined_dims(std::uint64_t level, int k);

/// The matching vanishing condition, if any.  Evaluated from level data and
/// dimensions only, never from delta() itself.
std::optional<ZeroClass> classify_zero(std::uint64_t level, int k);

struct BiasRecord {
    std::uint64_t level;
    int weight;
    std::int64_t delta;
    std::int64_t dim_plus;
    std::int64_t dim_minus;
    std::optional<ZeroClass> zero_class;
    /// (-1)^{k/2} mu(sqrt N) for cubefree squares, the sign Delta takes once k is large.
    std::optional<int> predicted_sign_large_k;
};

BiasRecord bias_record(std::uint64_t level, int k);

/// Large-weight sign behaviour at a cubefree square level N = M^2.
struct SignPrediction {
    int mobius_root;               // mu(M)
    std::optional<int> threshold;  // smallest even k0 with the predicted sign on [k0, k_max]
    int k_max;

    int sign_at(int k) const;
};

/// Empty unless N is a cubefree square.
std::optional<SignPrediction> sign_prediction_large_k(std::uint64_t level, int k_max = 240);

/// Delta restricted to newforms that are not twists from level 1.
/// Requires N = M^2 with M > 1 squarefree (std::invalid_argument otherwise).
std::int64_t delta_prime(std::uint64_t level, int k);

/// True iff some odd p has p^2 || N and (-N/p^2 / p) = 1; root numbers of
/// twist-minimal newforms at such levels are perfectly balanced.
bool minimal_balance(std::uint64_t level);

struct NegativeHit {
    std::uint64_t level;
    int weight;
    std::int64_t delta;
    friend bool operator==(const NegativeHit&, const NegativeHit&) = default;
};

/// All (N,k) with N <= n_max, even k <= k_max and Delta(N,k) < 0, sorted by (N,k).
std::vector<NegativeHit> scan_negative(std::uint64_t n_max, int k_max, unsigned jobs = 0);

}  // namespace rootbias
