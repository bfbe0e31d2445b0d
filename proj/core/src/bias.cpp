#include "rootbias/bias.hpp"

#include "rootbias/arith.hpp"
#include "rootbias/dims.hpp"
#include "rootbias/parallel.hpp"
#include "rootbias/rational.hpp"
#include "rootbias/trace.hpp"

#include <stdexcept>
#include <string>

namespace rootbias {

namespace {

void require_args(std::uint64_t level, int k) {
    if (level == 0) throw std::invalid_argument("level must be positive");
    if (k < 2 || k % 2 != 0) throw std::invalid_argument("weight must be even and >= 2, got " + std::to_string(k));
}

// Delta at N = N2^2 (N2 squarefree) split as class number term plus the
// contribution of old forms from levels 1 and 4.
bool square_level_balances(std::uint64_t n2, int k) {
    const Rational s(sign_half_weight(k));
    const Rational mu(mobius(n2));
    const Rational c(c_coeff(-4, n2));
    const Rational dim1(dim_sk(1, k));
    const Rational d2(k == 2 ? 1 : 0);
    Rational total;
    if (n2 % 2 == 1) {
        total = (c - mu) / Rational(4) + s * mu * (dim1 - d2) + s * d2 * Rational(n2 == 1 ? 1 : 0);
    } else {
        total = (c + mu) / Rational(4) + s * mu * (dim1 - Rational(small_level_trace(4, k)));
    }
    return total == Rational(0);
}

}  // namespace

std::string_view to_string(ZeroClass z) {
    switch (z) {
        case ZeroClass::K2_DimZero: return "K2_DimZero";
        case ZeroClass::K2_3758: return "K2_3758";
        case ZeroClass::SevenMod8_TwoExactly: return "SevenMod8_TwoExactly";
        case ZeroClass::Level16_K2mod4: return "Level16_K2mod4";
        case ZeroClass::Level2Family: return "Level2Family";
        case ZeroClass::Level3Family: return "Level3Family";
        case ZeroClass::SquareLevelOneBalance: return "SquareLevelOneBalance";
    }
    return "?";
}

std::int64_t delta(std::uint64_t level, int k) { return sign_half_weight(k) * trace_new_closed(level, k); }

RefinedDims refined_dims(std::uint64_t level, int k) {
    const std::int64_t d = delta(level, k);
    const std::int64_t dim = dim_sk_new(level, k);
    if ((dim + d) % 2 != 0 || d > dim || -d > dim)
        throw std::logic_error("Delta(" + std::to_string(level) + "," + std::to_string(k) + ") = " + std::to_string(d) +
                               " is incompatible with dim S_k^new = " + std::to_string(dim));
    return {(dim + d) / 2, (dim - d) / 2};
}

std::optional<ZeroClass> classify_zero(std::uint64_t level, int k) {
    require_args(level, k);
    const auto dec = decompose_level(level);
    const std::uint64_t n1 = dec.squarefree_part, n2 = dec.square_root_part;
    const int r8 = k % 8, r12 = k % 12;

    switch (newform_case(level)) {
        case NewformCase::Generic:
            if (n2 % 4 == 2 && n1 % 8 == 7) return ZeroClass::SevenMod8_TwoExactly;
            if (k == 2 && dim_sk_new(level, 2) == 0) return ZeroClass::K2_DimZero;
            if (k == 2 && (level == 37 || level == 58)) return ZeroClass::K2_3758;
            return std::nullopt;
        case NewformCase::Square_OddRoot:
        case NewformCase::Square_EvenRoot:
            if (k == 2 && dim_sk_new(level, 2) == 0) return ZeroClass::K2_DimZero;
            if (square_level_balances(n2, k)) return ZeroClass::SquareLevelOneBalance;
            return std::nullopt;
        case NewformCase::Square_TwiceEven:
            if (level == 16 && k % 4 == 2) return ZeroClass::Level16_K2mod4;
            return std::nullopt;
        case NewformCase::TwiceSquare:
            if ((level == 8 || level == 18) && (r8 == 0 || r8 == 2)) return ZeroClass::Level2Family;
            if ((level == 2 || level == 72) && (r8 == 4 || r8 == 6)) return ZeroClass::Level2Family;
            if (level == 2 && k == 2) return ZeroClass::Level2Family;
            return std::nullopt;
        case NewformCase::ThriceSquare:
            if ((level == 3 || level == 108) && (r12 == 4 || r12 == 10)) return ZeroClass::Level3Family;
            if (level == 12 && r12 != 4 && r12 != 10) return ZeroClass::Level3Family;
            if (level == 3 && k == 2) return ZeroClass::Level3Family;
            return std::nullopt;
        case NewformCase::SmallLevel:
            break;
    }
    return std::nullopt;
}

BiasRecord bias_record(std::uint64_t level, int k) {
    const RefinedDims dims = refined_dims(level, k);
    BiasRecord rec{level, k, dims.plus - dims.minus, dims.plus, dims.minus, classify_zero(level, k), std::nullopt};
    if (is_cubefree_square(level)) rec.predicted_sign_large_k = sign_half_weight(k) * mobius(exact_sqrt(level));
    return rec;
}

int SignPrediction::sign_at(int k) const { return sign_half_weight(k) * mobius_root; }

std::optional<SignPrediction> sign_prediction_large_k(std::uint64_t level, int k_max) {
    if (level == 0) throw std::invalid_argument("level must be positive");
    if (!is_cubefree_square(level)) return std::nullopt;
    SignPrediction pred{mobius(exact_sqrt(level)), std::nullopt, k_max};
    for (int k = k_max - k_max % 2; k >= 2; k -= 2) {
        const std::int64_t d = delta(level, k);
        const int sign = (d > 0) - (d < 0);
        if (sign != pred.sign_at(k)) break;
        pred.threshold = k;
    }
    return pred;
}

std::int64_t delta_prime(std::uint64_t level, int k) {
    require_args(level, k);
    const std::uint64_t m = exact_sqrt(level);
    if (m <= 1 || !is_squarefree(m))
        throw std::invalid_argument("delta_prime: level " + std::to_string(level) +
                                    " is not the square of a squarefree M > 1");
    const std::int64_t d = delta(level, k);
    if (m % 2 == 0) return d;
    // Quadratic twists of level 1 forms have W_N eigenvalue prod (-1/p),
    // hence root number (-1)^{k/2} prod (-1/p).
    int chi = 1;
    for (auto [p, e] : factor(m)) chi *= kronecker(-4, static_cast<std::int64_t>(p));
    return d - sign_half_weight(k) * chi * dim_sk(1, k);
}

bool minimal_balance(std::uint64_t level) {
    if (level == 0) throw std::invalid_argument("level must be positive");
    for (auto [p, e] : factor(level)) {
        if (p == 2 || e != 2) continue;
        const auto rest = static_cast<std::int64_t>(level / (p * p));
        if (kronecker(-rest, static_cast<std::int64_t>(p)) == 1) return true;
    }
    return false;
}

std::vector<NegativeHit> scan_negative(std::uint64_t n_max, int k_max, unsigned jobs) {
    if (n_max < 1 || k_max < 2) throw std::invalid_argument("scan_negative: bounds must be >= 1 and >= 2");
    std::vector<std::vector<NegativeHit>> per_level(n_max + 1);
    parallel_for(1, n_max, jobs, [&](std::uint64_t n) {
        for (int k = 2; k <= k_max; k += 2) {
            const std::int64_t d = delta(n, k);
            if (d < 0) per_level[n].push_back({n, k, d});
        }
    });
    std::vector<NegativeHit> hits;
    for (auto& v : per_level) hits.insert(hits.end(), v.begin(), v.end());
    return hits;
}

}  // namespace rootbias
