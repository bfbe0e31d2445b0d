#pragma once

#include "rootbias/arith.hpp"
#include "rootbias/rational.hpp"

#include <cstdint>
#include <string_view>

namespace rootbias {

// Traces of the Fricke involution W_N on S_k(Gamma0(N)) and on its new
// subspace.  Every quantity has at least two independent evaluation routes:
//
//   full space: trace_full_direct (Hurwitz class number sum, enumerated)
//               trace_full_closed (single weighted class number h')
//   new space:  trace_new_mobius  (Mobius inversion of trace_full_closed)
//               trace_new_closed  (five-case closed form)
//               trace_new_via_corrections (main term plus xi)
//
// All functions require N >= 1 and even k >= 2 and throw
// std::invalid_argument otherwise.

/// How trace_new_closed routes a level.  SmallLevel only ever appears in a
/// TraceReport, for N <= 4.
enum class NewformCase {
    Generic,           // not 1, 2, 3 or 4 times the square of a squarefree number
    Square_OddRoot,    // N = N2^2, N2 odd squarefree
    Square_EvenRoot,   // N = N2^2, N2 even squarefree
    Square_TwiceEven,  // N = N2^2, N2 = 4m with m odd squarefree
    TwiceSquare,       // N = 2 N2^2, N2 squarefree
    ThriceSquare,      // N = 3 N2^2, N2 squarefree
    SmallLevel,
};

std::string_view to_string(NewformCase c);

/// Validated (N, k) together with the discriminant -D of Q(sqrt(-N)).
struct TraceInputs {
    std::uint64_t level;
    int weight;
    LevelDecomposition decomposition;
    std::int64_t disc;  // -D, either -N1 or -4N1
};

TraceInputs make_trace_inputs(std::uint64_t level, int weight);

/// (rho^{k-1} - rhobar^{k-1}) / (rho - rhobar) for rho, rhobar the roots of
/// X^2 - sX + 1, as a polynomial in s^2 (even k only).  s_squared in [0, 4].
std::int64_t p_k_even(int s_squared, int k);

std::int64_t trace_full_direct(std::uint64_t level, int k);
std::int64_t trace_full_closed(std::uint64_t level, int k);

/// Closed forms for tr W_N, N in {1, 2, 3, 4}.
std::int64_t small_level_trace(std::uint64_t level, int k);
/// Closed form for tr W_4 on the new subspace.
std::int64_t level4_new_trace(int k);

int beta(std::uint64_t level);

/// c(disc, n) = sum_{t | n} phi(n/t) mu(t) (disc/t), evaluated as an Euler
/// product.  disc must be a fundamental discriminant.
std::int64_t c_coeff(std::int64_t disc, std::uint64_t n);

NewformCase newform_case(std::uint64_t level);

enum class Xi0Branch { None, Square_OddRoot, Square_EvenRoot, Square_TwiceEven, TwiceSquare, ThriceSquare };
enum class EpsBranch { Zero, Square_OddRoot, Square_TwiceEven, TwiceOrThriceSquare };

/// Correction terms xi(N,k) = xi0 + delta_{k=2} (delta_{N2=1} + eps).
struct Corrections {
    Rational xi0;
    int eps = 0;
    int delta_k2_term = 0;  // delta_{k=2} (delta_{N2=1} + eps)
    Xi0Branch xi0_branch = Xi0Branch::None;
    EpsBranch eps_branch = EpsBranch::Zero;

    Rational xi() const { return xi0 + Rational(delta_k2_term); }
};

Corrections correction_xi(std::uint64_t level, int k);

/// Overridable pieces of the closed form, so a verification harness can
/// check that a deliberately broken formula is caught.
struct ClosedFormHooks {
    int (*beta)(std::uint64_t) = &rootbias::beta;
};

std::int64_t trace_new_closed(std::uint64_t level, int k);
std::int64_t trace_new_closed(std::uint64_t level, int k, const ClosedFormHooks& hooks);
/// Main term (-1)^{k/2} beta/2 c(-D,N2) h'(-D) plus the correction xi(N,k).
std::int64_t trace_new_via_corrections(std::uint64_t level, int k);
std::int64_t trace_new_mobius(std::uint64_t level, int k);

struct TraceReport {
    std::uint64_t level;
    int weight;
    std::int64_t tr_full;
    std::int64_t tr_new;
    std::int64_t delta;  // (-1)^{k/2} tr_new
    NewformCase case_tag;
    Corrections corrections;
};

/// Throws std::logic_error if the new-space traces fail to sum back to tr_full.
TraceReport trace_report(std::uint64_t level, int k);

}  // namespace rootbias
