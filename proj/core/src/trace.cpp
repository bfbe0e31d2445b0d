#include "rootbias/trace.hpp"

#include "rootbias/classnum.hpp"

#include <stdexcept>
#include <string>

namespace rootbias {

namespace {

void require_weight(int k) {
    if (k < 2 || k % 2 != 0)
        throw std::invalid_argument("weight must be even and >= 2, got " + std::to_string(k));
}

void require_level(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("level must be positive");
}

std::int64_t as_int(std::uint64_t n) { return static_cast<std::int64_t>(n); }

int kappa1_odd(int k) { return k % 12 == 2 ? 1 : 0; }
int kappa1_even(int k) { return (k % 12 == 6 || k % 12 == 10) ? 1 : 0; }
int kappa2(int k) { return (k % 8 == 0 || k % 8 == 2) ? 1 : -1; }
int kappa3(int k) { return (k % 12 == 4 || k % 12 == 10) ? -2 : 1; }

std::int64_t integral(const Rational& r, const char* what, std::uint64_t n, int k) {
    if (!r.is_integer())
        throw std::logic_error(std::string(what) + " is not integral at (N,k) = (" + std::to_string(n) +
                               "," + std::to_string(k) + "): " + r.str());
    return r.to_integer();
}

bool squarefree_odd(std::uint64_t n) { return n % 2 == 1 && is_squarefree(n); }

}  // namespace

std::string_view to_string(NewformCase c) {
    switch (c) {
        case NewformCase::Generic: return "Generic";
        case NewformCase::Square_OddRoot: return "Square_OddRoot";
        case NewformCase::Square_EvenRoot: return "Square_EvenRoot";
        case NewformCase::Square_TwiceEven: return "Square_TwiceEven";
        case NewformCase::TwiceSquare: return "TwiceSquare";
        case NewformCase::ThriceSquare: return "ThriceSquare";
        case NewformCase::SmallLevel: return "SmallLevel";
    }
    return "?";
}

TraceInputs make_trace_inputs(std::uint64_t level, int weight) {
    require_level(level);
    require_weight(weight);
    TraceInputs in{level, weight, decompose_level(level), 0};
    const auto n1 = as_int(in.decomposition.squarefree_part);
    in.disc = n1 % 4 == 3 ? -n1 : -4 * n1;
    return in;
}

std::int64_t p_k_even(int s_squared, int k) {
    require_weight(k);
    if (s_squared < 0 || s_squared > 4)
        throw std::invalid_argument("p_k_even: s^2 must lie in [0, 4], got " + std::to_string(s_squared));
    std::int64_t prev = 1, cur = s_squared - 1;
    if (k == 2) return prev;
    for (int j = 2; j <= (k - 2) / 2; ++j) {
        std::int64_t next = (s_squared - 2) * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

std::int64_t trace_full_direct(std::uint64_t level, int k) {
    require_level(level);
    require_weight(k);
    const auto dec = decompose_level(level);
    const std::uint64_t n1 = dec.squarefree_part, n2 = dec.square_root_part;

    // M runs over N1 * M2^2 for M2 | N2; then sqrt(N/M) = N2/M2 and
    // s = j * sqrt(MN) has (s/sqrt M)^2 = j^2 N, so s != 0 needs N <= 4.
    Rational sum;
    for (std::uint64_t m2 : divisors(n2)) {
        const int mu = mobius(n2 / m2);
        if (mu == 0) continue;
        const std::uint64_t m = n1 * m2 * m2;
        const std::uint64_t root_mn = m * (n2 / m2);
        Rational inner;
        for (std::uint64_t j = 0; j * j * level <= 4; ++j) {
            const auto s = as_int(j * root_mn);
            const auto pk = p_k_even(static_cast<int>(j * j * level), k);
            const Rational term = Rational(pk) * hurwitz(Discriminant(s * s - 4 * as_int(m)));
            inner += j == 0 ? term : Rational(2) * term;  // +s and -s
        }
        sum += Rational(mu) * inner;
    }
    Rational tr = Rational(-1, 2) * sum + Rational(k == 2 ? 1 : 0);
    if (level == 1 || level == 4) tr -= Rational(1, 2);
    return integral(tr, "trace_full_direct", level, k);
}

std::int64_t small_level_trace(std::uint64_t level, int k) {
    require_weight(k);
    const int s = sign_half_weight(k);
    const int d2 = k == 2 ? 1 : 0;
    switch (level) {
        case 1:
            return k % 12 != 2 ? k / 12 : k / 12 - 1 + d2;
        case 2:
            return (k % 8 == 0 || k % 8 == 2) ? s * (1 - d2) : 0;
        case 3: {
            const int r = k % 12;
            return (r == 4 || r == 10) ? 0 : s * (1 - d2);
        }
        case 4:
            return k % 4 == 0 ? 0 : -1 + d2;
        default:
            throw std::invalid_argument("small_level_trace: level must be 1..4");
    }
}

std::int64_t level4_new_trace(int k) {
    require_weight(k);
    const int r = k % 12;
    return (r == 6 || r == 10) ? -(k / 12) - 1 : -(k / 12);
}

std::int64_t trace_full_closed(std::uint64_t level, int k) {
    require_level(level);
    require_weight(k);
    if (level <= 4) return small_level_trace(level, k);
    const auto dec = decompose_level(level);
    const auto n1 = as_int(dec.squarefree_part);
    const std::uint64_t n2 = dec.square_root_part;
    Rational x;
    if (n1 % 4 == 1 || n1 % 4 == 2) {
        x = Rational(1, 2) * h_prime_scaled(Discriminant(-4 * n1), n2);
    } else if (n2 % 2 == 1) {
        x = Rational(3 - kronecker(-n1, 2), 2) * h_prime_scaled(Discriminant(-n1), n2);
    } else {
        x = h_prime_scaled(Discriminant(-n1), n2);
    }
    const Rational tr = Rational(sign_half_weight(k)) * x + Rational(k == 2 ? 1 : 0);
    return integral(tr, "trace_full_closed", level, k);
}

int beta(std::uint64_t level) {
    require_level(level);
    const auto dec = decompose_level(level);
    const std::uint64_t n1 = dec.squarefree_part, n2 = dec.square_root_part;
    if (n1 % 4 == 1 || n1 % 4 == 2) return 1;
    if (n2 % 2 == 0 && n2 % 4 != 0) return 1;
    if (n2 % 4 == 0) return 2;
    return 3 - kronecker(-as_int(n1), 2);
}

std::int64_t c_coeff(std::int64_t disc, std::uint64_t n) {
    if (!is_fundamental_discriminant(disc) || disc >= 0)
        throw std::invalid_argument("c_coeff: " + std::to_string(disc) + " is not a negative fundamental discriminant");
    if (n == 0) throw std::invalid_argument("c_coeff: n must be positive");
    std::int64_t c = 1;
    for (auto [p, e] : factor(n)) {
        const auto pp = as_int(p);
        const int chi = kronecker(disc, pp);
        std::int64_t local;
        if (e == 1) {
            local = pp - 1 - chi;
        } else {
            local = (pp - 1) * (pp - chi);
            for (unsigned i = 2; i < e; ++i) local = checked_mul(local, pp);
        }
        c = checked_mul(c, local);
    }
    return c;
}

NewformCase newform_case(std::uint64_t level) {
    require_level(level);
    const auto dec = decompose_level(level);
    const std::uint64_t n1 = dec.squarefree_part, n2 = dec.square_root_part;
    const bool n2_sqfree = is_squarefree(n2);
    if (n1 == 1 && n2_sqfree) return n2 % 2 ? NewformCase::Square_OddRoot : NewformCase::Square_EvenRoot;
    if (n1 == 1 && n2 % 4 == 0 && squarefree_odd(n2 / 4)) return NewformCase::Square_TwiceEven;
    if (n1 == 2 && n2_sqfree) return NewformCase::TwiceSquare;
    if (n1 == 3 && n2_sqfree) return NewformCase::ThriceSquare;
    return NewformCase::Generic;
}

Corrections correction_xi(std::uint64_t level, int k) {
    require_level(level);
    require_weight(k);
    const auto dec = decompose_level(level);
    const std::uint64_t n1 = dec.squarefree_part, n2 = dec.square_root_part;
    const Rational s(sign_half_weight(k));
    const int d2 = k == 2 ? 1 : 0;
    auto tr = [k](std::uint64_t m) { return Rational(small_level_trace(m, k)); };

    Corrections c;
    const bool n2_sqfree = is_squarefree(n2);
    if (n1 == 1 && n2_sqfree && n2 % 2 == 1) {
        c.xi0_branch = Xi0Branch::Square_OddRoot;
        c.xi0 = Rational(mobius(n2)) * (tr(1) - s * Rational(1, 4));
        c.eps_branch = EpsBranch::Square_OddRoot;
        c.eps = -mobius(n2);
    } else if (n1 == 1 && n2_sqfree) {
        c.xi0_branch = Xi0Branch::Square_EvenRoot;
        c.xi0 = Rational(mobius(n2)) * (tr(1) - tr(4) + s * Rational(1, 4));
    } else if (n1 == 1 && n2 % 4 == 0 && squarefree_odd(n2 / 4)) {
        c.xi0_branch = Xi0Branch::Square_TwiceEven;
        c.xi0 = Rational(mobius(n2 / 2)) * (tr(4) - s * Rational(1, 2));
        c.eps_branch = EpsBranch::Square_TwiceEven;
        c.eps = -mobius(n2 / 2);
    } else if (n1 == 2 && n2_sqfree) {
        c.xi0_branch = Xi0Branch::TwiceSquare;
        c.xi0 = Rational(mobius(n2)) * (tr(2) - s * Rational(1, 2));
        c.eps_branch = EpsBranch::TwiceOrThriceSquare;
        c.eps = -mobius(n2);
    } else if (n1 == 3 && n2_sqfree) {
        c.xi0_branch = Xi0Branch::ThriceSquare;
        c.xi0 = Rational(mobius(n2)) * (tr(3) - s * Rational(2, 3));
        c.eps_branch = EpsBranch::TwiceOrThriceSquare;
        c.eps = -mobius(n2);
    }
    c.delta_k2_term = d2 * ((n2 == 1 ? 1 : 0) + c.eps);
    return c;
}

std::int64_t trace_new_closed(std::uint64_t level, int k) { return trace_new_closed(level, k, ClosedFormHooks{}); }

std::int64_t trace_new_closed(std::uint64_t level, int k, const ClosedFormHooks& hooks) {
    const TraceInputs in = make_trace_inputs(level, k);
    const std::uint64_t n2 = in.decomposition.square_root_part;
    const Rational s(sign_half_weight(k));
    const Rational mu(mobius(n2));
    const Rational d2_n2(k == 2 && n2 == 1 ? 1 : 0);
    const Rational floor12(k / 12);

    Rational tr;
    switch (newform_case(level)) {
        case NewformCase::Generic: {
            const Rational main = Rational(hooks.beta(level), 2) * Rational(c_coeff(in.disc, n2)) *
                                  h_prime(Discriminant(in.disc));
            tr = s * main + d2_n2;
            break;
        }
        case NewformCase::Square_OddRoot:
            tr = Rational(1, 4) * s * (Rational(c_coeff(-4, n2)) - mu) + mu * (floor12 - Rational(kappa1_odd(k))) +
                 d2_n2;
            break;
        case NewformCase::Square_EvenRoot:
            tr = Rational(1, 4) * s * (Rational(c_coeff(-4, n2)) + mu) + mu * (floor12 + Rational(kappa1_even(k)));
            break;
        case NewformCase::Square_TwiceEven:
            tr = Rational(1, 4) * s * Rational(c_coeff(-4, n2)) - Rational(mobius(n2 / 2), 2);
            break;
        case NewformCase::TwiceSquare:
            tr = Rational(1, 2) * s * (Rational(c_coeff(-8, n2)) + Rational(kappa2(k)) * mu) + d2_n2;
            break;
        case NewformCase::ThriceSquare: {
            const Rational inner = Rational(hooks.beta(level), 2) * Rational(c_coeff(-3, n2)) + Rational(kappa3(k)) * mu;
            tr = Rational(1, 3) * s * inner + d2_n2;
            break;
        }
        case NewformCase::SmallLevel:
            throw std::logic_error("newform_case never yields SmallLevel");
    }
    return integral(tr, "trace_new_closed", level, k);
}

std::int64_t trace_new_via_corrections(std::uint64_t level, int k) {
    const TraceInputs in = make_trace_inputs(level, k);
    const Rational main = Rational(beta(level), 2) * Rational(c_coeff(in.disc, in.decomposition.square_root_part)) *
                          h_prime(Discriminant(in.disc));
    const Rational tr = Rational(sign_half_weight(k)) * main + correction_xi(level, k).xi();
    return integral(tr, "trace_new_via_corrections", level, k);
}

std::int64_t trace_new_mobius(std::uint64_t level, int k) {
    require_level(level);
    require_weight(k);
    const std::uint64_t n2 = decompose_level(level).square_root_part;
    std::int64_t tr = 0;
    for (std::uint64_t q : divisors(n2)) {
        const int mu = mobius(q);
        if (mu != 0) tr += mu * trace_full_closed(level / (q * q), k);
    }
    return tr;
}

TraceReport trace_report(std::uint64_t level, int k) {
    TraceReport r{level, k, trace_full_closed(level, k), trace_new_closed(level, k), 0,
                  level <= 4 ? NewformCase::SmallLevel : newform_case(level), correction_xi(level, k)};
    r.delta = sign_half_weight(k) * r.tr_new;

    const std::uint64_t n2 = decompose_level(level).square_root_part;
    std::int64_t resum = 0;
    for (std::uint64_t q : divisors(n2)) resum += q == 1 ? r.tr_new : trace_new_closed(level / (q * q), k);
    if (resum != r.tr_full)
        throw std::logic_error("new-space traces at (N,k) = (" + std::to_string(level) + "," + std::to_string(k) +
                               ") sum to " + std::to_string(resum) + ", full trace is " + std::to_string(r.tr_full));
    return r;
}

}  // namespace rootbias
