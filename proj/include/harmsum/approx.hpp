#pragma once

#include <gmpxx.h>

#include <optional>
#include <utility>

#include "harmsum/certified.hpp"
#include "harmsum/primes.hpp"
#include "harmsum/sequence.hpp"

namespace harmsum {

// Simultaneous-approximation pair for log p / log q:
//   |b2·log p − b1·log q| < 1/(2m³)   with   b2 < 2·log(q)·m³.
struct DirichletApprox {
    u64 p = 0, q = 0, m = 0;
    mpz_class b1, b2;
    RealBound eps;  // certified enclosure of |b2·log p − b1·log q|
};

// First continued-fraction convergent of log p / log q meeting both bounds.
// Distinct primes p, q required. nullopt only when no pair with
// b2 < 2·log(q)·m³ certifies (which Dirichlet's theorem rules out for honest
// inputs, but the failure path stays explicit).
std::optional<DirichletApprox> dirichlet(u64 p, u64 q, u64 m);

// Oracle-grade search: smallest b2 in [1, 2·log(q)·m³) whose nearest-integer
// b1 certifies the eps bound. Agrees with dirichlet() on every valid input.
std::optional<DirichletApprox> dirichlet_exhaustive(u64 p, u64 q, u64 m);

// Outcome of an alignment construction. kron_align fills C/k1/k2 with
// k1 = C·b2, k2 = C·b1 and certifies 0 ≤ C·eps − γ < 1/(2m³).
// gamm_exponents shifts k1 by ∓D and certifies the two-sided sandwich
//   c_q·q^{λk2} < n·p^{λk1} < (c_q+1)·q^{λk2}
// in log space. When the certificate cannot be established at the precision
// cap, certified=false and the numeric fields still describe the attempt.
struct AlignResult {
    RealBound gamma;
    mpz_class C;
    mpz_class k1, k2;
    bool plus_branch = false;  // sign of b2·log p − b1·log q
    bool certified = false;
    bool materializable = false;  // b = n·p^{λk1} fits the digit budget
    mpz_class b;                  // exact b when materializable
    bool drop_verified = false;   // exact window check ran and confirmed a drop
};

// Kronecker-style alignment: C = ceil(γ / eps) for the dirichlet pair of
// (p, q, m), offset C·eps − γ certified inside [0, 1/(2m³)).
AlignResult kron_align(u64 p, u64 q, u64 m, const RealBound& gamma);

// Exponent construction for the drop-forcing lemma. n = l·p^k with
// gcd(l, p) = 1, q a second prime, c_q the interval constant for q, and
// D ≥ k+2 the p-adic headroom. `forced` substitutes a synthetic (b1, b2)
// pair for the dirichlet output (test hook for materializable cases).
AlignResult gamm_exponents(const PeriodicSeq& seq, u64 n, u64 l, u64 p, u64 k,
                           u64 q, u64 c_q, u64 D,
                           std::optional<std::pair<mpz_class, mpz_class>> forced = std::nullopt);

// The effective constants attached to the growth theorems, reported in
// collapsed form: diri_exp = m(3 + 6/log m) (the double-exponent),
// god_exp = m(4 + 7/log m) (the triple-exponent), and the Baker linear-form
// lower bound −24.34·(max{5·log m, 21, 1/2})²·log q·log p.
struct ExplicitConstants {
    RealBound diri_exp;
    RealBound god_exp;
    RealBound baker;
    bool baker_uses_log_branch = false;  // true when 5·log m exceeds 21
};

ExplicitConstants explicit_constants(u64 m, u64 p, u64 q);

}  // namespace harmsum
