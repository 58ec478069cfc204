#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "harmsum/state.hpp"

namespace harmsum {

// A pair (n, p): p is the smallest qualifying prime dividing the window
// numerator X over [i1, n], at the smallest such n.
struct PrimeWitness {
    u64 n = 0;
    mpz_class p;
};

// Scans n upward (skipping zero numerators); at each n strips |X_n| of all
// prime factors below max(m_floor, n+1) and reports the smallest remaining
// prime factor.  X_n = 0 counts as divisible by everything, so the smallest
// prime at or above the threshold is returned.  Empty when n_cap is passed.
std::optional<PrimeWitness> find_prime_witness(const PeriodicSeq& seq, u64 m_floor, u64 n_cap);

struct WitnessTableRow {
    PeriodicSeq seq;
    u64 expect_n, expect_p;
    u64 got_n = 0, got_p = 0;
    bool ok = false;
};

// The (n, p) entry for one sequence under the table's convention: smallest
// prime p exceeding max(|r|max, t), then smallest n in [i1, p-1], with
// p | X_{i1..n} (a zero numerator divides).
PrimeWitness witness_table_entry(const PeriodicSeq& seq);

// Recomputes all twelve tabulated sequences and compares against the
// published entries.
std::vector<WitnessTableRow> reproduce_witness_table();

struct Theorem1Witness {
    u64 n = 0, l = 0;
    unsigned k = 0;
    mpz_class p;
    u64 lambda = 1;
    u64 k1 = 1;
    mpz_class b;  // n * p^(lambda*k1)
    bool accepted = false;
    mpz_class gcd;  // gcd(l, X_{a,b-1}); the obstruction when rejected
};

// Instantiates the first-drop certificate from a prime witness: picks the
// smallest k1 >= 1 with p^(lambda*k1+k) >= max(a, 2t), sets b = n*p^(lambda*k1),
// and accepts iff gcd(l, X_{a,b-1}) < p (computed exactly; X = 0 gives gcd l).
Theorem1Witness theorem1_certify(const PeriodicSeq& seq, u64 a, const PrimeWitness& w);

// For n = l*p^k from a witness: some j in [1, l) has r_{j*p^k} != 0, and
// p^k exactly divides the plain lcm denominator over [1, n].
bool prelimprop_check(const PeriodicSeq& seq, const PrimeWitness& w);

// e_q(g_{a,b}) >= e_q(g_{a,b-1}) - min(e_q(X_{a,b-1}), e_q(b)) for every
// prime q <= b (exponent-1 windows).
bool gcd_step_inequality(const PeriodicSeq& seq, u64 a, u64 b);

struct IntervalCheckReport {
    bool ok = true;
    u64 first_bad_n = 0;
    u64 checked = 0;
};

// For each k <= k_max, every n <= n_cap inside [c_p*p^(lambda*k),
// (c_p+1)*p^(lambda*k)) must satisfy e_p(X_n) <= mu_p.  Requires p outside
// the third regime.
IntervalCheckReport lemma3_interval_check(const PeriodicSeq& seq, u64 p, unsigned k_max,
                                          u64 n_cap);

// For p in the third regime: every n <= n_cap with n = i1 mod t^3*r_{i1}^2
// must satisfy e_p(X_n) < f_p.
IntervalCheckReport sigma3_check(const PeriodicSeq& seq, u64 p, u64 n_cap);

// For b-1 <= n_cap in [c_q*q^(lambda*k), (c_q+1)*q^(lambda*k)), the window
// [a, b-1] and the full prefix [i1, b-1] carry the same q-valuation of X.
// Requires a*m <= q^(lambda*k).
IntervalCheckReport xbisxab_check(const PeriodicSeq& seq, u64 q, unsigned k, u64 a, u64 n_cap);

}  // namespace harmsum
