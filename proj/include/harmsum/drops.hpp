#pragma once

#include <gmpxx.h>

#include "harmsum/state.hpp"

namespace harmsum {

enum class FindStatus { FOUND, CAP_EXCEEDED };

struct DropReport {
    u64 a = 0, b = 0;
    mpz_class v_prev, v_next;
    bool dropped = false;
};

// Result of a first-drop search.  On CAP_EXCEEDED the state sits at the cap
// and can be handed to resume_find to keep going; v_prev/v_next then both
// hold the reduced denominator at the cap.
struct FindOutcome {
    FindStatus status;
    u64 b;
    mpz_class v_prev, v_next;
    HarmonicState state;
};

// max(6(a-1), a+64): a window that provably contains the first drop for the
// all-ones sequence at exponent 1.
u64 classical_default_cap(u64 a);

// Smallest b in (a, cap] with v_{a,b} < v_{a,b-1}.
FindOutcome find_b(const PeriodicSeq& seq, unsigned d, u64 a, u64 cap);
FindOutcome resume_find(HarmonicState state, u64 cap);

DropReport verify_drop(const PeriodicSeq& seq, unsigned d, u64 a, u64 b);

// Smallest b in (a, cap] with v_{a,b} < eps * v_{a,b-1} (0 < eps <= 1).
FindOutcome epsilon_drop(const PeriodicSeq& seq, unsigned d, u64 a, const mpq_class& eps,
                         u64 cap);

// lcm(1..k); lcm of the empty range is 1.
mpz_class lcm_upto(u64 k);

struct WindowBoundReport {
    bool ok = true;
    u64 first_bad_prime = 0;
};

// Checks e_p(g_{a,b}) <= e_p(L_{b-a}) + e_p(L_r) for all primes p <= b, and
// g_{a,b} <= L_{b-a} * L_r, where L_k = lcm(1..k) and r = max |r_i|.
// Exponent-1 sums only.
WindowBoundReport gcd_window_bound(const PeriodicSeq& seq, u64 a, u64 b);

}  // namespace harmsum
