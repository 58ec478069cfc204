#pragma once

#include <gmpxx.h>

#include <vector>

#include "harmsum/primes.hpp"

namespace harmsum {

// Valuation info that may be only a lower bound (residue saturated to zero).
struct XVal {
    unsigned long lower = 0;
    bool exact = true;  // false means e_p(X) >= lower, true value unknown
};

struct GVal {
    unsigned long val = 0;
    bool exact = true;  // false only when the residue saturated AND E >= cap
};

// Incremental tracker for the p-part of one window sum.
//
// For the window state X / L (L the lcm-of-powers denominator) it maintains
//   E = e_p(L)   exactly, and
//   R = p^E * sum r_i / i^d   modulo p^cap,
// where the inverse of the unit part of each i^d is taken mod p^cap.  Since
// p^E * sum r_i / i^d equals X divided by the unit part of L, ord_p(R) equals
// e_p(X) whenever R != 0.  Steps are order-independent, so a window can be
// grown from either end.  All residues fit in 64 bits: cap is chosen so that
// p^cap < 2^63.
class PrimeTracker {
  public:
    PrimeTracker(u64 p, unsigned d, unsigned cap);

    // cap that keeps p^cap < 2^63 and never wastes width: min(floor63, emax+2)
    // where emax = d * floor(log_p(max_index)).
    static unsigned suggest_cap(u64 p, unsigned d, u64 max_index);

    void step(u64 i, long r);

    u64 p() const { return p_; }
    unsigned cap() const { return cap_; }
    unsigned long e_l() const { return e_; }

    XVal x_valuation() const;
    GVal g_valuation() const;

    // e_p(L) - e_p(g): the exponent of p in the reduced denominator.
    // Exact iff g_valuation() is.
    GVal v_exponent() const;

  private:
    u64 p_;
    unsigned d_;
    unsigned cap_;
    u64 m_;  // p^cap
    std::vector<u64> pow_;
    unsigned long e_ = 0;
    u64 r_ = 0;
};

// Same bookkeeping with an arbitrary-width residue.  Used to re-run a window
// whose 64-bit tracker saturated ambiguously: pick cap > the largest possible
// E and the answer is always exact.
class PrimeTrackerWide {
  public:
    PrimeTrackerWide(u64 p, unsigned d, unsigned cap);

    void step(u64 i, long r);

    u64 p() const { return p_; }
    unsigned cap() const { return cap_; }
    unsigned long e_l() const { return e_; }

    XVal x_valuation() const;
    GVal g_valuation() const;
    GVal v_exponent() const;

  private:
    u64 p_;
    unsigned d_;
    unsigned cap_;
    mpz_class m_;  // p^cap
    unsigned long e_ = 0;
    mpz_class r_ = 0;
};

}  // namespace harmsum
