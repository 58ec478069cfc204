#pragma once

#include <gmpxx.h>

#include <string>

#include "harmsum/sequence.hpp"

namespace harmsum {

// p-adic valuation that can be infinite (the valuation of zero).
struct Valuation {
    unsigned long val = 0;
    bool finite = true;

    static Valuation infinite() { return {0, false}; }
    static Valuation of(unsigned long v) { return {v, true}; }

    friend Valuation min(Valuation a, Valuation b) {
        if (!a.finite) return b;
        if (!b.finite) return a;
        return {std::min(a.val, b.val), true};
    }
    friend bool operator==(const Valuation& a, const Valuation& b) {
        return a.finite == b.finite && (!a.finite || a.val == b.val);
    }
};

Valuation valuation_of(const mpz_class& x, unsigned long p);

// Exact window state for sum_{i=a}^{b} r_i / i^d.
//
// Stores lam = lcm{ i in [a,b] : r_i != 0 } rather than L = lam^d directly:
// the exponent of every prime in L is d times its exponent in lam, so lam is
// enough to recover everything and is far smaller.  X is the numerator over
// denominator L, i.e. X = L * sum r_i / i^d.
class HarmonicState {
  public:
    HarmonicState(PeriodicSeq seq, unsigned d, u64 a);

    static HarmonicState over(const PeriodicSeq& seq, unsigned d, u64 a, u64 b);

    void extend_right();           // [a,b] -> [a,b+1]
    void extend_left();            // [a,b] -> [a-1,b]
    void extend_right_to(u64 b2);  // repeated extend_right

    u64 a() const { return a_; }
    u64 b() const { return b_; }
    unsigned d() const { return d_; }
    const PeriodicSeq& seq() const { return seq_; }

    const mpz_class& lam() const { return lam_; }
    const mpz_class& numerator_raw() const { return x_; }  // X over L = lam^d

    mpz_class denominator_full() const;  // L = lam^d
    mpz_class gcd_xl() const;            // g = gcd(|X|, L); g = L when X = 0
    mpz_class reduced_denominator() const;  // v = L / g
    mpz_class reduced_numerator() const;    // u = X / g (0 when X = 0)
    mpq_class value() const;                // the sum itself, canonical

    // e_p(g) = min(e_p(X), d * e_p(lam)); never infinite.
    unsigned long g_valuation(unsigned long p) const;
    // e_p(X); infinite when X = 0.
    Valuation x_valuation(unsigned long p) const;
    // e_p(L) = d * e_p(lam).
    unsigned long l_valuation(unsigned long p) const;

    std::string serialize() const;
    static HarmonicState deserialize(const std::string& text);

  private:
    PeriodicSeq seq_;
    unsigned d_;
    u64 a_, b_;
    mpz_class lam_;  // lcm of supported indices in the window (1 when none)
    mpz_class x_;

    void absorb(u64 i);
};

}  // namespace harmsum
