#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "harmsum/primes.hpp"

namespace harmsum {

// Which of the three regimes a prime falls into relative to a periodic
// numerator sequence.  SIGMA1: p is at least the sequence bound m.
// SIGMA2: p < m but some multiple of p^{e_p(t)} inside one period carries a
// nonzero numerator.  SIGMA3: everything else (forces p | t).
enum class PrimeClass { SIGMA1, SIGMA2, SIGMA3 };

// Periodic integer numerator sequence r_1, r_2, ... with r_{i+t} = r_i.
struct PeriodicSeq {
    u32 t = 1;                   // period
    std::vector<long> values;    // r_1..r_t (index 0 holds r_1)
    long r_max_abs = 1;          // max |r_i|
    u32 i1 = 1;                  // smallest index with r_{i1} != 0
    u32 m = 2;                   // 1 + max(r_max_abs, t)
    u64 lambda = 1;              // Carmichael lambda(t)

    // r_i for any i >= 1.
    long at(u64 i) const { return values[static_cast<size_t>((i - 1) % t)]; }

    // Indices 1 <= i <= t with r_i != 0, ascending.
    std::vector<u32> support() const;

    // Parses "t=<int>;r=<c1,...,ct>".  Throws std::invalid_argument on
    // malformed input or an all-zero period.
    static PeriodicSeq parse(const std::string& text);

    static PeriodicSeq from_values(std::vector<long> vals);

    // The classical sequence r == 1 (period 1).
    static PeriodicSeq ones() { return from_values({1}); }
};

// Carmichael function lambda(n).
u64 carmichael(u64 n);

PrimeClass classify_prime(const PeriodicSeq& seq, u64 p);

// Largest exponent mu with p^mu <= m - 1 (zero when p > m - 1).
unsigned mu_of(const PeriodicSeq& seq, u64 p);

// For SIGMA3 primes: e_p(t) + e_p(r_{i1}).
unsigned f_of(const PeriodicSeq& seq, u64 p);

// Smallest index i <= t * p^{mu} with r_i != 0 maximizing e_p(i) - e_p(r_i).
u64 c_p_of(const PeriodicSeq& seq, u64 p);

// Analysis of the support pattern of a sequence: picks the pivot pair/triple
// and the two residue index sets used by the coprime-count lower bound.
struct SupportSets {
    bool case_one = false;  // consecutive support values not opposite
    u64 c = 0, dd = 0, e = 0;
    std::vector<u32> s1;  // i in [1,t], gcd(i,t)=1, r_{e-i} != 0
    std::vector<u32> s2;  // i in [1,t], gcd(i,t)=1, r_{e-i} == 0, r_{e-2i} != 0
};

SupportSets s1_s2(const PeriodicSeq& seq);

// Lower bound t * prod_{q | t} (1 - s_q / q) with s_2 = 1, s_q = 2 otherwise,
// returned as a rational pair (num, den) scaled so num/den <= |S1 u S2|.
std::pair<u64, u64> coprime_bound(u32 t);

}  // namespace harmsum
