#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <vector>

#include "harmsum/certified.hpp"
#include "harmsum/primes.hpp"

namespace harmsum {

// f_d(x) = sum_{i=0}^d prod_{j != i} (x - j): the derivative of
// prod_{j=0}^d (x - j).  Degree d, leading coefficient d+1, and
// f_d(x) = (-1)^d f_d(d-x).
struct FdPoly {
    unsigned d = 0;
    std::vector<mpz_class> coeffs;  // degree-ascending, size d+1
};

FdPoly fd_expand(unsigned d);

// All roots of f_d mod p in [0, p).  Exhaustive scan below 10^4; above that
// the distinct-root part gcd(f_d, x^p - x) is split into linear factors.
std::vector<u64> roots_mod_p(unsigned d, u64 p);
std::vector<u64> roots_mod_p_exhaustive(unsigned d, u64 p);  // oracle path
// Number of distinct roots, via deg gcd(f_d, x^p - x); cheap at any p.
unsigned root_count_mod_p(unsigned d, u64 p);

struct DeltaEstimate {
    unsigned d = 0;
    u64 primes_tested = 0;
    u64 solvable = 0;
    mpq_class estimate;
    u64 window_lo = 0, window_hi = 0;
};

// Fraction of primes in [lo, hi] for which f_d has a root.
DeltaEstimate delta_estimate(unsigned d, u64 lo, u64 hi);

// 1 - sum_{i=0}^{l} (-1)^i / (2^i i!), the fraction of signed permutations
// that fix some coordinate pair.
mpq_class derangement_fraction(unsigned l);

// Enclosure of c = sum_d delta(f_d)/(d(d+1)): odd d contribute log 2 exactly;
// even d = 2l use the closed-form fraction where it is certified
// (l <= 30, l not in {4, 12, 24}) and an [observed, 1] band elsewhere.
struct CConstant {
    RealBound odd_part;        // log 2
    mpq_class closed_form;     // exact second-sum portion
    mpq_class even_lo, even_hi;
    mpq_class tail_hi;         // tail beyond l_max (lower bound 0)
    RealBound lower, upper;
};

CConstant estimate_c(unsigned l_max, u64 prime_lo, u64 prime_hi);

// CRT witness for a length-n window whose reduced denominator cannot exceed
// its predecessor's by much: primes p with floor(n/p) = d and f_d solvable
// are aligned so each divides X_{a,b} but contributes only one power to L.
struct LiminfWitness {
    u64 n = 0;
    std::map<unsigned, std::vector<u64>> S;  // d -> aligned primes
    std::vector<u64> T;                      // window primes with no root
    u64 q = 0;                               // the two-root prime in S_2
    std::map<u64, u64> x_p;                  // chosen residues
    mpz_class Q, x, a, b;
    std::string ratio;                       // n / log(a)
};

// nullopt when no prime in (n/3, n/2] is congruent to +-1 mod 12.
std::optional<LiminfWitness> build_liminf_witness(u64 n);

// Recomputes Q, x, a, b, ratio from n, S, and the x_p residues (used after
// editing a residue to produce a negative-control witness).
void rebuild_from_roots(LiminfWitness& w);

struct CongruenceReport {
    bool ok = true;
    u64 bad_prime = 0;
    std::string what;  // "L-exponent" | "X-divisible" | "X-prev" | "T-growth"
};

// Exact checks: for p in S, e_p(L_{a,b}) = 1, p | X_{a,b}, p does not divide
// X_{a,b-1}; for p in T, e_p(g_{a,b}) <= e_p(g_{a,b-1}).
CongruenceReport verify_witness_congruences(const LiminfWitness& w);

}  // namespace harmsum
