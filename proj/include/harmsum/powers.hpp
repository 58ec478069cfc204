#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>

#include "harmsum/schedule.hpp"
#include "harmsum/sequence.hpp"

namespace harmsum {

// The exponent-d landscape for all-ones numerators: p_d is the smallest
// prime with (p-1) not dividing d, j = (p_d - 1)/2, q_i the smallest prime
// divisor of X_i = X_{1,i}, and c_d the first-drop constant b_d(1).
struct PowerProfile {
    unsigned d = 0;
    u64 p_d = 0;
    u64 j = 0;
    std::map<u64, u64> q;  // the q_i actually computed (even d only)
    u64 argmin_i = 0;      // i achieving c_d = i*q_i (even d only)
    u64 c_d = 0;
};

// Smallest prime p with (p-1) not dividing d.
u64 p_d_of(u64 d);

// Smallest prime divisor of X_i at exponent d, skipping primes with
// (p-1) | d (they never divide) and, optionally, stopping at p_cap (used by
// the min-formula pruning).  nullopt when no divisor is found below
// min(budget, p_cap).
std::optional<u64> q_i_of(u64 i, u64 d, u64 budget = 1'000'000, u64 p_cap = 0);

// c_d: 6 for odd d; min over 2 <= i <= j of i*q_i for even d.
PowerProfile power_profile(u64 d, u64 budget = 1'000'000);
u64 c_d_of(u64 d);

// Modular-summation check that p divides X_{(p-1)/2} at exponent d.
// Requires d even, p an odd prime, (p-1) not dividing d.
bool pdivpower_check(u64 d, u64 p);

// Table file and default first window start for d's schedule class, when the
// published piecewise f_d covers it.  Classes: d = 2 mod 4; d = 4, 8 mod 12;
// d = 12 mod 24; and d in {24, 48, 72, 96} exactly.
struct BdScheduleClass {
    std::string file;
    u64 a_min = 0;
};
std::optional<BdScheduleClass> bd_schedule_class(u64 d);

// Loads the class schedule clipped to [a_min, a_max] and verifies every
// (a, f_d(a)) drop plus the multiplier bound, at exponent d.
ScheduleCheck verify_bd_schedule(u64 d, const std::string& data_dir, u64 a_min, u64 a_max,
                                 unsigned workers = 1);

// Large-d cofactor structure over the first two supported indices i < j:
// with g = gcd(i,j)^d, A = r_i*(j^d/g') and B = r_j*(i^d/g') are the two
// summands of X_j's numerator after the common factor is removed.
struct AbcReport {
    u64 i = 0, j = 0;
    mpz_class A, B, sum;
    bool bound_asserted = false;  // d above the 2m*log(2m) threshold
    bool bound_holds = false;     // |A+B| > e^{d/2} (certified)
    mpz_class cofactor;           // |A+B| with all prime factors <= M removed
    bool has_large_prime = false;
};

AbcReport abc_cofactor_check(const PeriodicSeq& seq, u64 d, u64 M);

}  // namespace harmsum
