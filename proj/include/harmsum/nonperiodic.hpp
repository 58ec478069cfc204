#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "harmsum/primes.hpp"

namespace harmsum {

// Greedy choice of numerators r_n from a finite palette A so that
// sum_{i<=n} r_i/i keeps denominator lcm(1..n) at every step.
struct GreedyRun {
    std::vector<long> A;
    u64 N = 0;
    std::vector<long> r;     // r[0] is r_1; truncated at the failing step
    bool all_coprime = true;
    u64 fail_n = 0;          // step with no valid choice / failed gcd (0 = none)
};

// Chooses r_n by the three-way case split on n = l*p^k (p the largest prime
// factor): prime powers take the first unit-mod-p element, 1 < l < p takes
// the first element keeping X_n nonzero mod p, anything else takes A[0].
// Checks gcd(X_n, lcm(1..n)) = 1 after every step and stops on violation.
GreedyRun greedy_sequence(const std::vector<long>& A, u64 N);

// Bounded check of the palette hypothesis: returns 2 when A has no odd
// element, the smallest odd prime dividing every pairwise difference when
// all elements collide mod p, nullopt when nothing checkable is violated.
std::optional<u64> palette_violation(const std::vector<long>& A);

// One step of the sparse 0/1 construction: window (a, b] of length b_prev
// whose support {b, b-2q} plus {b-p : p in I} realizes a denominator drop
// at b, pushing (b-a)/log(a) toward 1/2.
struct SparseStep {
    u64 b_prev = 0;
    std::vector<u64> I;  // primes in (sqrt(b_prev), b_prev]
    u64 q = 0;           // first prime in I at most b_prev/2 with q = +-1 mod 12
    mpz_class Q, x, b, a;
    std::vector<mpz_class> support;
    bool drop_verified = false;
    mpz_class v_prev, v_next;
    std::string ratio;  // (b - a) / log(a)
};

// nullopt when no qualifying q exists (e.g. b_prev = 20).  Throws when the
// prime product would exceed the digit budget (later steps grow too fast to
// materialize).
std::optional<SparseStep> sparse_step(u64 b_prev);

// Chains sparse steps (default cap 3), stopping early when a step fails or
// the next window would blow the prime-product budget.
struct SparseRun {
    std::vector<SparseStep> steps;
    std::string stopped;  // empty if the cap was reached cleanly
};
SparseRun sparse_run(u64 b0, int max_steps = 3);

}  // namespace harmsum
