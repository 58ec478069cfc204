#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace harmsum {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

// (a * b) mod m without overflow.
u64 mulmod(u64 a, u64 b, u64 m);
// (base ^ exp) mod m.
u64 powmod(u64 base, u64 exp, u64 m);
// Inverse of a mod m; requires gcd(a, m) = 1.
u64 invmod(u64 a, u64 m);

// Deterministic Miller-Rabin over the full 64-bit range.
bool is_prime_u64(u64 n);

// All primes <= n, ascending.
std::vector<u32> primes_up_to(u32 n);

// e_p(n) and the cofactor n / p^e. n > 0.
std::pair<unsigned, u64> split_valuation(u64 n, u64 p);

// Smallest-prime-factor table for n <= limit; spf(1) = 1.
class SpfSieve {
public:
    explicit SpfSieve(u32 limit);
    u32 limit() const { return limit_; }
    u32 spf(u32 n) const { return spf_[n]; }
    // Distinct prime factors with multiplicities, ascending.
    std::vector<std::pair<u32, unsigned>> factor(u32 n) const;

private:
    u32 limit_;
    std::vector<u32> spf_;
};

// Factorization of any u64 (trial division + Pollard rho), ascending primes.
std::vector<std::pair<u64, unsigned>> factor_u64(u64 n);

}  // namespace harmsum
