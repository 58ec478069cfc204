#include "harmsum/primes.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace harmsum {

u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

u64 powmod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 acc = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) acc = mulmod(acc, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return acc;
}

u64 invmod(u64 a, u64 m) {
    // Extended Euclid on (a, m); signed accumulators stay in range for m < 2^63.
    i64 t = 0, nt = 1;
    u64 r = m, nr = a % m;
    while (nr != 0) {
        u64 q = r / nr;
        i64 tmp = t - static_cast<i64>(q) * nt;
        t = nt;
        nt = tmp;
        u64 rr = r - q * nr;
        r = nr;
        nr = rr;
    }
    if (r != 1) throw std::domain_error("invmod: arguments not coprime");
    return t < 0 ? static_cast<u64>(t + static_cast<i64>(m)) : static_cast<u64>(t);
}

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Sufficient deterministic base set for all n < 2^64.
    for (u64 a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
        u64 x = powmod(a % n, d, n);
        if (x == 0 || x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

std::vector<u32> primes_up_to(u32 n) {
    std::vector<u32> out;
    if (n < 2) return out;
    std::vector<bool> comp(static_cast<size_t>(n) + 1, false);
    for (u64 i = 2; i <= n; ++i) {
        if (comp[i]) continue;
        out.push_back(static_cast<u32>(i));
        for (u64 j = i * i; j <= n; j += i) comp[j] = true;
    }
    return out;
}

std::pair<unsigned, u64> split_valuation(u64 n, u64 p) {
    unsigned e = 0;
    while (n % p == 0) {
        n /= p;
        ++e;
    }
    return {e, n};
}

SpfSieve::SpfSieve(u32 limit) : limit_(limit), spf_(static_cast<size_t>(limit) + 1, 0) {
    if (limit >= 1) spf_[1] = 1;
    for (u64 i = 2; i <= limit; ++i) {
        if (spf_[i] != 0) continue;
        for (u64 j = i; j <= limit; j += i) {
            if (spf_[j] == 0) spf_[j] = static_cast<u32>(i);
        }
    }
}

std::vector<std::pair<u32, unsigned>> SpfSieve::factor(u32 n) const {
    std::vector<std::pair<u32, unsigned>> out;
    while (n > 1) {
        u32 p = spf_[n];
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    return out;
}

namespace {

u64 pollard_rho(u64 n) {
    if ((n & 1) == 0) return 2;
    for (u64 c = 1;; ++c) {
        auto f = [n, c](u64 x) { return (mulmod(x, x, n) + c) % n; };
        u64 x = 2, y = 2, d = 1;
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            u64 diff = x > y ? x - y : y - x;
            if (diff == 0) break;  // cycle without factor; retry with next c
            d = std::gcd(diff, n);
        }
        if (d != 1 && d != n) return d;
    }
}

void factor_rec(u64 n, std::vector<u64>& primes) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        primes.push_back(n);
        return;
    }
    u64 d = pollard_rho(n);
    factor_rec(d, primes);
    factor_rec(n / d, primes);
}

}  // namespace

std::vector<std::pair<u64, unsigned>> factor_u64(u64 n) {
    std::vector<std::pair<u64, unsigned>> out;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull}) {
        if (n % p == 0) {
            auto [e, rest] = split_valuation(n, p);
            out.emplace_back(p, e);
            n = rest;
        }
    }
    std::vector<u64> primes;
    factor_rec(n, primes);
    std::sort(primes.begin(), primes.end());
    for (size_t i = 0; i < primes.size();) {
        size_t j = i;
        while (j < primes.size() && primes[j] == primes[i]) ++j;
        out.emplace_back(primes[i], static_cast<unsigned>(j - i));
        i = j;
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace harmsum
