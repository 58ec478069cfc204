#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <gmpxx.h>

#include <numeric>
#include <stdexcept>

#include "harmsum/sequence.hpp"

using namespace harmsum;

namespace {
u64 euler_phi(u64 n) {
    u64 out = n;
    for (auto [p, e] : factor_u64(n)) out = out / p * (p - 1);
    return out;
}
}  // namespace

TEST_CASE("parsing") {
    auto seq = PeriodicSeq::parse("t=4;r=1,0,-3,2");
    CHECK(seq.t == 4);
    CHECK(seq.values == std::vector<long>{1, 0, -3, 2});
    CHECK(seq.r_max_abs == 3);
    CHECK(seq.i1 == 1);
    CHECK(seq.m == 5);  // 1 + max(3, 4)
    CHECK(seq.at(7) == -3);
    CHECK(seq.at(8) == 2);
    CHECK(seq.support() == std::vector<u32>{1, 3, 4});

    auto late = PeriodicSeq::parse("t=2;r=0,1");
    CHECK(late.i1 == 2);

    CHECK_THROWS_AS(PeriodicSeq::parse("t=2;r=0,0"), std::invalid_argument);
    CHECK_THROWS_AS(PeriodicSeq::parse("t=2;r=1"), std::invalid_argument);
    CHECK_THROWS_AS(PeriodicSeq::parse("nonsense"), std::invalid_argument);
    CHECK_THROWS_AS(PeriodicSeq::parse("t=0;r="), std::invalid_argument);
}

TEST_CASE("carmichael values and divisibility") {
    CHECK(carmichael(1) == 1);
    CHECK(carmichael(2) == 1);
    CHECK(carmichael(8) == 2);
    CHECK(carmichael(15) == 4);
    CHECK(carmichael(16) == 4);
    CHECK(carmichael(561) == 80);  // classical Carmichael number

    for (u64 n = 1; n <= 500; ++n) {
        u64 lam = carmichael(n);
        CHECK(euler_phi(n) % lam == 0);
        // lambda is the exponent of the unit group: a^lambda = 1 for units.
        for (u64 a : {2ull, 3ull, 5ull, 7ull}) {
            if (std::gcd(a, n) != 1 || n == 1) continue;
            CHECK(powmod(a, lam, n) == 1);
        }
    }
}

TEST_CASE("sequence lambda follows the period") {
    CHECK(PeriodicSeq::parse("t=15;r=1,0,0,0,0,0,0,0,0,0,0,0,0,0,0").lambda == 4);
    CHECK(PeriodicSeq::ones().lambda == 1);
}

TEST_CASE("prime classification") {
    auto seq = PeriodicSeq::parse("t=2;r=0,1");  // m = 3
    CHECK(classify_prime(seq, 5) == PrimeClass::SIGMA1);
    CHECK(classify_prime(seq, 3) == PrimeClass::SIGMA1);
    CHECK(classify_prime(seq, 2) == PrimeClass::SIGMA2);  // r_2 != 0

    auto gap = PeriodicSeq::parse("t=4;r=1,0,1,0");  // m = 5
    CHECK(classify_prime(gap, 2) == PrimeClass::SIGMA3);  // multiples of 4 all zero
    CHECK(classify_prime(gap, 3) == PrimeClass::SIGMA2);
    CHECK(classify_prime(gap, 5) == PrimeClass::SIGMA1);

    // SIGMA3 forces p | t.
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull}) {
        auto c = classify_prime(PeriodicSeq::parse("t=3;r=0,1,1"), p);
        if (c == PrimeClass::SIGMA3) CHECK(3 % p == 0);
    }
}

TEST_CASE("per-prime constants") {
    auto seq = PeriodicSeq::parse("t=2;r=0,1");  // m = 3
    CHECK(mu_of(seq, 2) == 1);                   // 2^1 <= 2
    CHECK(mu_of(seq, 5) == 0);
    CHECK(c_p_of(seq, 2) == 4);  // e_2(4) - 0 beats e_2(2) - 0; zeros excluded

    auto gap = PeriodicSeq::parse("t=4;r=1,0,1,0");
    CHECK(f_of(gap, 2) == 2);  // e_2(t) + e_2(r_1) = 2 + 0

    auto ones = PeriodicSeq::ones();
    CHECK(mu_of(ones, 2) == 0);  // m - 1 = 1
    CHECK(c_p_of(ones, 3) == 1);
}

TEST_CASE("support pair/triple analysis") {
    // Consecutive support values 1, 1: not opposite, case one.
    auto ones = PeriodicSeq::ones();
    auto ss = s1_s2(ones);
    CHECK(ss.case_one);

    // r = (1, -1): consecutive support is opposite, the triple case kicks in.
    auto alt = PeriodicSeq::parse("t=2;r=1,-1");
    auto st = s1_s2(alt);
    CHECK_FALSE(st.case_one);

    // The residue sets always live inside [1, t] and are coprime to t.
    auto seq = PeriodicSeq::parse("t=6;r=1,0,0,-1,0,1");
    auto s = s1_s2(seq);
    for (u32 i : s.s1) {
        CHECK(i >= 1);
        CHECK(i <= 6);
        CHECK(std::gcd<u64>(i, 6) == 1);
    }
    for (u32 i : s.s2) CHECK(std::gcd<u64>(i, 6) == 1);
}

TEST_CASE("coprime residue lower bound") {
    for (u32 t : {1u, 2u, 3u, 4u, 6u, 12u, 30u, 210u}) {
        auto [num, den] = coprime_bound(t);
        CHECK(den > 0);
        // Compare against t * prod (1 - s_q/q) recomputed directly.
        mpq_class expect(t);
        for (auto [q, e] : factor_u64(t)) {
            u64 s = (q == 2) ? 1 : 2;
            if (q <= s) {
                expect = 0;
                break;
            }
            expect *= mpq_class(q - s, q);
        }
        if (expect < 0) expect = 0;
        CHECK(mpq_class(num, den) == expect);
    }
}
