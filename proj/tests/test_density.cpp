#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <gmpxx.h>

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "harmsum/density.hpp"
#include "harmsum/primes.hpp"

using namespace harmsum;

namespace {

// Independent expansion: multiply out prod (x - j), then differentiate.
std::vector<mpz_class> fd_oracle(unsigned d) {
    std::vector<mpz_class> P{1};
    for (unsigned j = 0; j <= d; ++j) {
        std::vector<mpz_class> next(P.size() + 1);
        for (size_t i = 0; i < P.size(); ++i) {
            next[i + 1] += P[i];
            next[i] -= P[i] * static_cast<long>(j);
        }
        P = std::move(next);
    }
    std::vector<mpz_class> der(P.size() - 1);
    for (size_t i = 1; i < P.size(); ++i) der[i - 1] = P[i] * static_cast<long>(i);
    return der;
}

mpz_class eval(const std::vector<mpz_class>& c, long x) {
    mpz_class v = 0;
    for (size_t i = c.size(); i-- > 0;) v = v * x + c[i];
    return v;
}

}  // namespace

TEST_CASE("critical polynomial expansion") {
    auto f1 = fd_expand(1);
    REQUIRE(f1.coeffs.size() == 2);
    CHECK(f1.coeffs[0] == -1);  // 2x - 1
    CHECK(f1.coeffs[1] == 2);

    auto f2 = fd_expand(2);
    REQUIRE(f2.coeffs.size() == 3);
    CHECK(f2.coeffs[0] == 2);  // 3x^2 - 6x + 2
    CHECK(f2.coeffs[1] == -6);
    CHECK(f2.coeffs[2] == 3);

    CHECK_THROWS_AS(fd_expand(0), std::invalid_argument);

    for (unsigned d = 1; d <= 60; ++d) CHECK(fd_expand(d).coeffs == fd_oracle(d));

    // Leading coefficient d+1; reflection f_d(x) = (-1)^d f_d(d-x).
    for (unsigned d : {1u, 2u, 7u, 50u, 120u, 200u}) {
        auto f = fd_expand(d);
        REQUIRE(f.coeffs.size() == d + 1);
        CHECK(f.coeffs[d] == d + 1);
        long sign = d % 2 == 0 ? 1 : -1;
        for (long x = -2; x <= static_cast<long>(d) + 2; ++x)
            CHECK(eval(f.coeffs, x) == sign * eval(f.coeffs, static_cast<long>(d) - x));
    }
}

TEST_CASE("roots of the quadratic") {
    CHECK(roots_mod_p(2, 11) == std::vector<u64>{3, 10});
    CHECK(roots_mod_p(2, 13) == std::vector<u64>{4, 11});
    CHECK(roots_mod_p(2, 5).empty());
    CHECK(roots_mod_p(2, 7).empty());
    CHECK(roots_mod_p(2, 3).empty());        // degree collapses to a unit
    CHECK(roots_mod_p(2, 2) == std::vector<u64>{0});  // x^2 mod 2

    // Roots really satisfy the congruence, and there are never more than 2.
    for (u64 p : {11ull, 13ull, 59ull, 9973ull, 10007ull, 100003ull}) {
        auto rts = roots_mod_p(2, p);
        CHECK(rts.size() <= 2);
        CHECK(rts.size() == root_count_mod_p(2, p));
        for (u64 x : rts) {
            u64 v = (mulmod(mulmod(3 % p, x, p), x, p) + mulmod(p - 6 % p, x, p) + 2) % p;
            CHECK(v == 0);
        }
    }
}

TEST_CASE("factor-splitting path agrees with the exhaustive scan") {
    // Straddle the internal cutoff from both sides.
    for (u64 p : {9967ull, 9973ull, 10007ull, 10009ull, 10037ull})
        for (unsigned d : {2u, 3u, 5u, 6u}) {
            auto a = roots_mod_p(d, p);
            auto b = roots_mod_p_exhaustive(d, p);
            std::sort(a.begin(), a.end());
            CAPTURE(p);
            CAPTURE(d);
            CHECK(a == b);
            CHECK(root_count_mod_p(d, p) == b.size());
        }
}

TEST_CASE("quadratic solvability is a residue condition") {
    // For odd p, 3x^2-6x+2 has a root exactly when p = +-1 mod 12 (the
    // discriminant 12 must be a square).  p = 2 is the lone exception.
    for (u64 p = 3; p <= 20000; ++p) {
        if (!is_prime_u64(p)) continue;
        bool pm1 = p % 12 == 1 || p % 12 == 11;
        CAPTURE(p);
        CHECK((root_count_mod_p(2, p) > 0) == pm1);
    }
    CHECK(root_count_mod_p(2, 2) == 1);
}

TEST_CASE("odd-degree criticals always have the midpoint root") {
    // f_d(x) = -f_d(d-x) pins x = d/2 as a root mod every odd prime.
    for (unsigned d = 1; d <= 15; d += 2)
        for (u64 p : {3ull, 5ull, 101ull, 997ull, 10007ull}) {
            auto rts = roots_mod_p(d, p);
            u64 mid = mulmod(d % p, invmod(2, p), p);
            CAPTURE(d);
            CAPTURE(p);
            CHECK(std::find(rts.begin(), rts.end(), mid) != rts.end());
        }

    for (unsigned d = 1; d <= 15; d += 2) {
        auto de = delta_estimate(d, 5, 2000);
        CHECK(de.estimate == 1);
        CHECK(de.solvable == de.primes_tested);
    }
}

TEST_CASE("observed quadratic density tracks the residue classes exactly") {
    auto de = delta_estimate(2, 5, 20000);
    u64 expect_total = 0, expect_solvable = 0;
    for (u64 p = 5; p <= 20000; ++p) {
        if (!is_prime_u64(p)) continue;
        ++expect_total;
        if (p % 12 == 1 || p % 12 == 11) ++expect_solvable;
    }
    CHECK(de.primes_tested == expect_total);
    CHECK(de.solvable == expect_solvable);
    CHECK(de.estimate == mpq_class(expect_solvable, expect_total));
    CHECK(de.primes_tested == 2260);
    CHECK(de.solvable == 1121);
    // Chebotarev says 1/2 in the limit; the window sits close already.
    CHECK(abs(de.estimate - mpq_class(1, 2)) < mpq_class(1, 50));
}

TEST_CASE("signed-permutation fixed fractions") {
    CHECK(derangement_fraction(1) == mpq_class(1, 2));
    CHECK(derangement_fraction(2) == mpq_class(3, 8));
    CHECK(derangement_fraction(3) == mpq_class(19, 48));
    CHECK_THROWS_AS(derangement_fraction(0), std::invalid_argument);

    // Alternating-series tail: consecutive values bracket the limit.
    auto prev = derangement_fraction(8);
    for (unsigned l = 9; l <= 14; ++l) {
        auto cur = derangement_fraction(l);
        CHECK(abs(cur - prev) < mpq_class(1, 1000000));
        prev = cur;
    }
    CHECK(abs(derangement_fraction(20).get_d() - 0.393469340287) < 1e-9);
}

TEST_CASE("density-constant enclosure") {
    auto c = estimate_c(30, 10000, 60000);

    // The odd part is exactly log 2.
    CHECK(RealBound::same_interval(c.odd_part, RealBound::log_of(mpz_class(2), 256)));

    CHECK(abs(c.closed_form - mpq_class(1281, 10000)) < mpq_class(5, 10000));
    CHECK(c.even_lo >= c.closed_form);
    CHECK(c.even_lo < c.even_hi);
    CHECK(c.tail_hi > 0);

    // Enclosure inside (0.82, 0.85), lower below upper.
    CHECK(RealBound::definitely_less(RealBound::from_mpq(mpq_class(82, 100)), c.lower));
    CHECK(RealBound::definitely_less(c.upper, RealBound::from_mpq(mpq_class(85, 100))));
    CHECK(RealBound::definitely_less(c.lower, c.upper));
}

TEST_CASE("window witness for slow denominator growth") {
    auto w = build_liminf_witness(24);
    REQUIRE(w.has_value());
    CHECK(w->n == 24);
    CHECK(w->q == 11);
    CHECK(w->Q == 7436429);
    CHECK(w->x == 4226665);
    CHECK(w->a == mpz_class("31431294179261"));
    CHECK(w->b == mpz_class("31431294179285"));
    CHECK(w->ratio == "0.772229963327");
    CHECK(w->T.empty());
    REQUIRE(w->S.count(1) == 1);
    CHECK(w->S.at(1) == std::vector<u64>{13, 17, 19, 23});
    CHECK(w->S.at(2) == std::vector<u64>{11});
    CHECK(w->S.at(3) == std::vector<u64>{7});
    CHECK(w->x_p.at(7) == 5);
    CHECK(w->x_p.at(11) == 3);
    CHECK(w->x_p.at(23) == 12);

    auto rep = verify_witness_congruences(*w);
    CHECK(rep.ok);
    CHECK(rep.bad_prime == 0);

    // A longer window, same machinery.
    auto w48 = build_liminf_witness(48);
    REQUIRE(w48.has_value());
    CHECK(w48->q == 23);
    CHECK(w48->b == mpz_class("335382632821722731812190"));
    CHECK(w48->ratio == "0.886106530457");
    CHECK(verify_witness_congruences(*w48).ok);

    // No +-1 mod 12 prime in (n/3, n/2] means no witness.
    CHECK_FALSE(build_liminf_witness(20).has_value());
    CHECK_FALSE(build_liminf_witness(21).has_value());
    CHECK_THROWS_AS(build_liminf_witness(10), std::invalid_argument);
}

TEST_CASE("perturbed residues fail verification") {
    auto w = build_liminf_witness(24);
    REQUIRE(w.has_value());

    auto bad = *w;
    bad.x_p[13] = (bad.x_p[13] + 1) % 13;
    rebuild_from_roots(bad);
    CHECK(bad.x != w->x);  // CRT moved the window
    auto rep = verify_witness_congruences(bad);
    CHECK_FALSE(rep.ok);
    CHECK(rep.bad_prime != 0);
    CHECK_FALSE(rep.what.empty());

    // Rebuilding the untouched witness is a no-op.
    auto same = *w;
    rebuild_from_roots(same);
    CHECK(same.x == w->x);
    CHECK(same.b == w->b);
    CHECK(same.ratio == w->ratio);
}
