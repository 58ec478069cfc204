#include "harmsum/nonperiodic.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "harmsum/certified.hpp"
#include "harmsum/density.hpp"

namespace harmsum {

namespace {

// Largest prime power p^k || n together with the cofactor l = n / p^k.
struct Split {
    u64 p, l;
    unsigned k;
};

Split split_largest(const SpfSieve& sieve, u64 n) {
    auto fac = sieve.factor(static_cast<u32>(n));
    auto [p, k] = fac.back();
    u64 pk = 1;
    for (unsigned i = 0; i < k; ++i) pk *= p;
    return {p, n / pk, k};
}

}  // namespace

GreedyRun greedy_sequence(const std::vector<long>& A, u64 N) {
    if (A.empty()) throw std::invalid_argument("empty palette");
    if (N == 0 || N > 100'000'000) throw std::invalid_argument("horizon out of range");

    GreedyRun run;
    run.A = A;
    run.N = N;
    run.r.reserve(N);

    SpfSieve sieve(static_cast<u32>(std::max<u64>(N, 2)));
    mpz_class L = 1, X = 0, Lnew, Xbase, unit, g;

    for (u64 n = 1; n <= N; ++n) {
        mpz_lcm_ui(Lnew.get_mpz_t(), L.get_mpz_t(), n);
        mpz_divexact(Xbase.get_mpz_t(), Lnew.get_mpz_t(), L.get_mpz_t());
        Xbase *= X;
        mpz_divexact_ui(unit.get_mpz_t(), Lnew.get_mpz_t(), n);

        const long* choice = nullptr;
        if (n == 1) {
            choice = &A.front();
        } else {
            Split s = split_largest(sieve, n);
            if (s.l == 1) {
                // n = p^k: any numerator prime to p keeps e_p(X_n) = 0.
                for (const long& c : A)
                    if (c % static_cast<long>(s.p) != 0) {
                        choice = &c;
                        break;
                    }
            } else if (s.l < s.p) {
                // n = l*p^k with 1 < l < p: keep X_n nonzero mod p.
                u64 xb = mpz_fdiv_ui(Xbase.get_mpz_t(), s.p);
                u64 un = mpz_fdiv_ui(unit.get_mpz_t(), s.p);
                for (const long& c : A) {
                    long cm = c % static_cast<long>(s.p);
                    if (cm < 0) cm += static_cast<long>(s.p);
                    if ((xb + mulmod(static_cast<u64>(cm), un, s.p)) % s.p != 0) {
                        choice = &c;
                        break;
                    }
                }
            } else {
                choice = &A.front();
            }
        }

        if (!choice) {  // no palette element satisfies the step's congruence
            run.all_coprime = false;
            run.fail_n = n;
            return run;
        }

        X = Xbase + *choice * unit;
        L = Lnew;
        run.r.push_back(*choice);

        mpz_gcd(g.get_mpz_t(), X.get_mpz_t(), L.get_mpz_t());
        if (g != 1) {
            run.all_coprime = false;
            run.fail_n = n;
            return run;
        }
    }
    return run;
}

std::optional<u64> palette_violation(const std::vector<long>& A) {
    if (A.empty()) throw std::invalid_argument("empty palette");
    bool odd = false;
    for (long c : A) odd |= (c % 2 != 0);
    if (!odd) return 2;
    u64 g = 0;
    for (size_t i = 0; i + 1 < A.size(); ++i)
        for (size_t j = i + 1; j < A.size(); ++j) {
            long d = A[i] - A[j];
            u64 ad = d < 0 ? static_cast<u64>(-(d + 1)) + 1 : static_cast<u64>(d);
            g = std::gcd(g, ad);
        }
    if (g > 1)
        for (auto [p, e] : factor_u64(g))
            if (p != 2) return p;
    return std::nullopt;
}

std::optional<SparseStep> sparse_step(u64 b_prev) {
    if (b_prev < 10) throw std::invalid_argument("window too small");
    if (b_prev > 3'000'000)
        throw std::runtime_error("prime-product budget exceeded");

    mpz_class rt;
    mpz_sqrt(rt.get_mpz_t(), mpz_class(b_prev).get_mpz_t());
    u64 lo = rt.get_ui();  // primes strictly above sqrt(b_prev)

    SparseStep st;
    st.b_prev = b_prev;
    st.Q = 1;
    for (u32 p : primes_up_to(static_cast<u32>(b_prev))) {
        if (p <= lo) continue;
        st.I.push_back(p);
        st.Q *= p;
        if (st.q == 0 && 2 * static_cast<u64>(p) <= b_prev &&
            (p % 12 == 1 || p % 12 == 11))
            st.q = p;
    }
    if (st.I.empty() || st.q == 0) return std::nullopt;

    // x mod p so that (x * Q/p) mod p lands on the wanted root: the midpoint
    // (p+1)/2 away from q, a root of 3x^2 - 6x + 2 at q.
    st.x = 0;
    mpz_class part, add;
    for (u64 p : st.I) {
        mpz_divexact_ui(part.get_mpz_t(), st.Q.get_mpz_t(), p);
        u64 mp = mpz_fdiv_ui(part.get_mpz_t(), p);
        u64 inv = invmod(mp, p);
        u64 want = (p == st.q) ? roots_mod_p(2, p).front() : (p + 1) / 2;
        // need (x * Q/p) = want mod p, so x = want * inv mod p; the CRT
        // summand then carries a second inv to place that residue.
        u64 res = mulmod(mulmod(want, inv, p), inv, p);
        add = part * res;
        st.x += add;
    }
    st.x %= st.Q;

    st.b = st.x * st.Q;
    st.a = st.b - b_prev;

    st.support.push_back(st.b);
    st.support.push_back(st.b - 2 * st.q);
    for (u64 p : st.I) st.support.push_back(st.b - p);
    std::sort(st.support.begin(), st.support.end());

    auto reduced_den = [](const std::vector<mpz_class>& idx) {
        mpz_class L = 1, X = 0, t;
        for (const mpz_class& i : idx) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), i.get_mpz_t());
        for (const mpz_class& i : idx) {
            mpz_divexact(t.get_mpz_t(), L.get_mpz_t(), i.get_mpz_t());
            X += t;
        }
        mpz_gcd(t.get_mpz_t(), X.get_mpz_t(), L.get_mpz_t());
        return mpz_class(L / t);
    };

    std::vector<mpz_class> prev(st.support.begin(), st.support.end() - 1);
    st.v_prev = reduced_den(prev);
    st.v_next = reduced_den(st.support);
    st.drop_verified = st.v_next < st.v_prev;

    RealBound ratio = RealBound::from_long(static_cast<long>(b_prev)) /
                      RealBound::log_of(st.a);
    st.ratio = ratio.str(6);
    return st;
}

SparseRun sparse_run(u64 b0, int max_steps) {
    SparseRun run;
    u64 b = b0;
    for (int s = 0; s < max_steps; ++s) {
        if (b > 3'000'000) {
            run.stopped = "prime-product budget";
            break;
        }
        auto st = sparse_step(b);
        if (!st) {
            run.stopped = "no qualifying prime";
            break;
        }
        run.steps.push_back(*st);
        if (!st->b.fits_ulong_p()) {
            run.stopped = "prime-product budget";
            break;
        }
        b = st->b.get_ui();
    }
    return run;
}

}  // namespace harmsum
