#include "harmsum/density.hpp"

#include <algorithm>
#include <stdexcept>

namespace harmsum {

namespace {

constexpr u64 kExhaustiveRootBound = 10'000;

// Dense polynomials mod p, degree-ascending, no trailing zeros.
using Poly = std::vector<u64>;

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_rem(Poly a, const Poly& f, u64 p) {
    while (a.size() >= f.size()) {
        u64 c = mulmod(a.back(), invmod(f.back(), p), p);
        size_t off = a.size() - f.size();
        for (size_t i = 0; i < f.size(); ++i) {
            u64 s = mulmod(c, f[i], p);
            a[off + i] = (a[off + i] + p - s) % p;
        }
        trim(a);
        if (a.empty()) break;
    }
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, u64 p) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + mulmod(a[i], b[j], p)) % p;
    trim(c);
    return poly_rem(std::move(c), f, p);
}

// x^e mod (f, p)
Poly poly_xpow(u64 e, const Poly& f, u64 p) {
    Poly result{1}, base{0, 1};
    base = poly_rem(base, f, p);
    while (e > 0) {
        if (e & 1) result = poly_mulmod(result, base, f, p);
        base = poly_mulmod(base, base, f, p);
        e >>= 1;
    }
    return result;
}

Poly poly_gcd(Poly a, Poly b, u64 p) {
    while (!b.empty()) {
        Poly r = poly_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty() && a.back() != 1) {
        u64 c = invmod(a.back(), p);
        for (auto& v : a) v = mulmod(v, c, p);
    }
    return a;
}

Poly fd_mod_p(unsigned d, u64 p) {
    FdPoly f = fd_expand(d);
    Poly r(f.coeffs.size());
    for (size_t i = 0; i < r.size(); ++i) {
        long m = static_cast<long>(mpz_fdiv_ui(f.coeffs[i].get_mpz_t(), p));
        r[i] = static_cast<u64>(m);
    }
    trim(r);
    return r;
}

// Distinct-root part: gcd(f, x^p - x).
Poly root_part(const Poly& f, u64 p) {
    if (f.size() <= 1) return {};
    Poly xp = poly_xpow(p, f, p);
    // xp - x
    if (xp.size() < 2) xp.resize(2, 0);
    xp[1] = (xp[1] + p - 1) % p;
    trim(xp);
    return poly_gcd(f, xp, p);
}

Poly poly_divexact(const Poly& g, const Poly& divisor, u64 p) {
    Poly rem = g, quot(g.size() - divisor.size() + 1, 0);
    u64 lead_inv = invmod(divisor.back(), p);
    while (rem.size() >= divisor.size()) {
        u64 cc = mulmod(rem.back(), lead_inv, p);
        size_t off = rem.size() - divisor.size();
        quot[off] = cc;
        for (size_t i = 0; i < divisor.size(); ++i) {
            u64 s = mulmod(cc, divisor[i], p);
            rem[off + i] = (rem[off + i] + p - s) % p;
        }
        trim(rem);
        if (rem.empty()) break;
    }
    trim(quot);
    return quot;
}

// Splits a squarefree product of linear factors into its roots (p odd).
void split_linears(const Poly& g, u64 p, std::vector<u64>& out) {
    if (g.size() <= 1) return;
    if (g.size() == 2) {
        out.push_back(mulmod(p - g[0] % p, invmod(g[1], p), p));
        return;
    }
    for (u64 c = 0;; ++c) {
        if (c > 4 * p) throw std::logic_error("root splitting failed to converge");
        // gcd(g, (x+c)^{(p-1)/2} - 1) separates roots by quadratic character.
        Poly base = poly_rem(Poly{c % p, 1}, g, p);
        Poly h{1};
        u64 e = (p - 1) / 2;
        while (e > 0) {
            if (e & 1) h = poly_mulmod(h, base, g, p);
            base = poly_mulmod(base, base, g, p);
            e >>= 1;
        }
        if (h.empty()) continue;
        h[0] = (h[0] + p - 1) % p;
        trim(h);
        Poly left = poly_gcd(g, h.empty() ? Poly{} : h, p);
        if (left.size() > 1 && left.size() < g.size()) {
            split_linears(left, p, out);
            split_linears(poly_divexact(g, left, p), p, out);
            return;
        }
    }
}

u64 valuation_u64(const mpz_class& v, u64 p) {
    if (v == 0) throw std::logic_error("valuation of zero");
    mpz_class t, pz(static_cast<unsigned long>(p));
    return mpz_remove(t.get_mpz_t(), v.get_mpz_t(), pz.get_mpz_t());
}

struct MzWindow {
    mpz_class L = 1, X = 0;
};

// Exact L and X for the all-ones window [a, b] at exponent 1, with
// arbitrary-precision endpoints (witness windows sit far beyond 2^64).
MzWindow window_sum(const mpz_class& a, const mpz_class& b) {
    MzWindow w;
    for (mpz_class i = a; i <= b; ++i) mpz_lcm(w.L.get_mpz_t(), w.L.get_mpz_t(), i.get_mpz_t());
    for (mpz_class i = a; i <= b; ++i) {
        mpz_class q;
        mpz_divexact(q.get_mpz_t(), w.L.get_mpz_t(), i.get_mpz_t());
        w.X += q;
    }
    return w;
}

}  // namespace

FdPoly fd_expand(unsigned d) {
    if (d < 1) throw std::invalid_argument("d must be positive");
    // P = prod_{j=0}^{d} (x - j); f_d = P'.
    std::vector<mpz_class> P{1};
    for (unsigned j = 0; j <= d; ++j) {
        P.push_back(0);
        for (size_t i = P.size() - 1; i > 0; --i) P[i] = P[i - 1] - P[i] * static_cast<long>(j);
        P[0] *= -static_cast<long>(j);
    }
    FdPoly f;
    f.d = d;
    f.coeffs.resize(d + 1);
    for (unsigned i = 0; i <= d; ++i) f.coeffs[i] = P[i + 1] * static_cast<long>(i + 1);
    return f;
}

std::vector<u64> roots_mod_p_exhaustive(unsigned d, u64 p) {
    Poly f = fd_mod_p(d, p);
    std::vector<u64> roots;
    for (u64 x = 0; x < p; ++x) {
        u64 v = 0;
        for (size_t i = f.size(); i-- > 0;) v = (mulmod(v, x, p) + f[i]) % p;
        if (v == 0) roots.push_back(x);
    }
    return roots;
}

std::vector<u64> roots_mod_p(unsigned d, u64 p) {
    if (!is_prime_u64(p)) throw std::invalid_argument("p must be prime");
    if (p < kExhaustiveRootBound) return roots_mod_p_exhaustive(d, p);
    Poly g = root_part(fd_mod_p(d, p), p);
    std::vector<u64> roots;
    split_linears(g, p, roots);
    std::sort(roots.begin(), roots.end());
    return roots;
}

unsigned root_count_mod_p(unsigned d, u64 p) {
    if (!is_prime_u64(p)) throw std::invalid_argument("p must be prime");
    if (p < 5) return static_cast<unsigned>(roots_mod_p_exhaustive(d, p).size());
    Poly g = root_part(fd_mod_p(d, p), p);
    return g.empty() ? 0 : static_cast<unsigned>(g.size() - 1);
}

DeltaEstimate delta_estimate(unsigned d, u64 lo, u64 hi) {
    DeltaEstimate e;
    e.d = d;
    e.window_lo = lo;
    e.window_hi = hi;
    for (u64 p : primes_up_to(hi)) {
        if (p < lo) continue;
        ++e.primes_tested;
        if (root_count_mod_p(d, p) > 0) ++e.solvable;
    }
    if (e.primes_tested == 0) throw std::invalid_argument("empty prime window");
    e.estimate = mpq_class(static_cast<unsigned long>(e.solvable),
                           static_cast<unsigned long>(e.primes_tested));
    e.estimate.canonicalize();
    return e;
}

mpq_class derangement_fraction(unsigned l) {
    if (l < 1) throw std::invalid_argument("l must be positive");
    mpq_class s = 0;
    mpz_class fact = 1, pow2 = 1;
    for (unsigned i = 0; i <= l; ++i) {
        if (i > 0) {
            fact *= i;
            pow2 *= 2;
        }
        mpq_class term(mpz_class(1), fact * pow2);
        s += (i % 2 == 0) ? term : -term;
    }
    return mpq_class(1) - s;
}

namespace {

mpq_class weight_sum(unsigned l_lo, unsigned l_hi) {
    mpq_class s = 0;
    for (unsigned l = l_lo; l <= l_hi; ++l)
        s += mpq_class(1, static_cast<unsigned long>(2 * l) *
                              static_cast<unsigned long>(2 * l + 1));
    return s;
}

bool closed_form_certified(unsigned l) { return l <= 30 && l != 4 && l != 12 && l != 24; }

}  // namespace

CConstant estimate_c(unsigned l_max, u64 prime_lo, u64 prime_hi) {
    if (l_max < 30) throw std::invalid_argument("l_max must be at least 30");
    CConstant c;
    c.odd_part = RealBound::log_of(mpz_class(2), 256);
    for (unsigned l = 1; l <= l_max; ++l) {
        mpq_class w(1, static_cast<unsigned long>(2 * l) * static_cast<unsigned long>(2 * l + 1));
        if (closed_form_certified(l)) {
            mpq_class term = derangement_fraction(l) * w;
            c.closed_form += term;
            c.even_lo += term;
            c.even_hi += term;
        } else {
            c.even_lo += delta_estimate(2 * l, prime_lo, prime_hi).estimate * w;
            c.even_hi += w;
        }
    }
    // Tail beyond l_max: exact partial plus sum_{l>500} 1/(2l(2l+1)) < 1/2000.
    c.tail_hi = weight_sum(l_max + 1, 500) + mpq_class(1, 2000);
    c.lower = c.odd_part + RealBound::from_mpq(c.even_lo, 256);
    c.upper = c.odd_part + RealBound::from_mpq(c.even_hi + c.tail_hi, 256);
    return c;
}

namespace {

// CRT over the S-primes: x = x_p * (Q/p)^{-1} mod p for each p.
void crt_from_roots(LiminfWitness& w) {
    w.Q = 1;
    std::vector<u64> all;
    for (const auto& [d, ps] : w.S)
        for (u64 p : ps) all.push_back(p);
    for (u64 p : all) w.Q *= static_cast<unsigned long>(p);
    w.x = 0;
    for (u64 p : all) {
        mpz_class Mp = w.Q / static_cast<unsigned long>(p);
        u64 mp = mpz_fdiv_ui(Mp.get_mpz_t(), p);
        u64 y = invmod(mp, p);
        u64 target = mulmod(w.x_p.at(p) % p, y, p);  // residue of x mod p
        // contribution target * Mp * y mod Q
        mpz_class add = Mp * static_cast<unsigned long>(mulmod(target, y, p));
        w.x = (w.x + add) % w.Q;
    }
    w.b = w.x * w.Q;
    w.a = w.b - static_cast<unsigned long>(w.n);
}

}  // namespace

void rebuild_from_roots(LiminfWitness& w) {
    crt_from_roots(w);
    RealBound la = RealBound::log_of(w.a, 256);
    w.ratio = (RealBound::from_long(static_cast<long>(w.n), 256) / la).str(12);
}

std::optional<LiminfWitness> build_liminf_witness(u64 n) {
    if (n < 20) throw std::invalid_argument("n must be at least 20");
    LiminfWitness w;
    w.n = n;
    u64 dmax = 1;
    while ((dmax + 1) * (dmax + 1) <= n) ++dmax;
    --dmax;  // largest d with (d+1)^2 <= n, i.e. isqrt(n) - 1
    if (dmax < 2) throw std::invalid_argument("n too small for a two-root class");

    for (u64 p : primes_up_to(n)) {
        if (p <= n / (dmax + 1)) continue;
        unsigned d = static_cast<unsigned>(n / p);
        auto roots = roots_mod_p(d, p);
        if (roots.empty()) {
            w.T.push_back(p);
            continue;
        }
        w.S[d].push_back(p);
        w.x_p[p] = roots.front();
        if (d == 2 && roots.size() == 2 && p > w.q) w.q = p;
    }
    if (w.q == 0) return std::nullopt;  // no two-root prime in the f2 class

    auto qroots = roots_mod_p(2, w.q);
    mpz_class best_x = -1, best_b, best_a;
    u64 best_root = 0;
    for (u64 r : qroots) {
        w.x_p[w.q] = r;
        crt_from_roots(w);
        if (w.x > best_x) {
            best_x = w.x;
            best_b = w.b;
            best_a = w.a;
            best_root = r;
        }
    }
    w.x_p[w.q] = best_root;
    rebuild_from_roots(w);
    return w;
}

CongruenceReport verify_witness_congruences(const LiminfWitness& w) {
    CongruenceReport rep;
    MzWindow full = window_sum(w.a, w.b);
    MzWindow prev = window_sum(w.a, w.b - 1);
    mpz_class g_full = gcd(full.X, full.L);
    mpz_class g_prev = gcd(prev.X, prev.L);
    auto fail = [&](u64 p, const char* what) {
        rep.ok = false;
        rep.bad_prime = p;
        rep.what = what;
        return rep;
    };
    for (const auto& [d, ps] : w.S) {
        for (u64 p : ps) {
            if (valuation_u64(full.L, p) != 1) return fail(p, "L-exponent");
            if (!mpz_divisible_ui_p(full.X.get_mpz_t(), p)) return fail(p, "X-divisible");
            if (mpz_divisible_ui_p(prev.X.get_mpz_t(), p)) return fail(p, "X-prev");
        }
    }
    for (u64 p : w.T)
        if (valuation_u64(g_full, p) > valuation_u64(g_prev, p)) return fail(p, "T-growth");
    return rep;
}

}  // namespace harmsum
