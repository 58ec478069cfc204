#include "harmsum/witness.hpp"

#include <algorithm>
#include <stdexcept>

namespace harmsum {

namespace {

u64 next_prime_at_least(u64 x) {
    if (x <= 2) return 2;
    if (x % 2 == 0) ++x;
    while (!is_prime_u64(x)) x += 2;
    return x;
}

// Smallest prime factor of y that is >= threshold, after all smaller prime
// factors are stripped.  0 when nothing remains.
mpz_class qualifying_factor(mpz_class y, u64 threshold) {
    const u64 trial_bound = 10'000'000;
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), y.get_mpz_t());
    auto strip_or_hit = [&](u64 o) -> bool {
        if (mpz_divisible_ui_p(y.get_mpz_t(), o)) {
            if (o >= threshold) return true;  // smallest divisor left, hence prime
            mpz_class oz(static_cast<unsigned long>(o));
            mpz_remove(y.get_mpz_t(), y.get_mpz_t(), oz.get_mpz_t());
            mpz_sqrt(root.get_mpz_t(), y.get_mpz_t());
        }
        return false;
    };
    if (strip_or_hit(2)) return mpz_class(2);
    for (u64 o = 3; o <= trial_bound; o += 2) {
        if (root < o) break;
        if (strip_or_hit(o)) return mpz_class(static_cast<unsigned long>(o));
    }
    if (y == 1) return 0;
    if (root < trial_bound || mpz_probab_prime_p(y.get_mpz_t(), 64) > 0) {
        // Trial division passed sqrt(y), or the cofactor tests prime: y is
        // the one remaining prime factor.
        return y >= threshold ? y : mpz_class(0);
    }
    if (y.fits_ulong_p()) {
        for (auto [p, e] : factor_u64(y.get_ui()))
            if (p >= threshold) return mpz_class(static_cast<unsigned long>(p));
        return 0;
    }
    throw std::runtime_error("cofactor too large to factor");
}

}  // namespace

std::optional<PrimeWitness> find_prime_witness(const PeriodicSeq& seq, u64 m_floor, u64 n_cap) {
    if (m_floor < seq.m) throw std::invalid_argument("floor below the sequence bound");
    std::optional<HarmonicState> st;
    for (u64 n = 1; n <= n_cap; ++n) {
        if (!st) {
            if (seq.at(n) == 0) continue;
            st.emplace(seq, 1u, n);
        } else {
            st->extend_right();
        }
        if (seq.at(n) == 0) continue;
        u64 threshold = std::max(m_floor, n + 1);
        const mpz_class& x = st->numerator_raw();
        if (x == 0) {
            PrimeWitness w;
            w.n = n;
            w.p = mpz_class(static_cast<unsigned long>(next_prime_at_least(threshold)));
            return w;
        }
        mpz_class p = qualifying_factor(abs(x), threshold);
        if (p != 0) {
            PrimeWitness w;
            w.n = n;
            w.p = p;
            return w;
        }
    }
    return std::nullopt;
}

PrimeWitness witness_table_entry(const PeriodicSeq& seq) {
    u64 start = std::max<u64>(static_cast<u64>(seq.r_max_abs), seq.t) + 1;
    for (u64 p = next_prime_at_least(start);; p = next_prime_at_least(p + 1)) {
        HarmonicState st(seq, 1, seq.i1);
        for (u64 n = seq.i1; n < p; ++n) {
            if (n > seq.i1) st.extend_right();
            const mpz_class& x = st.numerator_raw();
            bool divisible = (x == 0) || mpz_divisible_ui_p(x.get_mpz_t(), p);
            if (divisible) {
                PrimeWitness w;
                w.n = n;
                w.p = mpz_class(static_cast<unsigned long>(p));
                return w;
            }
        }
    }
}

std::vector<WitnessTableRow> reproduce_witness_table() {
    struct Entry {
        std::vector<long> r;
        u64 n, p;
    };
    const Entry published[] = {
        {{1}, 2, 3},      {{2}, 2, 3},      {{1, -2}, 2, 3}, {{1, -1}, 3, 5},
        {{1, 0}, 7, 11},  {{1, 2}, 3, 7},   {{2, -2}, 3, 5}, {{2, -1}, 2, 3},
        {{2, 0}, 7, 11},  {{2, 1}, 2, 5},   {{0, 1}, 6, 11}, {{0, 2}, 6, 11},
    };
    std::vector<WitnessTableRow> out;
    for (const Entry& e : published) {
        WitnessTableRow row{PeriodicSeq::from_values(e.r), e.n, e.p, 0, 0, false};
        PrimeWitness w = witness_table_entry(row.seq);
        row.got_n = w.n;
        row.got_p = w.p.get_ui();
        row.ok = (row.got_n == e.n && row.got_p == e.p);
        out.push_back(std::move(row));
    }
    return out;
}

Theorem1Witness theorem1_certify(const PeriodicSeq& seq, u64 a, const PrimeWitness& w) {
    Theorem1Witness tw;
    tw.p = w.p;
    tw.n = w.n;
    tw.lambda = seq.lambda;
    if (!w.p.fits_ulong_p()) throw std::invalid_argument("witness prime too large");
    u64 p = w.p.get_ui();
    auto [k, l] = split_valuation(w.n, p);
    tw.k = k;
    tw.l = l;

    u64 need = std::max<u64>(a, 2 * static_cast<u64>(seq.t));
    mpz_class pk;  // p^(lambda*k1 + k)
    u64 k1 = 1;
    for (;; ++k1) {
        mpz_ui_pow_ui(pk.get_mpz_t(), p, tw.lambda * k1 + k);
        if (pk >= need) break;
    }
    tw.k1 = k1;
    mpz_class plk;
    mpz_ui_pow_ui(plk.get_mpz_t(), p, tw.lambda * k1);
    tw.b = mpz_class(static_cast<unsigned long>(w.n)) * plk;

    if (!tw.b.fits_ulong_p()) throw std::invalid_argument("certificate window too large");
    u64 b = tw.b.get_ui();
    HarmonicState st = HarmonicState::over(seq, 1, a, b - 1);
    const mpz_class& x = st.numerator_raw();
    mpz_class lz(static_cast<unsigned long>(l));
    if (x == 0)
        tw.gcd = lz;
    else
        mpz_gcd(tw.gcd.get_mpz_t(), x.get_mpz_t(), lz.get_mpz_t());
    tw.accepted = tw.gcd < w.p;
    return tw;
}

bool prelimprop_check(const PeriodicSeq& seq, const PrimeWitness& w) {
    if (!w.p.fits_ulong_p()) return false;
    u64 p = w.p.get_ui();
    auto [k, l] = split_valuation(w.n, p);
    u64 pk = 1;
    for (unsigned i = 0; i < k; ++i) pk *= p;
    bool found = false;
    for (u64 j = 1; j < l; ++j) {
        if (seq.at(j * pk) != 0) {
            found = true;
            break;
        }
    }
    if (!found) return false;
    HarmonicState st = HarmonicState::over(seq, 1, 1, w.n);
    return st.l_valuation(p) == k;
}

bool gcd_step_inequality(const PeriodicSeq& seq, u64 a, u64 b) {
    HarmonicState prev = HarmonicState::over(seq, 1, a, b - 1);
    HarmonicState full = prev;
    full.extend_right();
    for (u32 q : primes_up_to(static_cast<u32>(b))) {
        unsigned long g_prev = prev.g_valuation(q);
        unsigned long g_full = full.g_valuation(q);
        Valuation ex = prev.x_valuation(q);
        auto [eb, rest] = split_valuation(b, q);
        (void)rest;
        unsigned long cut = ex.finite ? std::min<unsigned long>(ex.val, eb) : eb;
        if (g_full + cut < g_prev) return false;
    }
    return true;
}

namespace {

u64 pow_checked(u64 base, u64 exp) {
    u64 r = 1;
    for (u64 i = 0; i < exp; ++i) {
        if (r > UINT64_MAX / base) throw std::overflow_error("interval bound overflows");
        r *= base;
    }
    return r;
}

}  // namespace

IntervalCheckReport lemma3_interval_check(const PeriodicSeq& seq, u64 p, unsigned k_max,
                                          u64 n_cap) {
    if (classify_prime(seq, p) == PrimeClass::SIGMA3)
        throw std::invalid_argument("prime sits in the third regime");
    IntervalCheckReport rep;
    unsigned mu = mu_of(seq, p);
    u64 c = c_p_of(seq, p);
    HarmonicState st(seq, 1, 1);
    for (u64 n = 1; n <= n_cap; ++n) {
        if (n > 1) st.extend_right();
        bool inside = false;
        for (unsigned k = 1; k <= k_max && !inside; ++k) {
            u64 step;
            try {
                step = pow_checked(p, seq.lambda * k);
            } catch (const std::overflow_error&) {
                break;
            }
            if (c > n_cap / step) break;
            u64 lo = c * step;
            if (n >= lo && n - lo < step) inside = true;
        }
        if (!inside) continue;
        ++rep.checked;
        Valuation e = st.x_valuation(p);
        if (!e.finite || e.val > mu) {
            rep.ok = false;
            rep.first_bad_n = n;
            return rep;
        }
    }
    return rep;
}

IntervalCheckReport sigma3_check(const PeriodicSeq& seq, u64 p, u64 n_cap) {
    if (classify_prime(seq, p) != PrimeClass::SIGMA3)
        throw std::invalid_argument("prime is not in the third regime");
    IntervalCheckReport rep;
    unsigned f = f_of(seq, p);
    long r1 = seq.values[seq.i1 - 1];
    u64 mod = static_cast<u64>(seq.t) * seq.t * seq.t * static_cast<u64>(r1 * r1);
    HarmonicState st(seq, 1, 1);
    for (u64 n = 1; n <= n_cap; ++n) {
        if (n > 1) st.extend_right();
        if (n % mod != seq.i1 % mod) continue;
        ++rep.checked;
        Valuation e = st.x_valuation(p);
        if (!e.finite || e.val >= f) {
            rep.ok = false;
            rep.first_bad_n = n;
            return rep;
        }
    }
    return rep;
}

IntervalCheckReport xbisxab_check(const PeriodicSeq& seq, u64 q, unsigned k, u64 a, u64 n_cap) {
    u64 qlk = pow_checked(q, seq.lambda * k);
    if (a * static_cast<u64>(seq.m) > qlk)
        throw std::invalid_argument("window start too large for this interval");
    u64 c = c_p_of(seq, q);
    u64 lo = c * qlk;
    u64 hi_open = (c + 1) * qlk;
    IntervalCheckReport rep;
    if (lo > n_cap) return rep;
    u64 hi = std::min(hi_open - 1, n_cap);
    if (hi < lo) return rep;
    if (a > lo || seq.i1 > lo) throw std::invalid_argument("interval starts before the windows");
    HarmonicState prefix = HarmonicState::over(seq, 1, seq.i1, lo);
    HarmonicState window = HarmonicState::over(seq, 1, a, lo);
    for (u64 n = lo;; ++n) {
        ++rep.checked;
        if (!(prefix.x_valuation(q) == window.x_valuation(q))) {
            rep.ok = false;
            rep.first_bad_n = n;
            return rep;
        }
        if (n == hi) break;
        prefix.extend_right();
        window.extend_right();
    }
    return rep;
}

}  // namespace harmsum
