#include "harmsum/approx.hpp"

#include <stdexcept>

#include "harmsum/drops.hpp"

namespace harmsum {

namespace {

constexpr mpfr_prec_t kStartPrec = 192;
constexpr mpfr_prec_t kCapPrec = 4096;
constexpr u64 kExhaustiveCap = 5'000'000;
constexpr unsigned long kDigitBudget = 1'000'000;  // decimal digits of b
constexpr u64 kExactDropBudget = 10'000'000;       // window end small enough to scan

void require_distinct_primes(u64 p, u64 q) {
    if (!is_prime_u64(p) || !is_prime_u64(q))
        throw std::invalid_argument("p and q must be prime");
    if (p == q) throw std::invalid_argument("p and q must be distinct");
}

mpz_class two_m_cubed(u64 m) {
    mpz_class mm(static_cast<unsigned long>(m));
    return 2 * mm * mm * mm;
}

// 1/(2m³) as a certified interval.
RealBound eps_bound(u64 m, mpfr_prec_t prec) {
    return RealBound::from_mpq(mpq_class(mpz_class(1), two_m_cubed(m)), prec);
}

// 2·log(q)·m³
RealBound den_bound(u64 q, u64 m, mpfr_prec_t prec) {
    return RealBound::from_mpz(two_m_cubed(m), prec) *
           RealBound::log_of(mpz_class(static_cast<unsigned long>(q)), prec);
}

RealBound log_u(u64 v, mpfr_prec_t prec) {
    return RealBound::log_of(mpz_class(static_cast<unsigned long>(v)), prec);
}

// |b2·log p − b1·log q|
RealBound eps_of(const mpz_class& b1, const mpz_class& b2, u64 p, u64 q, mpfr_prec_t prec) {
    return (RealBound::from_mpz(b2, prec) * log_u(p, prec) -
            RealBound::from_mpz(b1, prec) * log_u(q, prec))
        .abs();
}

bool certainly_nonneg(const RealBound& x) { return mpfr_sgn(x.lo()) >= 0; }

enum class PassOutcome { kFound, kNoPair, kEscalate };

PassOutcome convergent_pass(u64 p, u64 q, u64 m, mpfr_prec_t prec, DirichletApprox& out) {
    RealBound logp = log_u(p, prec), logq = log_u(q, prec);
    RealBound bound = eps_bound(m, prec), dbound = den_bound(q, m, prec);
    RealBound cur = logp / logq;
    mpz_class h0 = 0, h1 = 1, k0 = 1, k1 = 0;  // (h,k)_{-2}, (h,k)_{-1}
    for (int it = 0; it < 300; ++it) {
        auto digit = cur.floor_unique();
        if (!digit) return PassOutcome::kEscalate;
        mpz_class h = *digit * h1 + h0, k = *digit * k1 + k0;
        h0 = h1;
        h1 = h;
        k0 = k1;
        k1 = k;
        if (h >= 1) {
            RealBound eps = eps_of(h, k, p, q, prec);
            RealBound kk = RealBound::from_mpz(k, prec);
            bool eps_ok = RealBound::definitely_less(eps, bound);
            bool eps_big = RealBound::definitely_less(bound, eps);
            bool k_ok = RealBound::definitely_less(kk, dbound);
            bool k_big = RealBound::definitely_less(dbound, kk);
            if (eps_ok && k_ok) {
                out = DirichletApprox{p, q, m, h, k, eps};
                return PassOutcome::kFound;
            }
            if (k_big) return PassOutcome::kNoPair;
            // Later convergents only shrink eps, so a certified-too-large eps
            // moves on; anything undecided needs more precision.
            if (!eps_big) return PassOutcome::kEscalate;
        }
        RealBound frac = cur - RealBound::from_mpz(*digit, prec);
        if (!frac.is_positive()) return PassOutcome::kEscalate;
        cur = RealBound::from_long(1, prec) / frac;
    }
    return PassOutcome::kEscalate;
}

}  // namespace

std::optional<DirichletApprox> dirichlet(u64 p, u64 q, u64 m) {
    require_distinct_primes(p, q);
    if (m < 1) throw std::invalid_argument("m must be positive");
    for (mpfr_prec_t prec = kStartPrec; prec <= kCapPrec; prec *= 2) {
        DirichletApprox out;
        switch (convergent_pass(p, q, m, prec, out)) {
            case PassOutcome::kFound:
                return out;
            case PassOutcome::kNoPair:
                return std::nullopt;
            case PassOutcome::kEscalate:
                break;
        }
    }
    // Precision cap reached without a convergent decision; the direct search
    // settles it with per-candidate certification.
    return dirichlet_exhaustive(p, q, m);
}

std::optional<DirichletApprox> dirichlet_exhaustive(u64 p, u64 q, u64 m) {
    require_distinct_primes(p, q);
    if (m < 1) throw std::invalid_argument("m must be positive");
    mpz_class b2_max;
    for (mpfr_prec_t prec = kStartPrec;; prec *= 2) {
        if (auto f = den_bound(q, m, prec).floor_unique()) {
            b2_max = *f;
            break;
        }
        if (prec > kCapPrec) throw std::runtime_error("cannot certify the b2 search bound");
    }
    if (b2_max > kExhaustiveCap)
        throw std::runtime_error("exhaustive dirichlet search bound too large");
    u64 lim = b2_max.get_ui();
    for (u64 b2 = 1; b2 <= lim; ++b2) {
        for (mpfr_prec_t prec = kStartPrec;; prec *= 2) {
            if (prec > kCapPrec)
                throw std::runtime_error("cannot certify dirichlet candidate at precision cap");
            RealBound alpha = log_u(p, prec) / log_u(q, prec);
            RealBound half = RealBound::from_mpq(mpq_class(1, 2), prec);
            auto nearest = (RealBound::from_long(static_cast<long>(b2), prec) * alpha + half)
                               .floor_unique();
            if (!nearest) continue;
            mpz_class b1 = *nearest < 1 ? mpz_class(1) : *nearest;
            RealBound eps = eps_of(b1, mpz_class(static_cast<unsigned long>(b2)), p, q, prec);
            RealBound bound = eps_bound(m, prec);
            if (RealBound::definitely_less(eps, bound))
                return DirichletApprox{p, q, m,
                                       b1, mpz_class(static_cast<unsigned long>(b2)), eps};
            if (RealBound::definitely_less(bound, eps)) break;
        }
    }
    return std::nullopt;
}

AlignResult kron_align(u64 p, u64 q, u64 m, const RealBound& gamma) {
    auto da = dirichlet(p, q, m);
    if (!da) throw std::runtime_error("no dirichlet pair available");
    if (!gamma.is_positive()) throw std::invalid_argument("gamma must be certified positive");

    AlignResult res;
    res.gamma = gamma;
    for (mpfr_prec_t prec = kStartPrec; prec <= kCapPrec; prec *= 2) {
        RealBound delta = RealBound::from_mpz(da->b2, prec) * log_u(p, prec) -
                          RealBound::from_mpz(da->b1, prec) * log_u(q, prec);
        if (delta.contains_zero()) continue;
        res.plus_branch = delta.is_positive();
        break;
    }

    if (RealBound::same_interval(gamma, da->eps)) {
        // gamma IS the approximation error (same single-source enclosure):
        // C·eps − gamma = 0 exactly at C = 1, which no amount of interval
        // subtraction could certify.
        res.C = 1;
        res.k1 = da->b2;
        res.k2 = da->b1;
        res.certified = true;
        return res;
    }

    for (mpfr_prec_t prec = kStartPrec; prec <= kCapPrec; prec *= 2) {
        RealBound eps = eps_of(da->b1, da->b2, p, q, prec);
        auto c = (gamma / eps).ceil_unique();
        if (!c) continue;
        RealBound offset = RealBound::from_mpz(*c, prec) * eps - gamma;
        if (certainly_nonneg(offset) &&
            RealBound::definitely_less(offset, eps_bound(m, prec))) {
            res.C = *c;
            res.k1 = *c * da->b2;
            res.k2 = *c * da->b1;
            res.certified = true;
            return res;
        }
    }
    // Not certifiable at the cap (gamma too wide or an exact ceiling tie).
    // Report the upper-endpoint ceiling so the caller sees the attempt.
    RealBound eps = eps_of(da->b1, da->b2, p, q, kCapPrec);
    RealBound quo = gamma / eps;
    mpfr_t c;
    mpfr_init2(c, kCapPrec);
    mpfr_ceil(c, quo.hi());
    mpz_class cz;
    if (mpfr_number_p(c)) mpfr_get_z(cz.get_mpz_t(), c, MPFR_RNDN);
    mpfr_clear(c);
    res.C = cz;
    res.k1 = cz * da->b2;
    res.k2 = cz * da->b1;
    res.certified = false;
    return res;
}

namespace {

// Smallest m ≥ lo with 1/(2m³) certifiably below log(1 + 1/c_q)/(2λ); this is
// the approximation quality needed for the midpoint construction to land
// strictly inside the target interval.
u64 alignment_m(u64 lo, u64 c_q, u64 lambda) {
    for (u64 m = std::max<u64>(lo, 2);; ++m) {
        bool ok = false;
        for (mpfr_prec_t prec = kStartPrec; prec <= kCapPrec; prec *= 2) {
            RealBound width =
                RealBound::log_of(mpq_class(static_cast<unsigned long>(c_q + 1),
                                            static_cast<unsigned long>(c_q)),
                                  prec) /
                RealBound::from_long(static_cast<long>(2 * lambda), prec);
            if (RealBound::definitely_less(eps_bound(m, prec), width)) {
                ok = true;
                break;
            }
            if (RealBound::definitely_less(width, eps_bound(m, prec))) break;
        }
        if (ok) return m;
        if (m > lo + 10'000) throw std::runtime_error("no workable approximation quality");
    }
}

}  // namespace

AlignResult gamm_exponents(const PeriodicSeq& seq, u64 n, u64 l, u64 p, u64 k, u64 q,
                           u64 c_q, u64 D,
                           std::optional<std::pair<mpz_class, mpz_class>> forced) {
    require_distinct_primes(p, q);
    if (l < 1 || l % p == 0) throw std::invalid_argument("l must be a unit mod p");
    if (c_q < 1) throw std::invalid_argument("c_q must be positive");
    if (D < k + 2) throw std::invalid_argument("D must be at least k+2");
    {
        u64 pk = 1;
        for (u64 i = 0; i < k; ++i) {
            if (pk > UINT64_MAX / p) throw std::invalid_argument("p^k overflows");
            pk *= p;
        }
        if (n != l * pk) throw std::invalid_argument("n must equal l*p^k");
    }
    const u64 lambda = seq.lambda;

    mpz_class b1, b2;
    if (forced) {
        b1 = forced->first;
        b2 = forced->second;
        if (b1 < 1 || b2 < 1) throw std::invalid_argument("forced pair must be positive");
    } else {
        u64 m_eff = alignment_m(seq.m, c_q, lambda);
        auto da = dirichlet(p, q, m_eff);
        if (!da) throw std::runtime_error("no dirichlet pair available");
        b1 = da->b1;
        b2 = da->b2;
    }

    AlignResult res;
    bool sign_known = false;
    for (mpfr_prec_t prec = kStartPrec; prec <= kCapPrec && !sign_known; prec *= 2) {
        RealBound delta = RealBound::from_mpz(b2, prec) * log_u(p, prec) -
                          RealBound::from_mpz(b1, prec) * log_u(q, prec);
        if (delta.contains_zero()) continue;
        res.plus_branch = delta.is_positive();
        sign_known = true;
    }
    if (!sign_known) throw std::runtime_error("cannot resolve the sign of b2·log p − b1·log q");

    // gamma = ±(log c_q + log(c_q+1) − 2·log n)/(2λ) + D·log p, the midpoint
    // offset that centers n·p^{λk1} inside (c_q·q^{λk2}, (c_q+1)·q^{λk2}).
    auto gamma_at = [&](mpfr_prec_t prec) {
        RealBound mid = (log_u(c_q, prec) + log_u(c_q + 1, prec) -
                         RealBound::from_long(2, prec) * log_u(n, prec)) /
                        RealBound::from_long(static_cast<long>(2 * lambda), prec);
        RealBound dp = RealBound::from_long(static_cast<long>(D), prec) * log_u(p, prec);
        return res.plus_branch ? mid + dp : -mid + dp;
    };

    bool c_known = false;
    for (mpfr_prec_t prec = kStartPrec; prec <= kCapPrec && !c_known; prec *= 2) {
        RealBound gamma = gamma_at(prec);
        RealBound eps = eps_of(b1, b2, p, q, prec);
        if (auto c = (gamma / eps).ceil_unique()) {
            res.gamma = gamma;
            res.C = *c;
            c_known = true;
        }
    }
    if (!c_known) throw std::runtime_error("cannot resolve the alignment multiplier");

    res.k2 = res.C * b1;
    res.k1 = res.plus_branch ? mpz_class(res.C * b2 - D) : mpz_class(res.C * b2 + D);
    if (res.C < 1 || res.k1 < 1 || res.k2 < 1) return res;  // construction degenerate

    mpz_class lk1 = res.k1 * lambda, lk2 = res.k2 * lambda;
    RealBound mid_log(kStartPrec);
    for (mpfr_prec_t prec = kStartPrec; prec <= kCapPrec; prec *= 2) {
        RealBound lo_log = log_u(c_q, prec) + RealBound::from_mpz(lk2, prec) * log_u(q, prec);
        RealBound hi_log =
            log_u(c_q + 1, prec) + RealBound::from_mpz(lk2, prec) * log_u(q, prec);
        mid_log = log_u(n, prec) + RealBound::from_mpz(lk1, prec) * log_u(p, prec);
        if (RealBound::definitely_less(lo_log, mid_log) &&
            RealBound::definitely_less(mid_log, hi_log)) {
            res.certified = true;
            break;
        }
    }
    if (!res.certified) return res;

    // Size of b = n·p^{λk1} in decimal digits, bounded from above.
    RealBound digits = mid_log / RealBound::log_of(mpz_class(10), mid_log.precision());
    mpfr_t du;
    mpfr_init2(du, 64);
    mpfr_set(du, digits.hi(), MPFR_RNDU);
    bool fits = mpfr_number_p(du) && mpfr_cmp_ui(du, kDigitBudget) < 0;
    mpfr_clear(du);
    res.materializable = fits;
    if (!fits) return res;

    if (!lk1.fits_ulong_p()) return res;
    mpz_class pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), p, lk1.get_ui());
    res.b = pw * n;

    if (res.b.fits_ulong_p() && res.b.get_ui() <= kExactDropBudget && res.b.get_ui() >= 2) {
        res.drop_verified = verify_drop(seq, 1, 1, res.b.get_ui()).dropped;
    }
    return res;
}

ExplicitConstants explicit_constants(u64 m, u64 p, u64 q) {
    if (m < 4) throw std::invalid_argument("m must be at least 4");
    if (p < 2 || q < 2) throw std::invalid_argument("p and q must be at least 2");
    const mpfr_prec_t prec = 256;
    RealBound lm = log_u(m, prec);
    RealBound mm = RealBound::from_long(static_cast<long>(m), prec);
    ExplicitConstants ec{
        mm * (RealBound::from_long(3, prec) + RealBound::from_long(6, prec) / lm),
        mm * (RealBound::from_long(4, prec) + RealBound::from_long(7, prec) / lm),
        RealBound(prec), false};

    RealBound five_lm = RealBound::from_long(5, prec) * lm;
    RealBound twenty_one = RealBound::from_long(21, prec);
    bool decided = false;
    for (mpfr_prec_t pp = prec; pp <= kCapPrec && !decided; pp *= 2) {
        five_lm = RealBound::from_long(5, pp) * log_u(m, pp);
        twenty_one = RealBound::from_long(21, pp);
        if (RealBound::definitely_less(twenty_one, five_lm)) {
            ec.baker_uses_log_branch = true;
            decided = true;
        } else if (RealBound::definitely_less(five_lm, twenty_one)) {
            decided = true;
        }
    }
    if (!decided) throw std::runtime_error("cannot resolve the Baker max branch");
    RealBound inner = ec.baker_uses_log_branch ? five_lm : twenty_one;
    ec.baker = -(RealBound::from_mpq(mpq_class(2434, 100), inner.precision()) * inner * inner *
                 log_u(q, inner.precision()) * log_u(p, inner.precision()));
    return ec;
}

}  // namespace harmsum
