#include "harmsum/scans.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

#include "harmsum/certified.hpp"
#include "harmsum/tracker.hpp"

namespace harmsum {

namespace {

// Certified comparison k1/log(a1) < k2/log(a2), i.e. k1*log(a2) < k2*log(a1).
// Escalates precision; on a persistent tie decides by the equivalent integer
// identity a2^k1 = a1^k2.
bool ratio_less(u64 k1, u64 a1, u64 k2, u64 a2) {
    for (mpfr_prec_t prec = 192; prec <= 4096; prec *= 2) {
        RealBound lhs = RealBound::from_long(static_cast<long>(k1), prec) *
                        RealBound::log_of(mpz_class(static_cast<unsigned long>(a2)), prec);
        RealBound rhs = RealBound::from_long(static_cast<long>(k2), prec) *
                        RealBound::log_of(mpz_class(static_cast<unsigned long>(a1)), prec);
        if (RealBound::definitely_less(lhs, rhs)) return true;
        if (RealBound::definitely_less(rhs, lhs)) return false;
        mpz_class p1, p2;
        mpz_ui_pow_ui(p1.get_mpz_t(), a2, k1);
        mpz_ui_pow_ui(p2.get_mpz_t(), a1, k2);
        if (p1 == p2) return false;  // ratios exactly equal: not a new record
    }
    throw std::logic_error("ratio comparison failed to converge");
}

std::string ratio_string(u64 k, u64 a, int digits) {
    RealBound r = RealBound::from_long(static_cast<long>(k), 256) /
                  RealBound::log_of(mpz_class(static_cast<unsigned long>(a)), 256);
    return r.str(digits);
}

u64 liminf_cap(u64 a) {
    RealBound four_log =
        RealBound::from_long(4, 192) * RealBound::log_of(mpz_class(static_cast<unsigned long>(a)), 192);
    // ceil of an interval: take the ceiling if both endpoints agree, else
    // escalate by hand (never needed for 64-bit a, but stay honest).
    for (mpfr_prec_t prec = 192; prec <= 4096; prec *= 2) {
        auto c = four_log.ceil_unique();
        if (c) return a + c->get_ui() + 8;
        four_log = RealBound::from_long(4, prec * 2) *
                   RealBound::log_of(mpz_class(static_cast<unsigned long>(a)), prec * 2);
    }
    throw std::logic_error("cap computation failed to converge");
}

}  // namespace

LiminfReport liminf_scan(const PeriodicSeq& seq, u64 a_lo, u64 a_hi) {
    if (a_lo < 2) throw std::invalid_argument("scan must start at a >= 2 (log a must be positive)");
    LiminfReport rep;
    rep.a_lo = a_lo;
    rep.a_hi = a_hi;
    bool have_min = false;
    u64 min_k = 0, min_a = 0;
    for (u64 a = a_lo; a <= a_hi; ++a) {
        FindOutcome out = find_b(seq, 1, a, liminf_cap(a));
        if (out.status == FindStatus::CAP_EXCEEDED) {
            ++rep.no_drop_count;
            continue;
        }
        u64 k = out.b - a;
        if (a >= 100 && rep.floor_holds) {
            // b(a) - a > (1/2) log a, certified as log a < 2k.
            RealBound la = RealBound::log_of(mpz_class(static_cast<unsigned long>(a)), 192);
            RealBound two_k = RealBound::from_long(static_cast<long>(2 * k), 192);
            if (!RealBound::definitely_less(la, two_k)) {
                rep.floor_holds = false;
                rep.first_floor_violation = a;
            }
        }
        if (!have_min || ratio_less(k, a, min_k, min_a)) {
            have_min = true;
            min_k = k;
            min_a = a;
            rep.records.push_back({a, out.b, ratio_string(k, a, 30)});
        }
    }
    return rep;
}

GiantReport verify_giant_minimum() {
    GiantReport rep;
    rep.a_decimal = "24968370984798709551283169";
    mpz_class a(rep.a_decimal);
    mpq_class sum = 0;
    mpz_class v_prev = 0;
    bool monotone = true;
    for (unsigned k = 0; k <= 31; ++k) {
        mpq_class term(1, mpz_class(a + k));
        term.canonicalize();
        sum += term;
        mpz_class v = sum.get_den();
        if (k >= 1 && k <= 30 && v < v_prev) monotone = false;
        if (k == 31) rep.drop_at_31 = (v < v_prev);
        v_prev = v;
    }
    rep.no_drop_through_30 = monotone;

    RealBound ratio = RealBound::from_long(31, 256) / RealBound::log_of(a, 256);
    rep.ratio = ratio.str(20);
    RealBound lo = RealBound::from_mpq(mpq_class("53009885/100000000"), 256);
    RealBound hi = RealBound::from_mpq(mpq_class("53009895/100000000"), 256);
    rep.ratio_in_band =
        RealBound::definitely_less(lo, ratio) && RealBound::definitely_less(ratio, hi);
    return rep;
}

namespace {

struct VexpEvent {
    u64 n;
    unsigned prev, cur;  // exponent of p in the reduced denominator
};

}  // namespace

ConjectureReport conjecture_divisibility(u64 n_max, u64 exact_limit, unsigned workers) {
    ConjectureReport rep;
    rep.n_max = n_max;
    rep.exact_limit = exact_limit;
    PeriodicSeq ones = PeriodicSeq::ones();

    std::vector<u32> plist = primes_up_to(static_cast<u32>(n_max));
    std::vector<std::vector<VexpEvent>> events(plist.size());

    auto run_prime = [&](size_t idx) {
        u64 p = plist[idx];
        PrimeTracker tr(p, 1, PrimeTracker::suggest_cap(p, 1, n_max));
        unsigned last = 0;
        for (u64 n = 1; n <= n_max; ++n) {
            tr.step(n, 1);
            if (n < p) continue;  // exponent is still zero, and stays so until n = p
            GVal ve = tr.v_exponent();
            if (!ve.exact) throw std::logic_error("tracker saturated in conjecture scan");
            unsigned cur = static_cast<unsigned>(ve.val);
            if (cur != last) {
                events[idx].push_back({n, last, cur});
                last = cur;
            }
        }
    };

    if (workers <= 1) {
        for (size_t i = 0; i < plist.size(); ++i) run_prime(i);
    } else {
        std::atomic<size_t> next{0};
        auto work = [&]() {
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= plist.size()) return;
                run_prime(i);
            }
        };
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    // Bucket events by n, then decide each step with one exact product
    // comparison: v drops iff the shrink side outweighs the growth side.
    std::vector<std::vector<std::pair<u32, VexpEvent>>> by_n(n_max + 1);
    for (size_t i = 0; i < plist.size(); ++i)
        for (const VexpEvent& e : events[i]) by_n[e.n].push_back({plist[i], e});

    SpfSieve sieve(static_cast<u32>(n_max) + 1);
    mpz_class grow, shrink, pw;
    for (u64 n = 2; n <= n_max; ++n) {
        if (by_n[n].empty()) continue;
        grow = 1;
        shrink = 1;
        for (auto& [p, e] : by_n[n]) {
            if (e.cur > e.prev) {
                mpz_ui_pow_ui(pw.get_mpz_t(), p, e.cur - e.prev);
                grow *= pw;
            } else {
                mpz_ui_pow_ui(pw.get_mpz_t(), p, e.prev - e.cur);
                shrink *= pw;
            }
        }
        bool dropped = grow < shrink;
        // n | v_{1,n} iff every p^e || n has at least e as its v-exponent.
        bool divides = true;
        for (auto [p, e] : sieve.factor(static_cast<u32>(n))) {
            size_t idx = static_cast<size_t>(
                std::lower_bound(plist.begin(), plist.end(), p) - plist.begin());
            const auto& ev = events[idx];
            // exponent after the last event at or before n
            auto it = std::upper_bound(ev.begin(), ev.end(), n,
                                       [](u64 nn, const VexpEvent& x) { return nn < x.n; });
            unsigned ve = (it == ev.begin()) ? 0 : static_cast<unsigned>((it - 1)->cur);
            if (ve < e) {
                divides = false;
                break;
            }
        }
        if (dropped) {
            rep.drops.push_back(n);
            if (divides) rep.forward_violations.push_back(n);
        }
        if (dropped != !divides) rep.mismatches.push_back(n);
    }

    // Exact replay over the small prefix: recompute drops and divisibility
    // straight from window states.
    if (exact_limit >= 2) {
        HarmonicState st(ones, 1, 1);
        mpz_class v_prev = st.reduced_denominator();
        std::vector<u64> exact_drops;
        bool bicond_ok = true;
        for (u64 n = 2; n <= exact_limit; ++n) {
            st.extend_right();
            mpz_class v = st.reduced_denominator();
            bool dropped = v < v_prev;
            bool divides = mpz_divisible_ui_p(v.get_mpz_t(), static_cast<unsigned long>(n)) != 0;
            if (dropped) exact_drops.push_back(n);
            if (dropped != !divides) bicond_ok = false;
            v_prev = std::move(v);
        }
        std::vector<u64> tracker_prefix;
        for (u64 n : rep.drops)
            if (n <= exact_limit) tracker_prefix.push_back(n);
        rep.exact_agrees = bicond_ok && (tracker_prefix == exact_drops);
    }
    return rep;
}

}  // namespace harmsum
