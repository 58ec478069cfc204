#include "harmsum/drops.hpp"

#include <stdexcept>
#include <utility>

namespace harmsum {

u64 classical_default_cap(u64 a) { return std::max(6 * (a - 1), a + 64); }

static FindOutcome scan_for_drop(HarmonicState st, u64 cap, const mpq_class* eps) {
    mpz_class v_cur = st.reduced_denominator();
    while (st.b() < cap) {
        st.extend_right();
        mpz_class v_next = st.reduced_denominator();
        bool hit;
        if (eps == nullptr) {
            hit = v_next < v_cur;
        } else {
            // v_next < eps * v_cur  <=>  v_next * den < num * v_cur
            hit = v_next * eps->get_den() < eps->get_num() * v_cur;
        }
        if (hit) {
            u64 b = st.b();
            return {FindStatus::FOUND, b, std::move(v_cur), std::move(v_next), std::move(st)};
        }
        v_cur = std::move(v_next);
    }
    return {FindStatus::CAP_EXCEEDED, st.b(), v_cur, v_cur, std::move(st)};
}

FindOutcome find_b(const PeriodicSeq& seq, unsigned d, u64 a, u64 cap) {
    if (cap < a + 1) throw std::invalid_argument("cap must exceed a");
    return scan_for_drop(HarmonicState(seq, d, a), cap, nullptr);
}

FindOutcome resume_find(HarmonicState state, u64 cap) {
    if (cap <= state.b()) throw std::invalid_argument("cap must exceed current window end");
    return scan_for_drop(std::move(state), cap, nullptr);
}

DropReport verify_drop(const PeriodicSeq& seq, unsigned d, u64 a, u64 b) {
    if (b <= a) throw std::invalid_argument("drop point must exceed window start");
    HarmonicState st = HarmonicState::over(seq, d, a, b - 1);
    DropReport rep;
    rep.a = a;
    rep.b = b;
    rep.v_prev = st.reduced_denominator();
    st.extend_right();
    rep.v_next = st.reduced_denominator();
    rep.dropped = rep.v_next < rep.v_prev;
    return rep;
}

FindOutcome epsilon_drop(const PeriodicSeq& seq, unsigned d, u64 a, const mpq_class& eps,
                         u64 cap) {
    if (eps <= 0 || eps > 1) throw std::invalid_argument("threshold must lie in (0,1]");
    if (cap < a + 1) throw std::invalid_argument("cap must exceed a");
    return scan_for_drop(HarmonicState(seq, d, a), cap, &eps);
}

mpz_class lcm_upto(u64 k) {
    mpz_class l = 1;
    for (u64 i = 2; i <= k; ++i) {
        mpz_class iz(static_cast<unsigned long>(i));
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), iz.get_mpz_t());
    }
    return l;
}

WindowBoundReport gcd_window_bound(const PeriodicSeq& seq, u64 a, u64 b) {
    HarmonicState st = HarmonicState::over(seq, 1, a, b);
    mpz_class g = st.gcd_xl();
    mpz_class l_w = lcm_upto(b - a);
    mpz_class l_r = lcm_upto(static_cast<u64>(seq.r_max_abs));
    WindowBoundReport rep;
    if (g > l_w * l_r) {
        rep.ok = false;
        rep.first_bad_prime = 0;  // magnitude bound failed outright
        return rep;
    }
    for (u32 p : primes_up_to(static_cast<u32>(b))) {
        unsigned long eg = st.g_valuation(p);
        Valuation ew = valuation_of(l_w, p);
        Valuation er = valuation_of(l_r, p);
        if (eg > ew.val + er.val) {
            rep.ok = false;
            rep.first_bad_prime = p;
            return rep;
        }
    }
    return rep;
}

}  // namespace harmsum
