#include "harmsum/powers.hpp"

#include <numeric>
#include <stdexcept>

#include "harmsum/certified.hpp"
#include "harmsum/state.hpp"

namespace harmsum {

namespace {

bool pm1_divides(u64 p, u64 d) { return d % (p - 1) == 0; }

u64 next_prime_after(u64 p) {
    ++p;
    if (p <= 2) return 2;
    if (p % 2 == 0) ++p;
    while (!is_prime_u64(p)) p += 2;
    return p;
}

// Sum of h^{-d} over h = 1..i, mod p.  Requires p > i.
u64 inverse_power_sum_mod(u64 i, u64 d, u64 p) {
    u64 e = d % (p - 1);
    u64 s = 0;
    for (u64 h = 1; h <= i; ++h) s = (s + powmod(invmod(h % p, p), e, p)) % p;
    return s;
}

}  // namespace

u64 p_d_of(u64 d) {
    if (d < 1) throw std::invalid_argument("d must be positive");
    for (u64 p = 2;; p = next_prime_after(p))
        if (!pm1_divides(p, d)) return p;
}

std::optional<u64> q_i_of(u64 i, u64 d, u64 budget, u64 p_cap) {
    if (i < 2) throw std::invalid_argument("i must be at least 2");
    if (d < 1) throw std::invalid_argument("d must be positive");
    std::optional<mpz_class> x_exact;
    for (u64 p = 2; p <= budget; p = next_prime_after(p)) {
        if (p_cap != 0 && p >= p_cap) return std::nullopt;
        if (pm1_divides(p, d)) continue;
        if (p > i) {
            if (inverse_power_sum_mod(i, d, p) == 0) return p;
        } else {
            if (!x_exact) {
                HarmonicState st(PeriodicSeq::ones(), static_cast<unsigned>(d), 1);
                st.extend_right_to(i);
                x_exact = st.numerator_raw();
            }
            if (mpz_divisible_ui_p(x_exact->get_mpz_t(), p)) return p;
        }
    }
    return std::nullopt;
}

PowerProfile power_profile(u64 d, u64 budget) {
    PowerProfile pr;
    pr.d = static_cast<unsigned>(d);
    pr.p_d = p_d_of(d);
    pr.j = (pr.p_d - 1) / 2;
    if (d % 2 == 1) {
        pr.c_d = 6;
        return pr;
    }
    u64 best = 0;
    for (u64 i = 2; i <= pr.j; ++i) {
        if (best != 0 && i * pr.p_d >= best) break;  // q_i >= p_d caps everything later
        u64 cap = best == 0 ? 0 : (best + i - 1) / i;  // only p < best/i can improve
        auto qi = q_i_of(i, d, budget, cap);
        if (!qi) {
            // Unfound q_i constrains the min only below i*bound; that region
            // is already covered unless the search was cut short too early.
            u64 floor_hit = cap == 0 ? budget : std::min(budget, cap);
            if (best == 0 || i * floor_hit < best)
                throw std::runtime_error("q_i search budget exhausted");
            continue;
        }
        pr.q[i] = *qi;
        if (best == 0 || i * *qi < best) {
            best = i * *qi;
            pr.argmin_i = i;
        }
    }
    if (best == 0) throw std::runtime_error("no q_i found below the budget");
    pr.c_d = best;
    return pr;
}

u64 c_d_of(u64 d) { return power_profile(d).c_d; }

bool pdivpower_check(u64 d, u64 p) {
    if (d % 2 != 0) throw std::invalid_argument("d must be even");
    if (p < 3 || !is_prime_u64(p)) throw std::invalid_argument("p must be an odd prime");
    if (pm1_divides(p, d)) throw std::invalid_argument("(p-1) must not divide d");
    return inverse_power_sum_mod((p - 1) / 2, d, p) == 0;
}

std::optional<BdScheduleClass> bd_schedule_class(u64 d) {
    if (d % 4 == 2) return BdScheduleClass{"d2mod4.tsv", 3};
    if (d % 12 == 4 || d % 12 == 8) return BdScheduleClass{"d4mod12.tsv", 3};
    if (d == 24) return BdScheduleClass{"d24.tsv", 4};
    if (d == 48) return BdScheduleClass{"d48.tsv", 4};
    if (d == 72) return BdScheduleClass{"d72.tsv", 4};
    if (d == 96) return BdScheduleClass{"d96.tsv", 4};
    if (d % 24 == 12) return BdScheduleClass{"d12mod24.tsv", 4};
    return std::nullopt;
}

ScheduleCheck verify_bd_schedule(u64 d, const std::string& data_dir, u64 a_min, u64 a_max,
                                 unsigned workers) {
    auto cls = bd_schedule_class(d);
    if (!cls) throw std::invalid_argument("no published schedule covers this exponent");
    if (a_min == 0) a_min = cls->a_min;
    Schedule sched =
        load_schedule(data_dir + "/" + cls->file, static_cast<unsigned>(d), a_min, a_max);
    return verify_schedule(PeriodicSeq::ones(), static_cast<unsigned>(d), sched, workers);
}

AbcReport abc_cofactor_check(const PeriodicSeq& seq, u64 d, u64 M) {
    if (d < 1) throw std::invalid_argument("d must be positive");
    AbcReport rep;
    rep.i = seq.i1;
    rep.j = rep.i + 1;
    while (seq.at(rep.j) == 0) ++rep.j;

    u64 g = std::gcd(rep.i, rep.j);
    mpz_class ip, jp;
    mpz_ui_pow_ui(ip.get_mpz_t(), rep.i / g, static_cast<unsigned long>(d));
    mpz_ui_pow_ui(jp.get_mpz_t(), rep.j / g, static_cast<unsigned long>(d));
    rep.A = seq.at(rep.i) * jp;
    rep.B = seq.at(rep.j) * ip;
    rep.sum = rep.A + rep.B;

    // d > 2m*log(2m) certified strictly; below or ambiguous, no size claim.
    RealBound lhs = RealBound::from_long(static_cast<long>(d));
    RealBound rhs = RealBound::from_long(2 * static_cast<long>(seq.m)) *
                    RealBound::log_of(mpz_class(2 * static_cast<long>(seq.m)));
    rep.bound_asserted = RealBound::definitely_less(rhs, lhs);
    if (rep.bound_asserted && rep.sum != 0) {
        // |A+B| > e^{d/2}  <=>  log|A+B| > d/2
        RealBound lg = RealBound::log_of(mpz_class(abs(rep.sum)));
        RealBound half_d = RealBound::from_mpq(mpq_class(static_cast<long>(d), 2));
        rep.bound_holds = RealBound::definitely_less(half_d, lg);
    }

    rep.cofactor = abs(rep.sum);
    if (rep.cofactor != 0) {
        for (u64 p = 2; p <= M; p = next_prime_after(p)) {
            mpz_class pz(static_cast<unsigned long>(p));
            mpz_remove(rep.cofactor.get_mpz_t(), rep.cofactor.get_mpz_t(), pz.get_mpz_t());
        }
    }
    rep.has_large_prime = rep.cofactor > 1;
    return rep;
}

}  // namespace harmsum
