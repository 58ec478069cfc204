#include "harmsum/tracker.hpp"

#include <cassert>
#include <stdexcept>

namespace harmsum {

PrimeTracker::PrimeTracker(u64 p, unsigned d, unsigned cap) : p_(p), d_(d), cap_(cap) {
    if (cap == 0) throw std::invalid_argument("tracker cap must be positive");
    pow_.resize(cap);
    pow_[0] = 1;
    for (unsigned k = 1; k < cap; ++k) pow_[k] = pow_[k - 1] * p;
    m_ = pow_[cap - 1] * p;
    assert(m_ <= (u64(1) << 63));
}

unsigned PrimeTracker::suggest_cap(u64 p, unsigned d, u64 max_index) {
    unsigned floor63 = 0;
    u64 v = 1;
    const u64 lim = (u64(1) << 62);  // keep p^cap <= 2^63 comfortably
    while (v <= lim / p) {
        v *= p;
        ++floor63;
    }
    unsigned logf = 0;
    u64 w = 1;
    while (w <= max_index / p) {
        w *= p;
        ++logf;
    }
    unsigned long emax = static_cast<unsigned long>(d) * logf;
    unsigned want = static_cast<unsigned>(std::min<unsigned long>(emax + 2, 100000));
    return std::max(1u, std::min(floor63, want));
}

void PrimeTracker::step(u64 i, long r) {
    if (r == 0) return;
    auto [j, i0] = split_valuation(i, p_);
    unsigned long nd = static_cast<unsigned long>(d_) * j;
    unsigned long new_e = std::max(e_, nd);
    // The incoming term carries p^{new_e - nd}; once that clears the cap the
    // whole update is a no-op mod p^cap (the old residue is not rescaled).
    if (new_e == e_ && new_e - nd >= cap_) return;
    auto pw = [&](unsigned long k) -> u64 { return k >= cap_ ? 0 : pow_[k]; };
    u64 scaled = mulmod(r_, pw(new_e - e_), m_);
    u64 unit = powmod(i0 % m_, d_, m_);
    u64 inv = invmod(unit, m_);
    u64 rm = static_cast<u64>(((r % static_cast<long>(m_)) + static_cast<long>(m_))) % m_;
    u64 term = mulmod(mulmod(rm, pw(new_e - nd), m_), inv, m_);
    u64 sum = scaled + term;
    if (sum >= m_) sum -= m_;
    r_ = sum;
    e_ = new_e;
}

XVal PrimeTracker::x_valuation() const {
    if (r_ == 0) return {cap_, false};
    unsigned long e = 0;
    u64 v = r_;
    while (v % p_ == 0) {
        v /= p_;
        ++e;
    }
    return {e, true};
}

GVal PrimeTracker::g_valuation() const {
    XVal x = x_valuation();
    if (x.exact) return {std::min(x.lower, e_), true};
    // e_p(X) >= cap; the min with E is determined unless E exceeds cap too.
    if (e_ <= cap_) return {e_, true};
    return {e_, false};
}

GVal PrimeTracker::v_exponent() const {
    GVal g = g_valuation();
    return {e_ - g.val, g.exact};
}

PrimeTrackerWide::PrimeTrackerWide(u64 p, unsigned d, unsigned cap) : p_(p), d_(d), cap_(cap) {
    if (cap == 0) throw std::invalid_argument("tracker cap must be positive");
    mpz_ui_pow_ui(m_.get_mpz_t(), static_cast<unsigned long>(p), cap);
}

void PrimeTrackerWide::step(u64 i, long r) {
    if (r == 0) return;
    auto [j, i0] = split_valuation(i, p_);
    unsigned long nd = static_cast<unsigned long>(d_) * j;
    unsigned long new_e = std::max(e_, nd);
    if (new_e == e_ && new_e - nd >= cap_) return;
    auto pw = [&](unsigned long k) {
        mpz_class z;
        if (k >= cap_) return mpz_class(0);
        mpz_ui_pow_ui(z.get_mpz_t(), static_cast<unsigned long>(p_), k);
        return z;
    };
    mpz_class acc = r_ * pw(new_e - e_);
    mpz_class unit(static_cast<unsigned long>(i0));
    mpz_powm_ui(unit.get_mpz_t(), unit.get_mpz_t(), d_, m_.get_mpz_t());
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), unit.get_mpz_t(), m_.get_mpz_t()) == 0)
        throw std::domain_error("unit part not invertible");
    acc += mpz_class(r) * pw(new_e - nd) * inv;
    mpz_mod(acc.get_mpz_t(), acc.get_mpz_t(), m_.get_mpz_t());
    r_ = acc;
    e_ = new_e;
}

XVal PrimeTrackerWide::x_valuation() const {
    if (r_ == 0) return {cap_, false};
    mpz_class rest;
    unsigned long e =
        mpz_remove(rest.get_mpz_t(), r_.get_mpz_t(), mpz_class(static_cast<unsigned long>(p_)).get_mpz_t());
    return {e, true};
}

GVal PrimeTrackerWide::g_valuation() const {
    XVal x = x_valuation();
    if (x.exact) return {std::min(x.lower, e_), true};
    if (e_ <= cap_) return {e_, true};
    return {e_, false};
}

GVal PrimeTrackerWide::v_exponent() const {
    GVal g = g_valuation();
    return {e_ - g.val, g.exact};
}

}  // namespace harmsum
