#include "harmsum/certified.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>
#include <vector>

namespace harmsum {

RealBound::RealBound(mpfr_prec_t prec) : prec_(prec) {
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

RealBound::RealBound(const RealBound& o) : prec_(o.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

RealBound::RealBound(RealBound&& o) noexcept : prec_(o.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
}

RealBound& RealBound::operator=(RealBound o) noexcept {
    std::swap(prec_, o.prec_);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
    return *this;
}

RealBound::~RealBound() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

RealBound RealBound::from_long(long v, mpfr_prec_t prec) {
    RealBound r(prec);
    mpfr_set_si(r.lo_, v, MPFR_RNDD);
    mpfr_set_si(r.hi_, v, MPFR_RNDU);
    return r;
}

RealBound RealBound::from_mpz(const mpz_class& v, mpfr_prec_t prec) {
    RealBound r(prec);
    mpfr_set_z(r.lo_, v.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi_, v.get_mpz_t(), MPFR_RNDU);
    return r;
}

RealBound RealBound::from_mpq(const mpq_class& v, mpfr_prec_t prec) {
    RealBound r(prec);
    mpfr_set_q(r.lo_, v.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, v.get_mpq_t(), MPFR_RNDU);
    return r;
}

RealBound RealBound::log_of(const mpz_class& v, mpfr_prec_t prec) {
    return from_mpz(v, prec).log();
}

RealBound RealBound::log_of(const mpq_class& v, mpfr_prec_t prec) {
    return from_mpq(v, prec).log();
}

RealBound RealBound::log() const {
    RealBound r(prec_);
    mpfr_log(r.lo_, lo_, MPFR_RNDD);
    mpfr_log(r.hi_, hi_, MPFR_RNDU);
    return r;
}

RealBound RealBound::exp() const {
    RealBound r(prec_);
    mpfr_exp(r.lo_, lo_, MPFR_RNDD);
    mpfr_exp(r.hi_, hi_, MPFR_RNDU);
    return r;
}

RealBound RealBound::abs() const {
    if (!contains_zero() && mpfr_sgn(hi_) < 0) return -*this;
    if (contains_zero()) {
        RealBound r(prec_);
        mpfr_set_zero(r.lo_, 1);
        mpfr_t na;
        mpfr_init2(na, prec_);
        mpfr_neg(na, lo_, MPFR_RNDU);
        mpfr_max(r.hi_, hi_, na, MPFR_RNDU);
        mpfr_clear(na);
        return r;
    }
    return *this;
}

RealBound operator+(const RealBound& a, const RealBound& b) {
    RealBound r(std::max(a.prec_, b.prec_));
    mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

RealBound operator-(const RealBound& a, const RealBound& b) {
    RealBound r(std::max(a.prec_, b.prec_));
    mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return r;
}

RealBound operator-(const RealBound& a) {
    RealBound r(a.prec_);
    mpfr_neg(r.lo_, a.hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
    return r;
}

RealBound operator*(const RealBound& a, const RealBound& b) {
    RealBound r(std::max(a.prec_, b.prec_));
    mpfr_t c, best_lo, best_hi;
    mpfr_init2(c, r.prec_);
    mpfr_init2(best_lo, r.prec_);
    mpfr_init2(best_hi, r.prec_);
    bool first = true;
    const mpfr_t* as[2] = {&a.lo_, &a.hi_};
    const mpfr_t* bs[2] = {&b.lo_, &b.hi_};
    for (auto* x : as) {
        for (auto* y : bs) {
            mpfr_mul(c, *x, *y, MPFR_RNDD);
            if (first || mpfr_less_p(c, best_lo)) mpfr_set(best_lo, c, MPFR_RNDD);
            mpfr_mul(c, *x, *y, MPFR_RNDU);
            if (first || mpfr_greater_p(c, best_hi)) mpfr_set(best_hi, c, MPFR_RNDU);
            first = false;
        }
    }
    mpfr_set(r.lo_, best_lo, MPFR_RNDD);
    mpfr_set(r.hi_, best_hi, MPFR_RNDU);
    mpfr_clear(c);
    mpfr_clear(best_lo);
    mpfr_clear(best_hi);
    return r;
}

RealBound operator/(const RealBound& a, const RealBound& b) {
    RealBound r(std::max(a.prec_, b.prec_));
    if (b.contains_zero()) {
        mpfr_set_inf(r.lo_, -1);
        mpfr_set_inf(r.hi_, 1);
        return r;
    }
    mpfr_t c, best_lo, best_hi;
    mpfr_init2(c, r.prec_);
    mpfr_init2(best_lo, r.prec_);
    mpfr_init2(best_hi, r.prec_);
    bool first = true;
    const mpfr_t* as[2] = {&a.lo_, &a.hi_};
    const mpfr_t* bs[2] = {&b.lo_, &b.hi_};
    for (auto* x : as) {
        for (auto* y : bs) {
            mpfr_div(c, *x, *y, MPFR_RNDD);
            if (first || mpfr_less_p(c, best_lo)) mpfr_set(best_lo, c, MPFR_RNDD);
            mpfr_div(c, *x, *y, MPFR_RNDU);
            if (first || mpfr_greater_p(c, best_hi)) mpfr_set(best_hi, c, MPFR_RNDU);
            first = false;
        }
    }
    mpfr_set(r.lo_, best_lo, MPFR_RNDD);
    mpfr_set(r.hi_, best_hi, MPFR_RNDU);
    mpfr_clear(c);
    mpfr_clear(best_lo);
    mpfr_clear(best_hi);
    return r;
}

bool RealBound::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }

bool RealBound::is_positive() const { return mpfr_sgn(lo_) > 0; }

bool RealBound::is_negative() const { return mpfr_sgn(hi_) < 0; }

bool RealBound::definitely_less(const RealBound& a, const RealBound& b) {
    return mpfr_less_p(a.hi_, b.lo_) != 0;
}

bool RealBound::is_point() const { return mpfr_equal_p(lo_, hi_) != 0; }

bool RealBound::same_point(const RealBound& a, const RealBound& b) {
    return a.is_point() && b.is_point() && mpfr_equal_p(a.lo_, b.lo_) != 0;
}

bool RealBound::same_interval(const RealBound& a, const RealBound& b) {
    return mpfr_equal_p(a.lo_, b.lo_) != 0 && mpfr_equal_p(a.hi_, b.hi_) != 0;
}

namespace {

std::optional<mpz_class> rounded_endpoints_agree(const mpfr_t lo, const mpfr_t hi,
                                                 mpfr_prec_t prec,
                                                 int (*round)(mpfr_ptr, mpfr_srcptr)) {
    if (!mpfr_number_p(lo) || !mpfr_number_p(hi)) return std::nullopt;
    mpfr_t c;
    mpfr_init2(c, std::max<mpfr_prec_t>(prec, 64));
    mpz_class zlo, zhi;
    round(c, lo);
    mpfr_get_z(zlo.get_mpz_t(), c, MPFR_RNDN);
    round(c, hi);
    mpfr_get_z(zhi.get_mpz_t(), c, MPFR_RNDN);
    mpfr_clear(c);
    if (zlo == zhi) return zlo;
    return std::nullopt;
}

}  // namespace

std::optional<mpz_class> RealBound::ceil_unique() const {
    return rounded_endpoints_agree(lo_, hi_, prec_, mpfr_ceil);
}

std::optional<mpz_class> RealBound::floor_unique() const {
    return rounded_endpoints_agree(lo_, hi_, prec_, mpfr_floor);
}

std::optional<mpq_class> RealBound::exact_value() const {
    if (!is_point()) return std::nullopt;
    if (!mpfr_number_p(lo_)) return std::nullopt;
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), lo_);
    return q;
}

double RealBound::mid_double() const {
    double a = mpfr_get_d(lo_, MPFR_RNDN);
    double b = mpfr_get_d(hi_, MPFR_RNDN);
    return (a + b) / 2;
}

bool RealBound::tighter_than(int digits) const {
    mpfr_t w, tol;
    mpfr_init2(w, prec_);
    mpfr_init2(tol, prec_);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    mpfr_set_ui(tol, 10, MPFR_RNDN);
    mpfr_pow_si(tol, tol, -digits, MPFR_RNDD);
    bool ok = mpfr_less_p(w, tol) != 0;
    mpfr_clear(w);
    mpfr_clear(tol);
    return ok;
}

std::string RealBound::str(int digits) const {
    mpfr_t mid;
    mpfr_init2(mid, prec_);
    mpfr_add(mid, lo_, hi_, MPFR_RNDN);
    mpfr_div_ui(mid, mid, 2, MPFR_RNDN);
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rg", digits, mid);
    std::string out(s);
    mpfr_free_str(s);
    mpfr_clear(mid);
    return out;
}

}  // namespace harmsum
