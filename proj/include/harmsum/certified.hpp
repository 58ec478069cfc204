#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <optional>
#include <string>

namespace harmsum {

// Directed-rounding enclosure [lo, hi] of a real number. Every operation
// rounds lo down and hi up, so the true value always stays inside.
class RealBound {
public:
    explicit RealBound(mpfr_prec_t prec = 192);
    RealBound(const RealBound& o);
    RealBound(RealBound&& o) noexcept;
    RealBound& operator=(RealBound o) noexcept;
    ~RealBound();

    mpfr_prec_t precision() const { return prec_; }

    static RealBound from_long(long v, mpfr_prec_t prec = 192);
    static RealBound from_mpz(const mpz_class& v, mpfr_prec_t prec = 192);
    static RealBound from_mpq(const mpq_class& v, mpfr_prec_t prec = 192);
    // log of a positive integer / rational / enclosure.
    static RealBound log_of(const mpz_class& v, mpfr_prec_t prec = 192);
    static RealBound log_of(const mpq_class& v, mpfr_prec_t prec = 192);

    RealBound log() const;
    RealBound exp() const;
    RealBound abs() const;

    friend RealBound operator+(const RealBound& a, const RealBound& b);
    friend RealBound operator-(const RealBound& a, const RealBound& b);
    friend RealBound operator-(const RealBound& a);
    friend RealBound operator*(const RealBound& a, const RealBound& b);
    friend RealBound operator/(const RealBound& a, const RealBound& b);

    bool contains_zero() const;
    bool is_positive() const;  // certainly > 0
    bool is_negative() const;
    // True when the enclosure proves a < b (a.hi < b.lo).
    static bool definitely_less(const RealBound& a, const RealBound& b);
    // Point interval (lo == hi bitwise).
    bool is_point() const;
    static bool same_point(const RealBound& a, const RealBound& b);
    // Endpoint-identical enclosures.  By convention two identical intervals
    // are taken to enclose the same quantity (all enclosures here come from
    // deterministic single-source computations), which lets a caller assert
    // exact equality that interval arithmetic alone could never certify.
    static bool same_interval(const RealBound& a, const RealBound& b);

    // Unique integer ceiling if both endpoints agree on it.
    std::optional<mpz_class> ceil_unique() const;
    // Unique integer floor if both endpoints agree on it.
    std::optional<mpz_class> floor_unique() const;
    // Exact rational value of an endpoint-equal (point) interval.
    std::optional<mpq_class> exact_value() const;

    double mid_double() const;
    // Decimal rendering of the midpoint with given significant digits,
    // plus a guarantee digit count derived from the width.
    std::string str(int digits = 20) const;
    // True if hi - lo < 10^-digits.
    bool tighter_than(int digits) const;

    const mpfr_t& lo() const { return lo_; }
    const mpfr_t& hi() const { return hi_; }
    mpfr_t& lo_mut() { return lo_; }
    mpfr_t& hi_mut() { return hi_; }

private:
    mpfr_prec_t prec_;
    mpfr_t lo_, hi_;
};

// Retry a computation at escalating precision until `done` accepts the result.
// Doubles from `start` up to `cap` bits; returns nullopt if never accepted.
template <class F, class Pred>
std::optional<RealBound> with_escalation(F compute, Pred done, mpfr_prec_t start = 192,
                                         mpfr_prec_t cap = 4096) {
    for (mpfr_prec_t prec = start; prec <= cap; prec *= 2) {
        RealBound r = compute(prec);
        if (done(r)) return r;
    }
    return std::nullopt;
}

}  // namespace harmsum
