#include "harmsum/state.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

namespace harmsum {

Valuation valuation_of(const mpz_class& x, unsigned long p) {
    if (x == 0) return Valuation::infinite();
    mpz_class r;
    unsigned long e = mpz_remove(r.get_mpz_t(), x.get_mpz_t(), mpz_class(p).get_mpz_t());
    return Valuation::of(e);
}

HarmonicState::HarmonicState(PeriodicSeq seq, unsigned d, u64 a)
    : seq_(std::move(seq)), d_(d), a_(a), b_(a), lam_(1), x_(0) {
    if (a == 0) throw std::invalid_argument("window must start at 1 or later");
    absorb(a);
}

HarmonicState HarmonicState::over(const PeriodicSeq& seq, unsigned d, u64 a, u64 b) {
    if (b < a) throw std::invalid_argument("empty window");
    HarmonicState st(seq, d, a);
    st.extend_right_to(b);
    return st;
}

void HarmonicState::absorb(u64 i) {
    long r = seq_.at(i);
    if (r == 0) return;
    mpz_class iz(static_cast<unsigned long>(i));
    mpz_class lam2;
    mpz_lcm(lam2.get_mpz_t(), lam_.get_mpz_t(), iz.get_mpz_t());
    if (lam2 != lam_) {
        mpz_class scale;
        mpz_divexact(scale.get_mpz_t(), lam2.get_mpz_t(), lam_.get_mpz_t());
        mpz_pow_ui(scale.get_mpz_t(), scale.get_mpz_t(), d_);
        x_ *= scale;
        lam_ = lam2;
    }
    mpz_class term;
    mpz_divexact(term.get_mpz_t(), lam_.get_mpz_t(), iz.get_mpz_t());
    mpz_pow_ui(term.get_mpz_t(), term.get_mpz_t(), d_);
    x_ += r * term;
}

void HarmonicState::extend_right() {
    ++b_;
    absorb(b_);
}

void HarmonicState::extend_left() {
    if (a_ <= 1) throw std::invalid_argument("window already starts at 1");
    --a_;
    absorb(a_);
}

void HarmonicState::extend_right_to(u64 b2) {
    while (b_ < b2) extend_right();
}

mpz_class HarmonicState::denominator_full() const {
    mpz_class l;
    mpz_pow_ui(l.get_mpz_t(), lam_.get_mpz_t(), d_);
    return l;
}

mpz_class HarmonicState::gcd_xl() const {
    mpz_class l = denominator_full();
    if (x_ == 0) return l;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), x_.get_mpz_t(), l.get_mpz_t());
    return g;
}

mpz_class HarmonicState::reduced_denominator() const {
    mpz_class l = denominator_full();
    if (x_ == 0) return mpz_class(1);
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), x_.get_mpz_t(), l.get_mpz_t());
    mpz_class v;
    mpz_divexact(v.get_mpz_t(), l.get_mpz_t(), g.get_mpz_t());
    return v;
}

mpz_class HarmonicState::reduced_numerator() const {
    if (x_ == 0) return mpz_class(0);
    mpz_class g = gcd_xl();
    mpz_class u;
    mpz_divexact(u.get_mpz_t(), x_.get_mpz_t(), g.get_mpz_t());
    return u;
}

mpq_class HarmonicState::value() const {
    mpq_class q(x_, denominator_full());
    q.canonicalize();
    return q;
}

unsigned long HarmonicState::g_valuation(unsigned long p) const {
    unsigned long el = l_valuation(p);
    Valuation ex = x_valuation(p);
    if (!ex.finite) return el;
    return std::min(ex.val, el);
}

Valuation HarmonicState::x_valuation(unsigned long p) const { return valuation_of(x_, p); }

unsigned long HarmonicState::l_valuation(unsigned long p) const {
    Valuation e = valuation_of(lam_, p);
    return e.finite ? e.val * d_ : 0;
}

std::string HarmonicState::serialize() const {
    std::ostringstream os;
    os << "d=" << d_ << ";a=" << a_ << ";b=" << b_ << ";t=" << seq_.t << ";r=";
    for (u32 i = 0; i < seq_.t; ++i) {
        if (i) os << ',';
        os << seq_.values[i];
    }
    os << ";lam=" << lam_.get_str(16) << ";x=" << x_.get_str(16);
    return os.str();
}

HarmonicState HarmonicState::deserialize(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ';')) {
        auto eq = part.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("bad state record");
        kv[part.substr(0, eq)] = part.substr(eq + 1);
    }
    for (const char* k : {"d", "a", "b", "t", "r", "lam", "x"})
        if (!kv.count(k)) throw std::invalid_argument("state record missing field");
    PeriodicSeq seq = PeriodicSeq::parse("t=" + kv["t"] + ";r=" + kv["r"]);
    unsigned d = static_cast<unsigned>(std::stoul(kv["d"]));
    u64 a = std::stoull(kv["a"]);
    u64 b = std::stoull(kv["b"]);
    HarmonicState st(seq, d, a);
    st.b_ = b;
    st.lam_ = mpz_class(kv["lam"], 16);
    st.x_ = mpz_class(kv["x"], 16);
    if (st.lam_ < 1 || b < a) throw std::invalid_argument("corrupt state record");
    // Cheap consistency probe: the window endpoints' supported indices must
    // divide lam.
    for (u64 i : {a, b}) {
        if (seq.at(i) == 0) continue;
        if (!mpz_divisible_ui_p(st.lam_.get_mpz_t(), static_cast<unsigned long>(i)))
            throw std::invalid_argument("corrupt state record");
    }
    return st;
}

}  // namespace harmsum
