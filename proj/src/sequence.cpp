#include "harmsum/sequence.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace harmsum {

std::vector<u32> PeriodicSeq::support() const {
    std::vector<u32> out;
    for (u32 i = 1; i <= t; ++i)
        if (values[i - 1] != 0) out.push_back(i);
    return out;
}

PeriodicSeq PeriodicSeq::from_values(std::vector<long> vals) {
    if (vals.empty()) throw std::invalid_argument("empty period");
    PeriodicSeq s;
    s.t = static_cast<u32>(vals.size());
    s.values = std::move(vals);
    long mx = 0;
    bool any = false;
    s.i1 = 0;
    for (u32 i = 0; i < s.t; ++i) {
        long v = s.values[i];
        mx = std::max(mx, std::abs(v));
        if (v != 0 && !any) {
            any = true;
            s.i1 = i + 1;
        }
    }
    if (!any) throw std::invalid_argument("period is identically zero");
    s.r_max_abs = mx;
    s.m = 1 + static_cast<u32>(std::max<long>(mx, s.t));
    s.lambda = carmichael(s.t);
    return s;
}

PeriodicSeq PeriodicSeq::parse(const std::string& text) {
    auto semi = text.find(';');
    if (semi == std::string::npos) throw std::invalid_argument("expected 't=<int>;r=<list>'");
    std::string tpart = text.substr(0, semi);
    std::string rpart = text.substr(semi + 1);
    auto strip = [](std::string s) {
        size_t b = s.find_first_not_of(" \t");
        size_t e = s.find_last_not_of(" \t");
        if (b == std::string::npos) return std::string();
        return s.substr(b, e - b + 1);
    };
    tpart = strip(tpart);
    rpart = strip(rpart);
    if (tpart.rfind("t=", 0) != 0 || rpart.rfind("r=", 0) != 0)
        throw std::invalid_argument("expected 't=<int>;r=<list>'");
    long t_raw = 0;
    try {
        t_raw = std::stol(tpart.substr(2));
    } catch (const std::exception&) {
        throw std::invalid_argument("bad period value");
    }
    if (t_raw < 1) throw std::invalid_argument("period must be >= 1");
    std::vector<long> vals;
    std::stringstream ss(rpart.substr(2));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = strip(tok);
        if (tok.empty()) throw std::invalid_argument("empty numerator entry");
        size_t pos = 0;
        long v = 0;
        try {
            v = std::stol(tok, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad numerator entry '" + tok + "'");
        }
        if (pos != tok.size()) throw std::invalid_argument("bad numerator entry '" + tok + "'");
        vals.push_back(v);
    }
    if (vals.size() != static_cast<size_t>(t_raw))
        throw std::invalid_argument("numerator count does not match period");
    return from_values(std::move(vals));
}

u64 carmichael(u64 n) {
    if (n == 1) return 1;
    u64 result = 1;
    auto lcm_into = [&](u64 v) { result = std::lcm(result, v); };
    auto factors = factor_u64(n);
    for (auto [p, e] : factors) {
        u64 comp;
        if (p == 2) {
            if (e == 1)
                comp = 1;
            else if (e == 2)
                comp = 2;
            else
                comp = u64(1) << (e - 2);
        } else {
            comp = p - 1;
            for (unsigned i = 1; i < e; ++i) comp *= p;
        }
        lcm_into(comp);
    }
    return result;
}

PrimeClass classify_prime(const PeriodicSeq& seq, u64 p) {
    if (p >= seq.m) return PrimeClass::SIGMA1;
    auto [et, rest] = split_valuation(seq.t, p);
    (void)rest;
    u64 q = 1;
    for (unsigned i = 0; i < et; ++i) q *= p;
    // Scan the multiples of p^{e_p(t)} across one full period of them.
    for (u64 i = q; i <= static_cast<u64>(seq.t) * q; i += q) {
        if (seq.at(i) != 0) return PrimeClass::SIGMA2;
    }
    return PrimeClass::SIGMA3;
}

unsigned mu_of(const PeriodicSeq& seq, u64 p) {
    unsigned mu = 0;
    u64 v = 1;
    while (v <= (seq.m - 1) / p) {
        v *= p;
        ++mu;
    }
    return mu;
}

unsigned f_of(const PeriodicSeq& seq, u64 p) {
    auto [et, c1] = split_valuation(seq.t, p);
    (void)c1;
    long r = seq.values[seq.i1 - 1];
    auto [er, c2] = split_valuation(static_cast<u64>(std::abs(r)), p);
    (void)c2;
    return et + er;
}

u64 c_p_of(const PeriodicSeq& seq, u64 p) {
    unsigned mu = mu_of(seq, p);
    u64 hi = seq.t;
    for (unsigned i = 0; i < mu; ++i) hi *= p;
    u64 best = 0;
    long best_score = 0;
    for (u64 i = 1; i <= hi; ++i) {
        long r = seq.at(i);
        if (r == 0) continue;
        auto [ei, ci] = split_valuation(i, p);
        (void)ci;
        auto [er, cr] = split_valuation(static_cast<u64>(std::abs(r)), p);
        (void)cr;
        long score = static_cast<long>(ei) - static_cast<long>(er);
        if (best == 0 || score > best_score) {
            best = i;
            best_score = score;
        }
    }
    return best;
}

SupportSets s1_s2(const PeriodicSeq& seq) {
    SupportSets out;
    auto sup = seq.support();
    // Supported indices continue periodically, so adjacency wraps into the
    // next period: extend the list far enough to always see three entries
    // and every distinct adjacent pair.
    std::vector<u64> ext;
    for (u64 shift = 0; ext.size() < sup.size() + 3; shift += seq.t)
        for (u32 s : sup) ext.push_back(shift + s);
    // Pivot selection: first adjacent support pair whose values are not
    // opposite gives (c, e); an alternating pattern falls back to the first
    // three supported indices.
    out.case_one = false;
    for (size_t j = 0; j < sup.size(); ++j) {
        if (seq.at(ext[j]) != -seq.at(ext[j + 1])) {
            out.case_one = true;
            out.c = ext[j];
            out.e = ext[j + 1];
            break;
        }
    }
    if (!out.case_one) {
        out.c = ext[0];
        out.dd = ext[1];
        out.e = ext[2];
    }
    auto at_ext = [&](long i) {
        // periodic extension to all integers
        long t = static_cast<long>(seq.t);
        long idx = ((i - 1) % t + t) % t;
        return seq.values[static_cast<size_t>(idx)];
    };
    for (u32 i = 1; i <= seq.t; ++i) {
        if (std::gcd(i, seq.t) != 1) continue;
        long e = static_cast<long>(out.e);
        if (at_ext(e - static_cast<long>(i)) != 0)
            out.s1.push_back(i);
        else if (at_ext(e - 2 * static_cast<long>(i)) != 0)
            out.s2.push_back(i);
    }
    return out;
}

std::pair<u64, u64> coprime_bound(u32 t) {
    if (t == 1) return {1, 1};
    u64 num = t, den = 1;
    auto factors = factor_u64(t);
    for (auto [q, e] : factors) {
        (void)e;
        u64 s = (q == 2) ? 1 : 2;
        num *= (q - s);
        den *= q;
    }
    u64 g = std::gcd(num, den);
    return {num / g, den / g};
}

}  // namespace harmsum
