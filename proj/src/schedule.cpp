#include "harmsum/schedule.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "harmsum/tracker.hpp"

namespace harmsum {

namespace {

struct RawRow {
    bool geom = false;
    u64 base = 1, fc = 0, loc = 0, hic = 0;
    long fs = 0, los = 0, his = 0;
    long kmin = 0;
    std::string cond;
};

u64 pow_u64(u64 b, long e) {
    if (e < 0) throw std::runtime_error("schedule row expands to a fractional value");
    u64 r = 1;
    for (long i = 0; i < e; ++i) {
        if (r > UINT64_MAX / b) throw std::runtime_error("schedule row overflows");
        r *= b;
    }
    return r;
}

bool cond_matches(const std::string& cond, unsigned d) {
    if (cond == "-") return true;
    // dmod<M>=<v1,v2,...>
    if (cond.rfind("dmod", 0) != 0) throw std::runtime_error("bad row condition: " + cond);
    auto eq = cond.find('=');
    if (eq == std::string::npos) throw std::runtime_error("bad row condition: " + cond);
    unsigned long mod = std::stoul(cond.substr(4, eq - 4));
    std::stringstream ss(cond.substr(eq + 1));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (d % mod == std::stoul(tok)) return true;
    }
    return false;
}

}  // namespace

Schedule load_schedule(const std::string& path, unsigned d, u64 a_min, u64 a_max) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open schedule file " + path);
    Schedule sched;
    bool have_mult = false;
    std::vector<RawRow> raws;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        std::string kind;
        ss >> kind;
        if (kind == "multiplier") {
            std::string frac;
            ss >> frac;
            sched.multiplier = mpq_class(frac);
            sched.multiplier.canonicalize();
            have_mult = true;
            continue;
        }
        RawRow r;
        if (kind == "geom")
            r.geom = true;
        else if (kind != "fixed")
            throw std::runtime_error("bad row kind: " + kind);
        if (!(ss >> r.base >> r.fc >> r.fs >> r.loc >> r.los >> r.hic >> r.his >> r.kmin >>
              r.cond))
            throw std::runtime_error("short schedule row: " + line);
        raws.push_back(r);
    }
    if (!have_mult) throw std::runtime_error("schedule file lacks a multiplier line");

    for (const RawRow& r : raws) {
        if (!cond_matches(r.cond, d)) continue;
        if (!r.geom) {
            u64 lo = std::max(r.loc, a_min);
            u64 hi = std::min(r.hic, a_max);
            if (lo <= hi) sched.rows.push_back({lo, hi, r.fc});
            continue;
        }
        for (long k = r.kmin;; ++k) {
            u64 open_lo = r.loc * pow_u64(r.base, k + r.los);
            if (open_lo >= a_max) break;
            u64 hi = r.hic * pow_u64(r.base, k + r.his);
            u64 f = r.fc * pow_u64(r.base, k + r.fs);
            u64 lo = std::max(open_lo + 1, a_min);
            u64 chi = std::min(hi, a_max);
            if (lo <= chi) sched.rows.push_back({lo, chi, f});
        }
    }

    std::sort(sched.rows.begin(), sched.rows.end(),
              [](const ScheduleRow& x, const ScheduleRow& y) { return x.a_lo < y.a_lo; });
    u64 expect = a_min;
    for (const ScheduleRow& r : sched.rows) {
        if (r.a_lo != expect) {
            std::ostringstream os;
            os << "schedule " << (r.a_lo > expect ? "gap" : "overlap") << " at a=" << expect;
            throw std::runtime_error(os.str());
        }
        expect = r.a_hi + 1;
    }
    if (expect != a_max + 1) {
        std::ostringstream os;
        os << "schedule stops at a=" << expect - 1 << " short of " << a_max;
        throw std::runtime_error(os.str());
    }
    return sched;
}

namespace {

// One bank of per-prime trackers over a common window.  A handful of primes
// may be promoted to wide residues on a replay.
struct Bank {
    std::vector<PrimeTracker> narrow;
    std::vector<PrimeTrackerWide> wide;

    void step(u64 i, long r) {
        if (r == 0) return;
        for (auto& t : narrow) t.step(i, r);
        for (auto& t : wide) t.step(i, r);
    }
};

unsigned wide_cap(u64 p, unsigned d, u64 f) {
    unsigned logf = 0;
    u64 w = 1;
    while (w <= f / p) {
        w *= p;
        ++logf;
    }
    return d * logf + 2;
}

struct RowPass {
    bool ok = true;
    u64 bad_a = 0;
    std::string what;
    std::vector<u64> ambiguous;  // primes whose trackers saturated undecidably
};

RowPass scan_row(const PeriodicSeq& seq, unsigned d, const ScheduleRow& row,
                 const std::vector<u32>& plist, const std::set<u64>& wide_primes,
                 const mpz_class& lhs0) {
    RowPass out;
    Bank prev;
    for (u32 p : plist) {
        if (wide_primes.count(p))
            prev.wide.emplace_back(p, d, wide_cap(p, d, row.f));
        else
            prev.narrow.emplace_back(p, d, PrimeTracker::suggest_cap(p, d, row.f));
    }
    for (u64 i = row.a_hi; i < row.f; ++i) prev.step(i, seq.at(i));
    Bank full = prev;
    full.step(row.f, seq.at(row.f));

    std::set<u64> ambig;
    mpz_class lhs, rhs, pw;
    for (u64 a = row.a_hi;; --a) {
        lhs = lhs0;
        rhs = 1;
        bool decided = true;
        auto fold = [&](u64 p, GVal vf, GVal vp) {
            if (!vf.exact || !vp.exact) {
                ambig.insert(p);
                decided = false;
                return;
            }
            if (vf.val > vp.val) {
                mpz_ui_pow_ui(pw.get_mpz_t(), p, vf.val - vp.val);
                lhs *= pw;
            } else if (vp.val > vf.val) {
                mpz_ui_pow_ui(pw.get_mpz_t(), p, vp.val - vf.val);
                rhs *= pw;
            }
        };
        for (size_t k = 0; k < prev.narrow.size(); ++k)
            fold(prev.narrow[k].p(), full.narrow[k].v_exponent(), prev.narrow[k].v_exponent());
        for (size_t k = 0; k < prev.wide.size(); ++k)
            fold(prev.wide[k].p(), full.wide[k].v_exponent(), prev.wide[k].v_exponent());
        if (decided && !(lhs < rhs)) {
            out.ok = false;
            out.bad_a = a;
            out.what = "no-drop";
            return out;
        }
        if (a == row.a_lo) break;
        prev.step(a - 1, seq.at(a - 1));
        full.step(a - 1, seq.at(a - 1));
    }
    out.ambiguous.assign(ambig.begin(), ambig.end());
    return out;
}

}  // namespace

ScheduleCheck verify_row(const PeriodicSeq& seq, unsigned d, const ScheduleRow& row,
                         const mpq_class& multiplier) {
    ScheduleCheck rep;
    rep.rows = 1;
    // f <= multiplier * (a - 1), tightest at the smallest a; exact rational
    // comparison because several rows meet the bound with equality.
    mpz_class lhs_bound = mpz_class(static_cast<unsigned long>(row.f)) * multiplier.get_den();
    mpz_class rhs_bound = multiplier.get_num() * mpz_class(static_cast<unsigned long>(row.a_lo - 1));
    if (lhs_bound > rhs_bound) {
        rep.ok = false;
        rep.bad_a = row.a_lo;
        rep.bad_f = row.f;
        rep.what = "bound";
        return rep;
    }
    if (seq.at(row.f) == 0) {
        // The extra index contributes nothing, so v cannot strictly decrease.
        rep.ok = false;
        rep.bad_a = row.a_hi;
        rep.bad_f = row.f;
        rep.what = "no-drop";
        return rep;
    }

    u64 window = row.f - row.a_lo;
    u64 limit = std::max(window + 1, static_cast<u64>(seq.m));
    std::vector<u32> plist = primes_up_to(static_cast<u32>(limit));

    // Primes above the tracked range touch the window at most once, and only
    // a divisor of f itself can distinguish the two windows: it enters the
    // denominator with exponent d*e_p(f) exactly when f joins.
    mpz_class lhs0 = 1, pw;
    for (auto [p, e] : factor_u64(row.f)) {
        if (p > limit) {
            mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(p),
                          static_cast<unsigned long>(e) * d);
            lhs0 *= pw;
        }
    }

    RowPass pass = scan_row(seq, d, row, plist, {}, lhs0);
    if (pass.ok && !pass.ambiguous.empty()) {
        std::set<u64> wide(pass.ambiguous.begin(), pass.ambiguous.end());
        pass = scan_row(seq, d, row, plist, wide, lhs0);
        if (!pass.ambiguous.empty())
            throw std::logic_error("wide replay still ambiguous");
    }
    if (!pass.ok) {
        rep.ok = false;
        rep.bad_a = pass.bad_a;
        rep.bad_f = row.f;
        rep.what = pass.what;
        return rep;
    }
    rep.drops = row.a_hi - row.a_lo + 1;
    return rep;
}

ScheduleCheck verify_schedule(const PeriodicSeq& seq, unsigned d, const Schedule& sched,
                              unsigned workers) {
    std::vector<ScheduleCheck> results(sched.rows.size());
    if (workers <= 1) {
        for (size_t i = 0; i < sched.rows.size(); ++i)
            results[i] = verify_row(seq, d, sched.rows[i], sched.multiplier);
    } else {
        std::atomic<size_t> next{0};
        auto work = [&]() {
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= sched.rows.size()) return;
                results[i] = verify_row(seq, d, sched.rows[i], sched.multiplier);
            }
        };
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    ScheduleCheck rep;
    for (const ScheduleCheck& r : results) {
        rep.rows += r.rows;
        rep.drops += r.drops;
        if (!r.ok && rep.ok) {
            rep.ok = false;
            rep.bad_a = r.bad_a;
            rep.bad_f = r.bad_f;
            rep.what = r.what;
        }
    }
    return rep;
}

}  // namespace harmsum
