#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "harmsum/drops.hpp"

namespace harmsum {

struct LiminfRecord {
    u64 a = 0, b = 0;
    std::string ratio;  // (b-a)/log(a), 30 significant digits
};

struct LiminfReport {
    u64 a_lo = 0, a_hi = 0;
    std::vector<LiminfRecord> records;  // strictly decreasing running minima
    u64 no_drop_count = 0;              // window starts with no drop below cap
    bool floor_holds = true;            // ratio > 1/2 for every a >= 100 with a drop
    u64 first_floor_violation = 0;
};

// For a in [a_lo, a_hi] finds b(a) under cap a + ceil(4 log a) + 8 and emits
// each new running minimum of (b(a)-a)/log(a).  Comparisons between ratios
// are certified (interval arithmetic with escalation; exact power check on
// ties), so the record list does not depend on floating-point luck.
LiminfReport liminf_scan(const PeriodicSeq& seq, u64 a_lo, u64 a_hi);

struct GiantReport {
    std::string a_decimal;
    bool no_drop_through_30 = false;
    bool drop_at_31 = false;
    std::string ratio;  // 31/log(a), 20 significant digits
    bool ratio_in_band = false;
};

// The 26-digit window start with b(a) = a + 31: checks every b in (a, a+30]
// keeps the denominator non-decreasing, b = a+31 drops it, and 31/log(a)
// lands within 5e-8 of 0.5300989.
GiantReport verify_giant_minimum();

struct ConjectureReport {
    u64 n_max = 0;
    std::vector<u64> drops;               // all n <= n_max with v_{1,n} < v_{1,n-1}
    std::vector<u64> mismatches;          // drop <=/=> (n does not divide v) failures
    std::vector<u64> forward_violations;  // drops where n | v_{1,n} (proven impossible)
    bool exact_agrees = true;             // exact-state replay matches, n <= exact_limit
    u64 exact_limit = 0;
};

// Tests "the denominator drops at n iff n does not divide it" for all
// n <= n_max with per-prime trackers (sharded over workers, deterministic),
// then replays n <= exact_limit with exact window states as a cross-check.
ConjectureReport conjecture_divisibility(u64 n_max, u64 exact_limit, unsigned workers = 1);

}  // namespace harmsum
