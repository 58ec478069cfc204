#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "harmsum/sequence.hpp"

namespace harmsum {

struct ScheduleRow {
    u64 a_lo = 0, a_hi = 0;  // closed interval of window starts
    u64 f = 0;               // claimed drop point for every a in the interval
};

struct Schedule {
    std::vector<ScheduleRow> rows;
    mpq_class multiplier;  // every row must satisfy f <= multiplier * (a-1)
};

// Reads a schedule table, expands geometric families for exponent d, keeps
// rows matching d's residue conditions, clips to [a_min, a_max], and checks
// the rows tile that interval exactly.  Throws std::runtime_error on format
// errors, gaps, or overlaps.
Schedule load_schedule(const std::string& path, unsigned d, u64 a_min, u64 a_max);

struct ScheduleCheck {
    bool ok = true;
    u64 bad_a = 0;      // first window start that failed (0 when ok)
    u64 bad_f = 0;      // the f it was tested against
    std::string what;   // "bound" | "no-drop" | ""
    u64 drops = 0;      // number of (a, f) pairs verified as drops
    u64 rows = 0;
};

// Verifies one row: the multiplier bound at its smallest a and, for every a
// in [a_lo, a_hi], that the reduced denominator strictly decreases from
// f-1 to f.  Runs banks of per-prime trackers across the row; windows whose
// 64-bit residues saturate ambiguously are replayed with wide residues.
ScheduleCheck verify_row(const PeriodicSeq& seq, unsigned d, const ScheduleRow& row,
                         const mpq_class& multiplier);

// All rows, optionally spread over worker threads (rows are independent).
// The report is identical for every worker count.
ScheduleCheck verify_schedule(const PeriodicSeq& seq, unsigned d, const Schedule& sched,
                              unsigned workers = 1);

}  // namespace harmsum
