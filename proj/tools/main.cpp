#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "harmsum/approx.hpp"
#include "harmsum/density.hpp"
#include "harmsum/drops.hpp"
#include "harmsum/io.hpp"
#include "harmsum/nonperiodic.hpp"
#include "harmsum/powers.hpp"
#include "harmsum/scans.hpp"
#include "harmsum/schedule.hpp"
#include "harmsum/state.hpp"
#include "harmsum/witness.hpp"

using namespace harmsum;

namespace {

using Row = std::vector<std::pair<std::string, std::string>>;

// Every subcommand fills rows (for csv/json) and a plain rendering; the
// format flag picks which one reaches stdout.
struct Output {
    std::vector<Row> rows;
    std::string plain;
};

void emit(const Output& out, const std::string& format) {
    if (format == "plain") {
        std::cout << out.plain;
        return;
    }
    if (format == "csv") {
        if (out.rows.empty()) return;
        std::vector<std::string> header;
        for (const auto& [k, v] : out.rows.front()) header.push_back(k);
        write_csv_row(std::cout, header);
        for (const auto& row : out.rows) {
            std::vector<std::string> fields;
            for (const auto& [k, v] : row) fields.push_back(v);
            write_csv_row(std::cout, fields);
        }
        return;
    }
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : out.rows) {
        nlohmann::ordered_json obj;
        for (const auto& [k, v] : row) obj[k] = v;
        arr.push_back(std::move(obj));
    }
    std::cout << arr.dump(2) << "\n";
}

std::string zs(const mpz_class& z) { return z.get_str(); }

mpq_class parse_rational(const std::string& text) {
    mpq_class q;
    if (q.set_str(text, 10) != 0) throw CLI::ValidationError("not a rational: " + text);
    q.canonicalize();
    return q;
}

std::vector<long> parse_palette(const std::string& text) {
    std::vector<long> vals;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) vals.push_back(std::stol(tok));
    return vals;
}

std::string seq_label(const PeriodicSeq& seq) {
    std::string r;
    for (size_t i = 0; i < seq.values.size(); ++i) {
        if (i) r += ",";
        r += std::to_string(seq.values[i]);
    }
    return "t=" + std::to_string(seq.t) + ";r=" + r;
}

struct Common {
    std::string seq_spec = "t=1;r=1";
    unsigned d = 1;
    unsigned workers = 1;
    std::string format = "plain";
    long precision_bits = 192;
    std::string data_dir = HARMSUM_DATA_DIR;
};

void add_common(CLI::App* sub, Common& c, bool with_seq_d = true) {
    if (with_seq_d) {
        sub->add_option("--seq", c.seq_spec, "numerator sequence, e.g. \"t=2;r=1,-1\"");
        sub->add_option("--d", c.d, "exponent of the summand denominators")
            ->check(CLI::PositiveNumber);
    }
    sub->add_option("--workers", c.workers, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--format", c.format, "output format")
        ->check(CLI::IsMember({"plain", "csv", "json"}));
    sub->add_option("--precision-bits", c.precision_bits,
                    "interval precision (default $HARMSUM_PRECISION_BITS or 192)");
    sub->add_option("--data", c.data_dir, "directory holding the schedule tables");
}

std::string resolve_table(const Common& c, const std::string& file) {
    if (file.find('/') != std::string::npos) return file;
    return c.data_dir + "/" + file;
}

int run_find_b(const Common& c, u64 a, u64 cap, const std::string& eps_text,
               const std::string& checkpoint) {
    auto seq = PeriodicSeq::parse(c.seq_spec);
    if (cap == 0) cap = classical_default_cap(a);

    FindOutcome fo = [&] {
        if (!eps_text.empty()) {
            if (!checkpoint.empty())
                throw CLI::ValidationError("--checkpoint only supports the plain drop search");
            return epsilon_drop(seq, c.d, a, parse_rational(eps_text), cap);
        }
        if (!checkpoint.empty()) {
            std::string fp = "find-b|" + c.seq_spec + "|d=" + std::to_string(c.d) +
                             "|a=" + std::to_string(a);
            if (auto payload = load_checkpoint(checkpoint, fp))
                return resume_find(HarmonicState::deserialize((*payload)[0]), cap);
            auto out = find_b(seq, c.d, a, cap);
            if (out.status == FindStatus::CAP_EXCEEDED)
                save_checkpoint(checkpoint, fp, {out.state.serialize()});
            return out;
        }
        return find_b(seq, c.d, a, cap);
    }();

    Output out;
    bool found = fo.status == FindStatus::FOUND;
    out.rows.push_back({{"a", std::to_string(a)},
                        {"b", found ? std::to_string(fo.b) : ""},
                        {"status", found ? "found" : "cap-exceeded"},
                        {"v_prev", zs(fo.v_prev)},
                        {"v_next", zs(fo.v_next)}});
    out.plain = found ? std::to_string(fo.b) + "\n"
                      : "no drop through " + std::to_string(cap) + "\n";
    emit(out, c.format);
    return found ? 0 : 1;
}

int run_verify_drop(const Common& c, u64 a, u64 b) {
    auto seq = PeriodicSeq::parse(c.seq_spec);
    DropReport rep = verify_drop(seq, c.d, a, b);
    Output out;
    out.rows.push_back({{"a", std::to_string(a)},
                        {"b", std::to_string(b)},
                        {"v_prev", zs(rep.v_prev)},
                        {"v_next", zs(rep.v_next)},
                        {"dropped", rep.dropped ? "true" : "false"}});
    out.plain = rep.dropped
                    ? "PASS " + zs(rep.v_prev) + " -> " + zs(rep.v_next) + "\n"
                    : "FAIL no drop at b=" + std::to_string(b) + " (" + zs(rep.v_prev) +
                          " -> " + zs(rep.v_next) + ")\n";
    emit(out, c.format);
    return rep.dropped ? 0 : 1;
}

Output schedule_output(const ScheduleCheck& rep) {
    Output out;
    out.rows.push_back({{"ok", rep.ok ? "true" : "false"},
                        {"rows", std::to_string(rep.rows)},
                        {"drops", std::to_string(rep.drops)},
                        {"bad_a", std::to_string(rep.bad_a)},
                        {"bad_f", std::to_string(rep.bad_f)},
                        {"what", rep.what}});
    out.plain = rep.ok ? "PASS rows=" + std::to_string(rep.rows) +
                             " drops=" + std::to_string(rep.drops) + "\n"
                       : "FAIL a=" + std::to_string(rep.bad_a) + " f=" +
                             std::to_string(rep.bad_f) + " " + rep.what + "\n";
    return out;
}

int run_verify_schedule(const Common& c, const std::string& file, u64 a_min, u64 a_max) {
    auto seq = PeriodicSeq::parse(c.seq_spec);
    Schedule sched = load_schedule(resolve_table(c, file), c.d, a_min, a_max);
    ScheduleCheck rep = verify_schedule(seq, c.d, sched, c.workers);
    emit(schedule_output(rep), c.format);
    return rep.ok ? 0 : 1;
}

int run_witness_table(const Common& c) {
    auto rows = reproduce_witness_table();
    Output out;
    bool all_ok = true;
    for (const auto& row : rows) {
        all_ok &= row.ok;
        out.rows.push_back({{"seq", seq_label(row.seq)},
                            {"n", std::to_string(row.got_n)},
                            {"p", std::to_string(row.got_p)},
                            {"expect_n", std::to_string(row.expect_n)},
                            {"expect_p", std::to_string(row.expect_p)},
                            {"ok", row.ok ? "true" : "false"}});
        out.plain += seq_label(row.seq) + " -> (n=" + std::to_string(row.got_n) +
                     ", p=" + std::to_string(row.got_p) + ")" +
                     (row.ok ? "" : "  MISMATCH") + "\n";
    }
    out.plain += all_ok ? "PASS\n" : "FAIL\n";
    emit(out, c.format);
    return all_ok ? 0 : 1;
}

int run_theorem1(const Common& c, u64 a, u64 m_floor, u64 n_cap, u64 wn, u64 wp) {
    auto seq = PeriodicSeq::parse(c.seq_spec);
    if (m_floor == 0) m_floor = seq.m;
    std::optional<PrimeWitness> w;
    if (wn != 0 || wp != 0) {
        if (wn == 0 || wp == 0)
            throw CLI::ValidationError("--witness-n and --witness-p come as a pair");
        w = PrimeWitness{wn, mpz_class(static_cast<unsigned long>(wp))};
    } else {
        w = find_prime_witness(seq, m_floor, n_cap);
    }
    if (!w) {
        std::cout << "no prime witness below n=" << n_cap << "\n";
        return 1;
    }
    Theorem1Witness t = theorem1_certify(seq, a, *w);

    std::string verified = "skipped";
    bool sound = true;
    if (t.accepted && t.b.fits_ulong_p() && t.b.get_ui() <= 10'000'000) {
        DropReport rep = verify_drop(seq, c.d, a, t.b.get_ui());
        verified = rep.dropped ? "true" : "false";
        sound = rep.dropped;
    }

    Output out;
    out.rows.push_back({{"a", std::to_string(a)},
                        {"n", std::to_string(t.n)},
                        {"p", zs(t.p)},
                        {"l", std::to_string(t.l)},
                        {"k1", std::to_string(t.k1)},
                        {"b", zs(t.b)},
                        {"accepted", t.accepted ? "true" : "false"},
                        {"gcd", zs(t.gcd)},
                        {"drop_verified", verified}});
    out.plain = t.accepted
                    ? "ACCEPTED b=" + zs(t.b) + " (n=" + std::to_string(t.n) + ", p=" +
                          zs(t.p) + ", k1=" + std::to_string(t.k1) +
                          ", drop=" + verified + ")\n"
                    : "REJECTED gcd=" + zs(t.gcd) + " (n=" + std::to_string(t.n) +
                          ", p=" + zs(t.p) + ")\n";
    emit(out, c.format);
    return t.accepted && sound ? 0 : 1;
}

int run_dirichlet(const Common& c, u64 p, u64 q, u64 m, bool oracle) {
    auto da = oracle ? dirichlet_exhaustive(p, q, m) : dirichlet(p, q, m);
    if (!da) {
        std::cout << "no admissible pair\n";
        return 1;
    }
    Output out;
    out.rows.push_back({{"p", std::to_string(p)},
                        {"q", std::to_string(q)},
                        {"m", std::to_string(m)},
                        {"b1", zs(da->b1)},
                        {"b2", zs(da->b2)},
                        {"eps", da->eps.str(10)}});
    out.plain = "b1=" + zs(da->b1) + " b2=" + zs(da->b2) + " eps=" + da->eps.str(10) + "\n";
    emit(out, c.format);
    return 0;
}

int run_align(const Common& c, u64 p, u64 q, u64 m, const std::string& gamma_text) {
    RealBound gamma = RealBound::from_mpq(parse_rational(gamma_text),
                                          static_cast<mpfr_prec_t>(c.precision_bits));
    AlignResult r = kron_align(p, q, m, gamma);
    Output out;
    out.rows.push_back({{"C", zs(r.C)},
                        {"k1", zs(r.k1)},
                        {"k2", zs(r.k2)},
                        {"certified", r.certified ? "true" : "false"}});
    out.plain = "C=" + zs(r.C) + " k1=" + zs(r.k1) + " k2=" + zs(r.k2) +
                " certified=" + (r.certified ? "yes" : "no") + "\n";
    emit(out, c.format);
    return r.certified ? 0 : 1;
}

int run_constants(const Common& c, u64 m, u64 p, u64 q) {
    ExplicitConstants ec = explicit_constants(m, p, q);
    Output out;
    out.rows.push_back({{"m", std::to_string(m)},
                        {"diri_exp", ec.diri_exp.str(12)},
                        {"god_exp", ec.god_exp.str(12)},
                        {"baker", ec.baker.str(12)},
                        {"log_branch", ec.baker_uses_log_branch ? "true" : "false"}});
    out.plain = "diri_exp=" + ec.diri_exp.str(12) + " god_exp=" + ec.god_exp.str(12) +
                " baker=" + ec.baker.str(12) + "\n";
    emit(out, c.format);
    return 0;
}

int run_power_cd(const Common& c, u64 d) {
    PowerProfile pr = power_profile(d);
    Output out;
    out.rows.push_back({{"d", std::to_string(d)},
                        {"c_d", std::to_string(pr.c_d)},
                        {"p_d", std::to_string(pr.p_d)},
                        {"argmin_i", std::to_string(pr.argmin_i)}});
    out.plain = std::to_string(pr.c_d) + "\n";
    emit(out, c.format);
    return 0;
}

int run_power_schedule(const Common& c, u64 d, u64 a_min, u64 a_max) {
    ScheduleCheck rep = verify_bd_schedule(d, c.data_dir, a_min, a_max, c.workers);
    emit(schedule_output(rep), c.format);
    return rep.ok ? 0 : 1;
}

int run_delta(const Common& c, unsigned d, u64 lo, u64 hi) {
    DeltaEstimate de = delta_estimate(d, lo, hi);
    Output out;
    out.rows.push_back({{"d", std::to_string(d)},
                        {"lo", std::to_string(lo)},
                        {"hi", std::to_string(hi)},
                        {"tested", std::to_string(de.primes_tested)},
                        {"solvable", std::to_string(de.solvable)},
                        {"fraction", de.estimate.get_str()}});
    std::ostringstream ss;
    ss << "tested=" << de.primes_tested << " solvable=" << de.solvable
       << " fraction=" << de.estimate << " ~ " << de.estimate.get_d() << "\n";
    out.plain = ss.str();
    emit(out, c.format);
    return 0;
}

int run_estimate_c(const Common& c, unsigned l_max, u64 lo, u64 hi) {
    CConstant cc = estimate_c(l_max, lo, hi);
    Output out;
    std::ostringstream closed;
    closed << cc.closed_form.get_d();
    out.rows.push_back({{"lower", cc.lower.str(12)},
                        {"upper", cc.upper.str(12)},
                        {"odd_part", cc.odd_part.str(12)},
                        {"closed_form", closed.str()},
                        {"tail_hi", std::to_string(cc.tail_hi.get_d())}});
    out.plain = "lower=" + cc.lower.str(12) + " upper=" + cc.upper.str(12) +
                " odd=" + cc.odd_part.str(12) + " closed-form=" + closed.str() + "\n";
    emit(out, c.format);
    return 0;
}

int run_crt_witness(const Common& c, u64 n) {
    auto w = build_liminf_witness(n);
    if (!w) {
        std::cout << "no admissible window prime for n=" << n << "\n";
        return 1;
    }
    CongruenceReport rep = verify_witness_congruences(*w);
    Output out;
    out.rows.push_back({{"n", std::to_string(w->n)},
                        {"q", std::to_string(w->q)},
                        {"Q", zs(w->Q)},
                        {"x", zs(w->x)},
                        {"a", zs(w->a)},
                        {"b", zs(w->b)},
                        {"ratio", w->ratio},
                        {"congruences", rep.ok ? "PASS" : "FAIL " + rep.what}});
    out.plain = "n=" + std::to_string(w->n) + " q=" + std::to_string(w->q) + " x=" +
                zs(w->x) + " a=" + zs(w->a) + " b=" + zs(w->b) + " ratio=" + w->ratio +
                "\ncongruences " + (rep.ok ? "PASS" : "FAIL " + rep.what) + "\n";
    emit(out, c.format);
    return rep.ok ? 0 : 1;
}

int run_greedy(const Common& c, const std::string& palette_text, u64 n) {
    auto palette = parse_palette(palette_text);
    auto violation = palette_violation(palette);
    GreedyRun g = greedy_sequence(palette, n);
    Output out;
    std::string vio = violation ? std::to_string(*violation) : "";
    out.rows.push_back({{"palette", palette_text},
                        {"N", std::to_string(n)},
                        {"numerators", rle_encode(g.r)},
                        {"all_coprime", g.all_coprime ? "true" : "false"},
                        {"fail_n", std::to_string(g.fail_n)},
                        {"palette_violation", vio}});
    std::string list;
    for (size_t i = 0; i < g.r.size(); ++i) {
        if (i) list += ",";
        list += std::to_string(g.r[i]);
    }
    out.plain = list + "\n" +
                (g.all_coprime ? "all-coprime\n"
                               : "fails at n=" + std::to_string(g.fail_n) + "\n");
    if (!vio.empty()) out.plain += "palette-violation p=" + vio + "\n";
    emit(out, c.format);
    return g.all_coprime ? 0 : 1;
}

int run_sparse(const Common& c, u64 b0, int max_steps) {
    SparseRun run = sparse_run(b0, max_steps);
    Output out;
    for (size_t i = 0; i < run.steps.size(); ++i) {
        const SparseStep& s = run.steps[i];
        out.rows.push_back({{"step", std::to_string(i + 1)},
                            {"q", std::to_string(s.q)},
                            {"x", zs(s.x)},
                            {"a", zs(s.a)},
                            {"b", zs(s.b)},
                            {"drop_verified", s.drop_verified ? "true" : "false"},
                            {"ratio", s.ratio}});
        out.plain += "step " + std::to_string(i + 1) + ": b=" + zs(s.b) +
                     " drop=" + (s.drop_verified ? "1" : "0") + " ratio=" + s.ratio + "\n";
    }
    if (!run.stopped.empty()) out.plain += "stopped: " + run.stopped + "\n";
    emit(out, c.format);
    return run.steps.empty() ? 1 : 0;
}

int run_conjecture(const Common& c, u64 n_max, u64 exact_limit) {
    ConjectureReport rep = conjecture_divisibility(n_max, exact_limit, c.workers);
    bool ok = rep.mismatches.empty() && rep.forward_violations.empty() && rep.exact_agrees;
    Output out;
    out.rows.push_back({{"n_max", std::to_string(rep.n_max)},
                        {"drops", std::to_string(rep.drops.size())},
                        {"mismatches", std::to_string(rep.mismatches.size())},
                        {"forward_violations", std::to_string(rep.forward_violations.size())},
                        {"exact_limit", std::to_string(rep.exact_limit)},
                        {"exact_agrees", rep.exact_agrees ? "true" : "false"}});
    out.plain = "n<=" + std::to_string(rep.n_max) + " drops=" +
                std::to_string(rep.drops.size()) + " mismatches=" +
                std::to_string(rep.mismatches.size()) + " forward-violations=" +
                std::to_string(rep.forward_violations.size()) + " exact<=" +
                std::to_string(rep.exact_limit) + ":" +
                (rep.exact_agrees ? "ok" : "disagrees") + "\n" +
                (ok ? "PASS\n" : "FAIL\n");
    emit(out, c.format);
    return ok ? 0 : 1;
}

int run_liminf_scan(const Common& c, u64 a_lo, u64 a_hi) {
    auto seq = PeriodicSeq::parse(c.seq_spec);
    LiminfReport rep = liminf_scan(seq, a_lo, a_hi);
    Output out;
    for (const auto& rec : rep.records) {
        out.rows.push_back({{"a", std::to_string(rec.a)},
                            {"b", std::to_string(rec.b)},
                            {"ratio", rec.ratio}});
        out.plain += "a=" + std::to_string(rec.a) + " b=" + std::to_string(rec.b) +
                     " ratio=" + rec.ratio + "\n";
    }
    out.plain += "no-drop-windows=" + std::to_string(rep.no_drop_count) + "\n";
    out.plain += rep.floor_holds
                     ? "floor holds\n"
                     : "floor violated at a=" + std::to_string(rep.first_floor_violation) + "\n";
    emit(out, c.format);
    return rep.floor_holds ? 0 : 1;
}

int run_giant_min(const Common& c) {
    GiantReport rep = verify_giant_minimum();
    bool ok = rep.no_drop_through_30 && rep.drop_at_31 && rep.ratio_in_band;
    Output out;
    out.rows.push_back({{"a", rep.a_decimal},
                        {"no_drop_through_30", rep.no_drop_through_30 ? "true" : "false"},
                        {"drop_at_31", rep.drop_at_31 ? "true" : "false"},
                        {"ratio", rep.ratio},
                        {"in_band", rep.ratio_in_band ? "true" : "false"}});
    out.plain = "ratio=" + rep.ratio + "\n" + (ok ? "PASS\n" : "FAIL\n");
    emit(out, c.format);
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact reduced denominators of generalized harmonic sums"};
    app.require_subcommand(1);

    Common c;
    if (const char* env = std::getenv("HARMSUM_PRECISION_BITS")) c.precision_bits = std::atol(env);

    u64 a = 1, b = 0, cap = 0, m_floor = 0, n_cap = 4096, wn = 0, wp = 0;
    u64 p = 2, q = 3, m = 4, d_arg = 2, n = 24, lo = 5, hi = 100000;
    u64 a_min = 0, a_max = 0, a_lo = 100, a_hi = 2000, b0 = 22, n_max = 10000, exact_limit = 2000;
    unsigned l_max = 30;
    int max_steps = 3;
    bool oracle = false;
    std::string eps_text, checkpoint, file, gamma_text = "1", palette_text = "1,2";

    auto* sc_find = app.add_subcommand("find-b", "first denominator drop after a");
    add_common(sc_find, c);
    sc_find->add_option("--a", a, "window start")->required();
    sc_find->add_option("--cap", cap, "search bound (default max(6(a-1), a+64))");
    sc_find->add_option("--eps", eps_text, "require v to fall below eps * previous");
    sc_find->add_option("--checkpoint", checkpoint, "resumable search state file");

    auto* sc_vd = app.add_subcommand("verify-drop", "check v strictly falls from b-1 to b");
    add_common(sc_vd, c);
    sc_vd->add_option("--a", a)->required();
    sc_vd->add_option("--b", b)->required();

    auto* sc_vs = app.add_subcommand("verify-schedule", "verify a drop-point table");
    add_common(sc_vs, c);
    sc_vs->add_option("--file", file, "schedule table (name under --data, or a path)")
        ->required();
    sc_vs->add_option("--a-min", a_min)->required();
    sc_vs->add_option("--a-max", a_max)->required();

    auto* sc_wt = app.add_subcommand("witness-table", "recompute the twelve tabulated witnesses");
    add_common(sc_wt, c, false);

    auto* sc_t1 = app.add_subcommand("theorem1", "drop certificate from a prime witness");
    add_common(sc_t1, c);
    sc_t1->add_option("--a", a)->required();
    sc_t1->add_option("--m-floor", m_floor, "witness threshold (default: sequence bound)");
    sc_t1->add_option("--n-cap", n_cap);
    sc_t1->add_option("--witness-n", wn, "use this witness instead of scanning");
    sc_t1->add_option("--witness-p", wp);

    auto* sc_di = app.add_subcommand("dirichlet", "log-ratio approximation pair");
    add_common(sc_di, c, false);
    sc_di->add_option("--p", p)->required();
    sc_di->add_option("--q", q)->required();
    sc_di->add_option("--m", m)->required();
    sc_di->add_flag("--oracle", oracle, "exhaustive search instead of convergents");

    auto* sc_al = app.add_subcommand("align", "Kronecker alignment C = ceil(gamma/eps)");
    add_common(sc_al, c, false);
    sc_al->add_option("--p", p)->required();
    sc_al->add_option("--q", q)->required();
    sc_al->add_option("--m", m)->required();
    sc_al->add_option("--gamma", gamma_text)->required();

    auto* sc_co = app.add_subcommand("constants", "effective growth-theorem constants");
    add_common(sc_co, c, false);
    sc_co->add_option("--m", m)->required();
    sc_co->add_option("--p", p)->required();
    sc_co->add_option("--q", q)->required();

    auto* sc_pc = app.add_subcommand("power-cd", "first-drop constant at exponent d");
    add_common(sc_pc, c, false);
    sc_pc->add_option("--d", d_arg)->required();

    auto* sc_ps = app.add_subcommand("power-schedule", "verify the exponent-class table");
    add_common(sc_ps, c, false);
    sc_ps->add_option("--d", d_arg)->required();
    sc_ps->add_option("--a-min", a_min, "0 = class default");
    sc_ps->add_option("--a-max", a_max)->required();

    auto* sc_de = app.add_subcommand("delta", "solvable-prime density of the critical poly");
    add_common(sc_de, c, false);
    sc_de->add_option("--d", d_arg)->required();
    sc_de->add_option("--lo", lo);
    sc_de->add_option("--hi", hi)->required();

    auto* sc_ec = app.add_subcommand("estimate-c", "enclosure of the density constant");
    add_common(sc_ec, c, false);
    sc_ec->add_option("--l-max", l_max)->check(CLI::Range(30u, 1000u));
    sc_ec->add_option("--lo", lo);
    sc_ec->add_option("--hi", hi)->required();

    auto* sc_cw = app.add_subcommand("crt-witness", "aligned window with a slow drop");
    add_common(sc_cw, c, false);
    sc_cw->add_option("--n", n)->required();

    auto* sc_gr = app.add_subcommand("greedy", "unit-fraction numerators from a palette");
    add_common(sc_gr, c, false);
    sc_gr->add_option("--palette", palette_text)->required();
    sc_gr->add_option("--n", n_max)->required();

    auto* sc_sp = app.add_subcommand("sparse", "0/1 support chain with ratio near 1/2");
    add_common(sc_sp, c, false);
    sc_sp->add_option("--b0", b0)->required();
    sc_sp->add_option("--max-steps", max_steps);

    auto* sc_cj = app.add_subcommand("conjecture", "drop iff n does not divide v");
    add_common(sc_cj, c, false);
    sc_cj->add_option("--n-max", n_max)->required();
    sc_cj->add_option("--exact-limit", exact_limit);

    auto* sc_ls = app.add_subcommand("liminf-scan", "running minima of (b(a)-a)/log a");
    add_common(sc_ls, c);
    sc_ls->add_option("--a-lo", a_lo)->required();
    sc_ls->add_option("--a-hi", a_hi)->required();

    auto* sc_gm = app.add_subcommand("giant-min", "verify the 26-digit record window");
    add_common(sc_gm, c, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (c.precision_bits < 128) {
        std::cerr << "--precision-bits must be at least 128\n";
        return 2;
    }

    try {
        if (sc_find->parsed()) return run_find_b(c, a, cap, eps_text, checkpoint);
        if (sc_vd->parsed()) return run_verify_drop(c, a, b);
        if (sc_vs->parsed()) return run_verify_schedule(c, file, a_min, a_max);
        if (sc_wt->parsed()) return run_witness_table(c);
        if (sc_t1->parsed()) return run_theorem1(c, a, m_floor, n_cap, wn, wp);
        if (sc_di->parsed()) return run_dirichlet(c, p, q, m, oracle);
        if (sc_al->parsed()) return run_align(c, p, q, m, gamma_text);
        if (sc_co->parsed()) return run_constants(c, m, p, q);
        if (sc_pc->parsed()) return run_power_cd(c, d_arg);
        if (sc_ps->parsed()) return run_power_schedule(c, d_arg, a_min, a_max);
        if (sc_de->parsed()) return run_delta(c, static_cast<unsigned>(d_arg), lo, hi);
        if (sc_ec->parsed()) return run_estimate_c(c, l_max, lo, hi);
        if (sc_cw->parsed()) return run_crt_witness(c, n);
        if (sc_gr->parsed()) return run_greedy(c, palette_text, n_max);
        if (sc_sp->parsed()) return run_sparse(c, b0, max_steps);
        if (sc_cj->parsed()) return run_conjecture(c, n_max, exact_limit);
        if (sc_ls->parsed()) return run_liminf_scan(c, a_lo, a_hi);
        if (sc_gm->parsed()) return run_giant_min(c);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
