#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <string>
#include <utility>

#include "json.hpp"

namespace {

const std::string kCli = HARMSUM_CLI_PATH;

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    RunResult r;
    std::string cmd = kCli + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("documented one-liners") {
    auto fb = run("find-b --seq \"t=1;r=1\" --a 1");
    CHECK(fb.code == 0);
    CHECK(fb.out == "6\n");

    auto pc = run("power-cd --d 12");
    CHECK(pc.code == 0);
    CHECK(pc.out == "34\n");

    auto gm = run("giant-min");
    CHECK(gm.code == 0);
    CHECK(contains(gm.out, "0.5300989"));
    CHECK(contains(gm.out, "PASS"));
}

TEST_CASE("usage errors exit 2") {
    CHECK(run("not-a-command").code == 2);
    CHECK(run("find-b --a 1 --bogus-flag 7").code == 2);
    CHECK(run("find-b").code == 2);  // --a is required
    CHECK(run("").code == 2);
    CHECK(run("find-b --a 1 --precision-bits 64").code == 2);
    CHECK(run("find-b --a 1 --seq \"gibberish\"").code == 2);
    CHECK(run("estimate-c --l-max 5 --hi 2000").code == 2);
    CHECK(run("theorem1 --a 1 --witness-n 7").code == 2);  // partner flag missing
}

TEST_CASE("verification failures exit 1") {
    auto bad = run("verify-drop --a 1 --b 5");
    CHECK(bad.code == 1);
    CHECK(contains(bad.out, "FAIL"));

    auto good = run("verify-drop --a 1 --b 6");
    CHECK(good.code == 0);
    CHECK(contains(good.out, "PASS 60 -> 20"));

    auto capped = run("find-b --a 11 --cap 20");
    CHECK(capped.code == 1);
    CHECK(contains(capped.out, "no drop through 20"));

    auto rejected =
        run("theorem1 --seq \"t=4;r=0,-1,-2,1\" --a 7 --witness-n 7 --witness-p 5");
    CHECK(rejected.code == 1);
    CHECK(contains(rejected.out, "REJECTED gcd=7"));
}

TEST_CASE("witness table and certificates") {
    auto wt = run("witness-table");
    CHECK(wt.code == 0);
    CHECK(contains(wt.out, "t=2;r=1,0 -> (n=7, p=11)"));
    CHECK(contains(wt.out, "PASS"));

    auto acc = run("theorem1 --seq \"t=2;r=0,1\" --a 1");
    CHECK(acc.code == 0);
    CHECK(contains(acc.out, "ACCEPTED b=66"));
    CHECK(contains(acc.out, "drop=true"));
}

TEST_CASE("approximation commands") {
    auto di = run("dirichlet --p 5 --q 2 --m 4");
    CHECK(di.code == 0);
    CHECK(contains(di.out, "b1=137 b2=59"));

    auto al = run("align --p 5 --q 2 --m 4 --gamma 10");
    CHECK(al.code == 0);
    CHECK(contains(al.out, "C=2312"));
    CHECK(contains(al.out, "certified=yes"));

    auto co = run("constants --m 4 --p 3 --q 2");
    CHECK(co.code == 0);
    CHECK(contains(co.out, "diri_exp="));
}

TEST_CASE("epsilon threshold search") {
    auto e = run("find-b --a 1 --cap 40 --eps 1/8");
    CHECK(e.code == 0);
    CHECK(e.out == "33\n");
}

TEST_CASE("schedule verification is worker-count invariant") {
    std::string base = "verify-schedule --file classical.tsv --a-min 6 --a-max 300";
    auto w1 = run(base + " --workers 1");
    auto w4 = run(base + " --workers 4");
    CHECK(w1.code == 0);
    CHECK(contains(w1.out, "PASS"));
    CHECK(w1.out == w4.out);

    auto ps = run("power-schedule --d 2 --a-max 60");
    CHECK(ps.code == 0);
    CHECK(contains(ps.out, "drops=58"));
}

TEST_CASE("interrupted search resumes through its checkpoint") {
    std::string ck = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                     "/harmsum-ck-test.txt";
    std::remove(ck.c_str());

    auto first = run("find-b --a 11 --cap 20 --checkpoint " + ck);
    CHECK(first.code == 1);

    auto resumed = run("find-b --a 11 --cap 40 --checkpoint " + ck);
    auto direct = run("find-b --a 11 --cap 40");
    CHECK(resumed.code == 0);
    CHECK(resumed.out == "33\n");
    CHECK(resumed.out == direct.out);
    std::remove(ck.c_str());
}

TEST_CASE("machine-readable formats") {
    auto js = run("find-b --a 1 --format json");
    CHECK(js.code == 0);
    auto parsed = nlohmann::json::parse(js.out);
    REQUIRE(parsed.is_array());
    CHECK(parsed[0]["b"] == "6");
    CHECK(parsed[0]["v_prev"] == "60");
    CHECK(parsed[0]["v_next"] == "20");

    auto csv = run("find-b --a 1 --format csv");
    CHECK(csv.out == "a,b,status,v_prev,v_next\n1,6,found,60,20\n");

    auto wt = run("witness-table --format json");
    auto rows = nlohmann::json::parse(wt.out);
    CHECK(rows.size() == 12);
    for (const auto& row : rows) CHECK(row["ok"] == "true");
}

TEST_CASE("scan commands") {
    auto cj = run("conjecture --n-max 300 --exact-limit 150");
    CHECK(cj.code == 0);
    CHECK(contains(cj.out, "mismatches=0"));
    CHECK(contains(cj.out, "PASS"));

    auto gr = run("greedy --palette 1 --n 10");
    CHECK(gr.code == 1);
    CHECK(contains(gr.out, "fails at n=6"));

    auto gr2 = run("greedy --palette 2,3 --n 50");
    CHECK(gr2.code == 0);
    CHECK(contains(gr2.out, "all-coprime"));

    auto sp = run("sparse --b0 22");
    CHECK(sp.code == 0);
    CHECK(contains(sp.out, "b=1787371575990"));
    CHECK(contains(sp.out, "ratio=0.779816"));

    auto cw = run("crt-witness --n 24");
    CHECK(cw.code == 0);
    CHECK(contains(cw.out, "ratio=0.772229963327"));
    CHECK(contains(cw.out, "congruences PASS"));

    auto cw2 = run("crt-witness --n 20");
    CHECK(cw2.code == 1);

    auto ls = run("liminf-scan --a-lo 100 --a-hi 300");
    CHECK(ls.code == 0);
    CHECK(contains(ls.out, "floor holds"));
}

TEST_CASE("environment variable sets default precision") {
    RunResult low;
    {
        std::string cmd = "HARMSUM_PRECISION_BITS=64 " + kCli + " find-b --a 1 2>/dev/null";
        FILE* pipe = popen(cmd.c_str(), "r");
        REQUIRE(pipe != nullptr);
        char buf[256];
        while (fread(buf, 1, sizeof buf, pipe) > 0) {
        }
        int status = pclose(pipe);
        low.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }
    CHECK(low.code == 2);  // below the 128-bit floor

    auto flag = run("find-b --a 1 --precision-bits 256");
    CHECK(flag.code == 0);
    CHECK(flag.out == "6\n");
}
