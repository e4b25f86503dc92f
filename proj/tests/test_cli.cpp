#include <doctest.h>

#include <cstdlib>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "contlog/cli.hpp"
#include "contlog/parallel.hpp"
#include "contlog/rational_core.hpp"
#include "oracles.hpp"

using namespace contlog;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args) {
    args.insert(args.begin(), "contlog");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("expand and eval") {
    CHECK(cli({"expand", "96/7"}).out == "<3,0,1,2>\n");
    CHECK(cli({"expand", "1/1"}).out == "<0>\n");
    CHECK(cli({"expand", "7"}).out == "<2,0,1,1>\n");
    CHECK(cli({"expand", "10/4", "--no-reduce"}).out == "<1,2>\n");
    CHECK(cli({"expand", "10/4", "--lowest"}).out == "<1,2>\n");
    CHECK(cli({"eval", "<3,0,1,2>"}).out == "96/7\n");
    CHECK(cli({"eval", "3,0,1,2"}).out == "96/7\n");
    CHECK(cli({"eval", "<5>"}).out == "32/1\n");
    CHECK(cli({"cf", "96/7"}).out == "[13,1,2,2]\n");
}

TEST_CASE("trace and audit") {
    CHECK(cli({"trace", "96/7"}).out == "step 3 96 7 56 40\nstep 0 56 40 40 16\nstep 1 40 16 32 8\nstep 2 32 8 32 0\n");
    CHECK(cli({"trace", "96/7", "--reduce"}).out.rfind("step 3 96 7 7 5\n", 0) == 0);
    Run r = cli({"audit", "96/7"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("lemma1=ok lemma2=ok lemma3=ok lemma4=ok theorem5=ok") != std::string::npos);
    r = cli({"audit", "7", "--json"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("\"record\":\"summary\"") != std::string::npos);
}

TEST_CASE("verification commands") {
    Run r = cli({"verify-l", "--max", "512"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.rfind("checked=131328 violations=0 witness=", 0) == 0);

    r = cli({"verify-t", "--max", "64", "--jobs", "2"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.rfind("checked=2079 violations=0", 0) == 0);
    CHECK(r.out.find("note excluded (1,1)") != std::string::npos);

    r = cli({"mersenne", "--max", "64"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.rfind("checked=63 violations=0", 0) == 0);
    CHECK(r.out.find("note n=1") != std::string::npos);

    r = cli({"tightness", "--max", "64", "--json"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("\"check\":\"tightness\"") != std::string::npos);
}

TEST_CASE("experiment commands") {
    Run r = cli({"seq-l", "--max", "7"});
    CHECK(r.out == "1 1\n2 1\n3 2\n4 1\n5 2\n6 2\n7 4\n");
    r = cli({"sweep", "--q-min", "1", "--q-max", "3", "--all-p"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.rfind("q,count,", 0) == 0);
    r = cli({"kernel", "--k", "2", "--depth", "2", "--len", "16"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("depth\trows\trank\tstabilized") != std::string::npos);
    r = cli({"compare", "--max", "16"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.rfind("p_lo,p_hi,pairs", 0) == 0);
}

TEST_CASE("usage and precondition errors exit 1 with one diagnostic line") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"frobnicate"},
             {},
             {"expand", "3/7"},
             {"expand", "12x"},
             {"expand", "5/0"},
             {"eval", "<>"},
             {"eval", "<1,a>"},
             {"verify-l"},
             {"verify-t", "--max", "1"},
             {"kernel", "--k", "1", "--depth", "2", "--len", "16"},
             {"kernel", "--k", "2", "--depth", "40", "--len", "256"},
             {"sweep", "--q-min", "9", "--q-max", "3"},
         }) {
        const Run r = cli(args);
        CAPTURE(args.size());
        CHECK(r.code == kExitUsage);
        CHECK(r.out.empty());
        REQUIRE_FALSE(r.err.empty());
        CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
    }
    CHECK(cli({"--help"}).code == kExitOk);
}

TEST_CASE("eval of expand reproduces lowest terms over a scripted corpus") {
    std::mt19937_64 rng(100);
    for (int i = 0; i < 100; ++i) {
        mpz_class a = oracle::random_bits(rng, 1 + rng() % 120);
        mpz_class b = oracle::random_bits(rng, 1 + rng() % 120);
        if (i % 3 == 0) {
            b *= 6;
            a *= 6;
        }
        if (a < b) {
            std::swap(a, b);
        }
        const std::string input = a.get_str() + "/" + b.get_str();
        const Run e = cli({"expand", input});
        REQUIRE(e.code == kExitOk);
        std::string expansion = e.out;
        expansion.pop_back();
        const Run v = cli({"eval", expansion});
        REQUIRE(v.code == kExitOk);
        const RationalPair want = reduce_full(oracle::to_nat(a), oracle::to_nat(b));
        REQUIRE(v.out == format_rational(want) + "\n");
    }
}

TEST_CASE("sweep output is byte-identical across runs and --jobs") {
    const Run first = cli({"sweep", "--q-min", "2", "--q-max", "200", "--jobs", "1"});
    CHECK(cli({"sweep", "--q-min", "2", "--q-max", "200", "--jobs", "1"}).out == first.out);
    CHECK(cli({"sweep", "--q-min", "2", "--q-max", "200", "--jobs", "4"}).out == first.out);
}

TEST_CASE("CLOG_JOBS sets the default worker count") {
    ::setenv("CLOG_JOBS", "3", 1);
    CHECK(default_jobs() == 3);
    ::setenv("CLOG_JOBS", "zero", 1);
    CHECK(default_jobs() >= 1);
    ::unsetenv("CLOG_JOBS");
}
