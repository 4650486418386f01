#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include "quadcong/cli.hpp"

using namespace quadcong;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    for (std::string l; std::getline(is, l);) out.push_back(l);
    return out;
}

// JSON line without the trailing elapsed_ms field.
std::string strip_elapsed(const std::string& line) { return line.substr(0, line.find(",\"elapsed_ms\"")); }

} // namespace

TEST_CASE("emit_record schemas") {
    VerificationRecord rec;
    rec.p = 3;
    rec.d = 2;
    rec.chi = -1;
    rec.theorem11_ok = true;
    rec.theorem12_vmin = {2, false};
    rec.degree_P = 4;
    rec.method = Method::Tree;
    rec.k_used = 3;
    rec.elapsed_ms = 0.25;

    CHECK(record_to_json(rec) ==
          R"({"p":3,"d":2,"chi":-1,"theorem11_ok":true,"theorem12_vmin":2,"degree_P":4,"method":"tree","k_used":3,"elapsed_ms":0.25})");
    CHECK(csv_header() == "p,d,chi,theorem11_ok,theorem12_vmin,degree_P,method,k_used,elapsed_ms");
    CHECK(record_to_csv(rec) == "3,2,-1,true,2,4,tree,3,0.250");
    CHECK(record_to_human(rec).find("OK") != std::string::npos);
    CHECK(emit_record(rec, Format::Csv, true) == csv_header() + "\n3,2,-1,true,2,4,tree,3,0.250\n");

    rec.theorem11_ok = false;
    CHECK(record_to_human(rec).find("FAIL") != std::string::npos);
    CHECK(record_to_human(rec).find("OK") == std::string::npos);

    // Saturation is carried by vmin == k_used.
    rec.theorem12_vmin = {3, true};
    CHECK(record_from_json(record_to_json(rec)) == rec);
    CHECK_THROWS_AS(record_from_json("{\"p\":3}"), Error);
    CHECK_THROWS_AS(record_from_json("not json"), Error);
}

TEST_CASE("every scanned JSON line parses back to its record") {
    ScanConfig cfg;
    cfg.p_max = 13;
    cfg.d_min = -4;
    cfg.d_max = 4;
    cfg.jobs = 3;
    const auto res = run_scan(cfg);
    for (const auto& rec : res.records) CHECK(record_from_json(record_to_json(rec)) == rec);
}

TEST_CASE("scan output is independent of the worker count") {
    ScanConfig cfg;
    cfg.p_max = 23;
    cfg.d_min = -6;
    cfg.d_max = 6;
    cfg.jobs = 1;
    const auto serial = run_scan(cfg);
    cfg.jobs = 8;
    const auto parallel = run_scan(cfg);
    REQUIRE(serial.records.size() == parallel.records.size());
    for (std::size_t i = 0; i < serial.records.size(); ++i)
        CHECK(strip_elapsed(record_to_json(serial.records[i])) == strip_elapsed(record_to_json(parallel.records[i])));
    CHECK(serial.skipped == parallel.skipped);
    CHECK(serial.failures.empty());

    for (std::size_t i = 1; i < serial.records.size(); ++i) {
        const auto& a = serial.records[i - 1];
        const auto& b = serial.records[i];
        CHECK((a.p < b.p || (a.p == b.p && a.d < b.d)));
    }
}

TEST_CASE("scan skips p | d points") {
    ScanConfig cfg;
    cfg.p_max = 5;
    cfg.d_min = 0;
    cfg.d_max = 3;
    const auto res = run_scan(cfg);
    // (3, 0), (3, 3), (5, 0) skipped.
    CHECK(res.skipped.size() == 3);
    CHECK(res.records.size() == 5);
}

TEST_CASE("cli verify") {
    const auto ok = cli({"verify", "--p", "3", "--d", "2", "--format", "json"});
    CHECK(ok.code == 0);
    const auto ls = lines(ok.out);
    REQUIRE(ls.size() == 1);
    CHECK(ls[0].rfind(R"({"p":3,"d":2,"chi":-1,"theorem11_ok":true,"theorem12_vmin":2,"degree_P":4,"method":"tree","k_used":3,)", 0) == 0);

    const auto human = cli({"verify", "--p", "3", "--d", "2"});
    CHECK(human.code == 0);
    CHECK(human.out.find("OK") != std::string::npos);

    const auto bad = cli({"verify", "--p", "4", "--d", "1"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("NotOddPrime") != std::string::npos);

    CHECK(cli({"verify", "--p", "5", "--d", "10"}).code == 2);
    CHECK(cli({"verify", "--p", "5"}).code == 2);
    CHECK(cli({"verify", "--p", "5", "--d", "1", "--bogus"}).code == 2);
    CHECK(cli({"verify", "--p", "5", "--d", "1", "--method", "fft"}).code == 2);
    CHECK(cli({"frobnicate"}).code == 2);
    CHECK(cli({}).code == 2);
    CHECK(cli({"--help"}).code == 0);

    const auto neg = cli({"verify", "--p", "13", "--d", "-1", "--method", "shortcut", "--format", "csv"});
    CHECK(neg.code == 0);
    CHECK(lines(neg.out).at(1).rfind("13,-1,1,true,", 0) == 0);
}

TEST_CASE("cli scan") {
    const auto r = cli({"scan", "--pmax", "7", "--dmin", "-3", "--dmax", "3", "--jobs", "2", "--format", "csv"});
    CHECK(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(!ls.empty());
    CHECK(ls[0] == csv_header());
    CHECK(ls.size() == 1 + 16);  // p = 3: 4 points, 5: 6, 7: 6
    CHECK(r.err.find("skip p=3 d=-3") != std::string::npos);
    CHECK(r.err.find("with vmin exactly 2") != std::string::npos);
}

TEST_CASE("cli valuation") {
    const auto r = cli({"valuation", "--p", "13", "--d", "-1", "--max-k", "5"});
    CHECK(r.code == 0);
    CHECK(r.out.find("k=5") != std::string::npos);
    CHECK(r.out.find("vmin 4 (target 4): OK") != std::string::npos);

    const auto j = cli({"valuation", "--p", "3", "--d", "2", "--max-k", "4", "--format", "json"});
    CHECK(j.code == 0);
    const auto ls = lines(j.out);
    REQUIRE(ls.size() == 2);
    CHECK(ls[1] == R"({"p":3,"d":2,"k":3,"va":2,"vb":2,"vmin":2,"saturated":false})");
}

TEST_CASE("cli identities and bench") {
    const auto r = cli({"identities", "--p", "7", "--d", "2", "--samples", "20"});
    CHECK(r.code == 0);
    CHECK(r.out.find("lemma_suite: OK") != std::string::npos);
    CHECK(r.out.find("proof_identity: 20/20 OK") != std::string::npos);
    CHECK(r.out.find("index_set_difference: vmin") != std::string::npos);

    const auto small = cli({"identities", "--p", "3", "--d", "2"});
    CHECK(small.code == 0);
    CHECK(small.err.find("skipped") != std::string::npos);

    const auto b = cli({"bench", "--p", "13", "--d", "2", "--method", "tree", "--against", "naive"});
    CHECK(b.code == 0);
    CHECK(b.out.find("speedup naive/tree") != std::string::npos);
    CHECK(cli({"bench", "--p", "13", "--d", "2"}).code == 2);
}

TEST_CASE("QUADCONG_JOBS sets the default worker count") {
    ::setenv("QUADCONG_JOBS", "3", 1);
    CHECK(default_jobs() == 3);
    ::setenv("QUADCONG_JOBS", "zero", 1);
    CHECK(default_jobs() >= 1);
    ::unsetenv("QUADCONG_JOBS");
}
