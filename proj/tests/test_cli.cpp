#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "qaudit/cli.hpp"
#include "qaudit/report_io.hpp"

using namespace qaudit;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("/tmp/qaudit_test_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli({}) == 2);
    CHECK(run_cli({"frobnicate"}) == 2);
    CHECK(run_cli({"audit", "--no-such-flag"}) == 2);
    CHECK(run_cli({"eval"}) == 2);
    CHECK(run_cli({"eval", "unknown-fn"}) == 2);
    CHECK(run_cli({"table", "bad-kind"}) == 2);
    CHECK(run_cli({"audit", "--q", "1.5"}) == 2);
}

TEST_CASE("eval aq prints the pinned value") {
    TempFile out("eval_aq.txt");
    CHECK(run_cli({"eval", "aq", "--z", "1", "--q", "0.5", "--out", out.path}) == 0);
    const std::string text = slurp(out.path);
    CHECK(text.find("0.1607637889320") != std::string::npos);
    CHECK(text.find("tail_bound") != std::string::npos);

    TempFile out0("eval_aq0.txt");
    CHECK(run_cli({"eval", "aq", "--z", "0", "--q", "0.5", "--out", out0.path}) == 0);
    CHECK(slurp(out0.path).find("value = 1\n") != std::string::npos);
}

TEST_CASE("eval covers the remaining functions") {
    TempFile out("eval_misc.txt");
    CHECK(run_cli({"eval", "qpoch-inf", "--z", "0.5", "--q", "0.5", "--out",
                   out.path}) == 0);
    CHECK(slurp(out.path).find("0.288788095086") != std::string::npos);
    CHECK(run_cli({"eval", "im-weight", "--z", "0", "--q", "0.5", "--out",
                   out.path}) == 0);
    CHECK(slurp(out.path).find("0.878817267313") != std::string::npos);
    CHECK(run_cli({"eval", "sw-weight", "--z", "0.70710678118654752", "--q",
                   "0.5", "--out", out.path}) == 0);
    CHECK(slurp(out.path).find("0.4791785128") != std::string::npos);
}

TEST_CASE("asymptotic tables emit matching csv and json") {
    TempFile js("table.json"), cs("table.csv");
    CHECK(run_cli({"table", "asymptotic-im", "--q", "0.5", "--u", "2", "--n-max",
                   "40", "--format", "json", "--out", js.path}) == 0);
    CHECK(run_cli({"table", "asymptotic-im", "--q", "0.5", "--u", "2", "--n-max",
                   "40", "--format", "csv", "--out", cs.path}) == 0);

    const nlohmann::json j = nlohmann::json::parse(slurp(js.path));
    REQUIRE(j["rows"].size() == 11);  // n = 0, 4, ..., 40
    for (const auto& row : j["rows"]) {
        CHECK(row[1].get<double>() <= row[2].get<double>());  // inside envelope
        CHECK(row[3].get<std::string>() == "PASS");
    }

    std::istringstream is(slurp(cs.path));
    std::string line;
    std::getline(is, line);
    CHECK(line == "n,measured,envelope,status");
    std::size_t idx = 0;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::string n_s, measured_s, envelope_s, status_s;
        std::getline(ls, n_s, ',');
        std::getline(ls, measured_s, ',');
        std::getline(ls, envelope_s, ',');
        std::getline(ls, status_s, ',');
        CHECK(std::stod(n_s) == j["rows"][idx][0].get<double>());
        CHECK(std::stod(measured_s) == j["rows"][idx][1].get<double>());
        CHECK(std::stod(envelope_s) == j["rows"][idx][2].get<double>());
        CHECK(status_s == j["rows"][idx][3].get<std::string>());
        ++idx;
    }
    CHECK(idx == 11);

    TempFile sw("table_sw.csv");
    CHECK(run_cli({"table", "asymptotic-sw", "--q", "0.5", "--u", "1.5",
                   "--n-max", "0", "--format", "csv", "--out", sw.path}) == 0);
    std::istringstream sws(slurp(sw.path));
    int lines = 0;
    while (std::getline(sws, line)) ++lines;
    CHECK(lines == 2);  // header + single trivially passing row
}

TEST_CASE("limit table is monotone and honours injected failures") {
    TempFile ok("limit.csv");
    CHECK(run_cli({"table", "limit-q1", "--z", "1", "--format", "csv", "--out",
                   ok.path}) == 0);
    // q grid deliberately reversed: errors increase, rows fail, exit code 1
    TempFile bad("limit_bad.csv");
    CHECK(run_cli({"table", "limit-q1", "--z", "1", "--q", "0.999", "--q", "0.9",
                   "--format", "csv", "--out", bad.path}) == 1);
    CHECK(slurp(bad.path).find("FAIL") != std::string::npos);
}

TEST_CASE("audit subcommand writes a full report and exits by status") {
    TempFile out("audit.json");
    const int rc = run_cli({"audit", "--q", "0.5", "--n-max", "8", "--out",
                            out.path});
    CHECK(rc == 0);
    const AuditReport r = report_from_json(slurp(out.path));
    CHECK(r.all_passed());
    CHECK(r.q_grid == std::vector<double>{0.5});
    CHECK(!r.checks.empty());
    for (const auto& c : r.checks) CHECK(c.status == CheckStatus::Pass);
}
