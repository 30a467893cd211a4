#include <doctest.h>

#include <cstdlib>
#include <json.hpp>
#include <sstream>

#include "vmp/cli.hpp"
#include "vmp/eval.hpp"

using namespace vmp;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream o, e;
    const int c = run_cli(args, o, e);
    return {c, o.str(), e.str()};
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> v;
    std::istringstream is(s);
    for (std::string l; std::getline(is, l);) v.push_back(l);
    return v;
}

}  // namespace

TEST_CASE("eval") {
    const Run r = run({"eval", "--m", "0", "--p", "2", "--x", "0", "--format", "json"});
    REQUIRE(r.code == kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["value"].get<double>() == doctest::Approx(1.7724538509055160).epsilon(1e-15));
    const Run c = run({"eval", "--m", "-1", "--p", "2", "--x", "4"});
    CHECK(c.code == kExitOk);
    CHECK(lines(c.out).at(1).rfind("-1,2,4,0.25,", 0) == 0);
    // thin wrapper: bit-identical to the library value
    const Run b = run({"eval", "--m", "2", "--p", "2", "--x", "1.5", "--format", "json"});
    CHECK(nlohmann::json::parse(b.out)["value"].get<double>() == eval_vmp(2, 2, 1.5).value);
}

TEST_CASE("exit codes") {
    CHECK(run({"eval", "--m", "-3", "--x", "1"}).code == kExitDomain);
    CHECK(run({"eval", "--x", "1"}).code == kExitUsage);
    CHECK(run({"bogus"}).code == kExitUsage);
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"table", "--count", "1"}).code == kExitUsage);
    CHECK(run({"eval", "--m", "0", "--x", "1", "--format", "xml"}).code == kExitUsage);
    CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("table") {
    const Run r = run({"table", "--m", "0", "--start", "0", "--stop", "2", "--count", "3", "--with-bounds"});
    REQUIRE(r.code == kExitOk);
    const auto l = lines(r.out);
    REQUIRE(l.size() == 4);
    CHECK(l[0] == "x,V,abs_err,g_pi,g_4");
    CHECK(r.out.find("\r") == std::string::npos);
    for (const auto& row : l) CHECK(row.back() != ',');
    const Run j = run({"table", "--m", "0", "--start", "0", "--stop", "2", "--count", "3", "--with-bounds", "--format", "json"});
    const auto arr = nlohmann::json::parse(j.out);
    REQUIRE(arr.size() == 3);
    CHECK(arr[1]["V"].get<double>() == eval_vmp(0, 2, 1).value);
    CHECK(arr[0]["g_4"].get<double>() == 2.0);
    const Run v = run({"table", "--m", "1", "--start", "0.5", "--stop", "5", "--count", "4", "--scale", "geometric",
                       "--with-ratio", "--with-vav", "3"});
    CHECK(lines(v.out).at(0) == "x,V,abs_err,ratio,V_av");
    CHECK(lines(v.out).size() == 5);
}

TEST_CASE("deterministic output") {
    const std::vector<std::string> a{"table", "--m", "1.5", "--p", "3", "--count", "5", "--format", "json"};
    CHECK(run(a).out == run(a).out);
}

TEST_CASE("verify") {
    const Run v0 = run({"verify", "v0", "--format", "json"});
    CHECK(v0.code == kExitOk);
    CHECK(nlohmann::json::parse(v0.out)["ok"] == true);
    const Run r = run({"verify", "ratio", "--m-max", "15"});
    CHECK(r.code == kExitOk);
    const Run r123 = run({"verify", "r123", "--format", "json"});
    CHECK(r123.code == kExitOk);
    CHECK(std::fabs(nlohmann::json::parse(r123.out)["values"]["x0"].get<double>() - 0.2511) < 1e-3);
}

TEST_CASE("certify") {
    const Run k4 = run({"certify", "k4p2", "--format", "json"});
    CHECK(k4.code == kExitOk);
    const auto j = nlohmann::json::parse(k4.out);
    bool y8 = false, m2 = false;
    for (const auto& a : j["anchors"]) {
        if (a["name"] == "L/4 y^8") y8 = a["ok"] && a["actual"] == "101250";
        if (a["name"] == "L/4 m^2") m2 = a["ok"] && a["actual"] == "14400";
    }
    CHECK(y8);
    CHECK(m2);
    for (const auto& c : j["certificates"]) CHECK(c["status"] == "all_coeffs_nonneg");
    CHECK(run({"certify", "generic_k"}).code == kExitOk);
    const Run p3 = run({"certify", "p3k4", "--format", "csv"});
    CHECK(p3.code == kExitOk);
    CHECK(p3.out.find("16875") != std::string::npos);
    CHECK(p3.out.find("5625") != std::string::npos);
}

TEST_CASE("roots and sweep") {
    const Run r = run({"roots", "--m-max", "5"});
    CHECK(r.code == kExitOk);
    CHECK(lines(r.out).size() == 6);
    const Run s = run({"sweep", "--k", "4", "--p", "10", "--m", "1", "--format", "json"});
    CHECK(s.code == kExitOk);
    CHECK(nlohmann::json::parse(s.out)["violations"].size() == 1);
}

TEST_CASE("VMP_TOL override") {
    setenv("VMP_TOL", "garbage", 1);
    CHECK(run({"eval", "--m", "0.5", "--x", "1"}).code == kExitUsage);
    setenv("VMP_TOL", "1e-6", 1);
    CHECK(run({"eval", "--m", "0.5", "--x", "1"}).code == kExitOk);
    unsetenv("VMP_TOL");
}
