#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include "srone/cli.hpp"

using namespace srone;
using Json = nlohmann::ordered_json;

namespace {

struct Run {
    int code;
    std::string out, err;
    Json json() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "srone");
    std::ostringstream out, err;
    int code = cli::run_command(args, out, err);
    return {code, out.str(), err.str()};
}

std::string sample(const char* name) { return std::string(SRONE_SAMPLES_DIR) + "/" + name; }

}  // namespace

TEST(Cli, CheckSr) {
    auto r = run({"check", "sr", "Z/6", "--element", "2"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.json(), Json::parse(R"({"sr": true, "side": "right"})"));
    auto l = run({"check", "sr", "M(2,Z/4)", "--element", "#17", "--side", "left", "--variant", "unit"});
    EXPECT_EQ(l.code, 0);
    EXPECT_EQ(l.json()["side"], "left");
    EXPECT_EQ(l.json()["sr"], has_sr1(construct_ring("M(2,Z/4)"), 17, Side::left, Variant::unit));
}

TEST(Cli, IndexAndLiteralAgree) {
    auto a = run({"classify", "M(2,Z/2)", "--element", "#8"});
    auto b = run({"classify", "M(2,Z/2)", "--element", "[[1,0],[0,0]]"});
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.json()["idempotent"], true);
}

TEST(Cli, IntmatCheck) {
    auto r = run({"intmat", "check", "--matrix", sample("diag2_0.json")});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.json(), Json::parse(R"({"sr": "yes", "det": "0"})"));
    auto big = run({"intmat", "check", "--matrix", sample("big3.json")});
    EXPECT_EQ(big.json()["sr"], "yes");
    auto no = run({"intmat", "check", "--matrix", sample("diag2_2.json")});
    EXPECT_EQ(no.json()["sr"], "no");
    EXPECT_EQ(no.json()["refutation"]["modulus"], "65");
}

TEST(Cli, IntmatWitness) {
    auto r = run({"intmat", "witness", "--matrix", sample("diag7_0.json"), "--x", sample("x_swap.json")});
    EXPECT_EQ(r.code, 0);
    auto c = r.json()["certificate"];
    for (const char* k : {"mode", "side", "variant", "a", "t-or-x", "b", "u", "u_inv"}) EXPECT_TRUE(c.contains(k)) << k;
    auto no = run({"intmat", "witness", "--matrix", sample("diag2_2.json"), "--x", sample("x_swap.json")});
    EXPECT_EQ(no.code, 1);
}

TEST(Cli, IntmatAudit) {
    auto r = run({"intmat", "audit-6-12"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.json()["sr_one"], "M^T (block)");
    EXPECT_EQ(r.json()["discrepancy"], true);
}

TEST(Cli, Witness) {
    auto r = run({"witness", "Z/6", "--element", "2", "--x", "1"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.json()["certificate"]["b"], "1");
    auto p = run({"witness", "Z/6", "--element", "3", "--t", "4"});
    EXPECT_EQ(p.code, 0);
    EXPECT_EQ(p.json()["certificate"]["mode"], "pair");
}

TEST(Cli, VerifyDefault) {
    auto r = run({"verify", "--theorems", "L3.2-unit", "--rings", "default", "--deterministic"});
    EXPECT_EQ(r.code, 0);
    auto j = r.json();
    ASSERT_TRUE(j.is_array());
    for (const auto& rep : j) EXPECT_EQ(rep["outcome"], "pass");
}

TEST(Cli, VerifyIsByteIdentical) {
    std::vector<std::string> args{"verify", "--theorems", "T2.*,sjl", "--rings", "Z/12,M(2,Z/2),T(2,Z/2)", "--deterministic"};
    EXPECT_EQ(run(args).out, run(args).out);
}

TEST(Cli, TextFormat) {
    auto r = run({"verify", "--theorems", "T2.6", "--rings", "Z/4", "--format", "text"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("T2.6"), std::string::npos);
    EXPECT_NE(r.out.find("pass"), std::string::npos);
    auto before = run({"--format", "text", "ring", "Z/6"});
    EXPECT_NE(before.out.find("order: 6"), std::string::npos);
}

TEST(Cli, ConfigErrors) {
    EXPECT_EQ(run({"ring", "M(2 Z/4"}).code, 2);
    EXPECT_NE(run({"ring", "M(2 Z/4"}).err.find("offset 4"), std::string::npos);
    EXPECT_EQ(run({"verify", "--theorems", "T9.9"}).code, 2);
    EXPECT_EQ(run({"verify", "--theorems", "T2.6", "--find", "trace-mismatch"}).code, 2);
    EXPECT_EQ(run({"check", "sr", "Z/6"}).code, 2);
    EXPECT_EQ(run({"check", "sr", "Z/6", "--element", "#9"}).code, 2);
    EXPECT_EQ(run({"check", "sr", "Z/6", "--element", "2", "--bogus"}).code, 2);
    EXPECT_EQ(run({"witness", "Z/6", "--element", "2", "--x", "1", "--t", "1"}).code, 2);
    EXPECT_EQ(run({"intmat", "check", "--matrix", "/nonexistent.json"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
}

TEST(Cli, BudgetFromEnvironment) {
    setenv("SRONE_BUDGET", "5", 1);
    auto r = run({"verify", "--theorems", "T2.8", "--rings", "Z/6"});
    unsetenv("SRONE_BUDGET");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.json()[0]["outcome"], "skipped(budget of 5 instances exhausted)");
}

TEST(Cli, FindCounterexample) {
    auto r = run({"verify", "--find", "nonregular-sr1"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.json()["payload"]["a"], "[[2,0],[0,0]]");
}
