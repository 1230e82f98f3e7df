#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "srone/suite.hpp"

using namespace srone;

namespace {

const PropertyReport& find(const std::vector<PropertyReport>& reps, const std::string& theorem, const std::string& ring) {
    for (const auto& r : reps)
        if (r.theorem == theorem && r.ring == ring) return r;
    throw std::runtime_error("no report for " + theorem + " on " + ring);
}

SuiteOptions one_thread() {
    SuiteOptions o;
    o.threads = 1;
    return o;
}

}  // namespace

TEST(Registry, Contents) {
    auto reg = default_registry();
    std::set<std::string> ids;
    for (const auto& d : reg) ids.insert(d.id);
    EXPECT_EQ(ids.size(), reg.size());
    for (const char* id : {"Z/2", "Z/12", "M(2,Z/2)", "M(2,Z/3)", "M(2,Z/4)", "T(2,Z/2)", "T(2,Z/3)", "Z/2 x Z/4",
                           "M(2,Z/2) x Z/2", "op(M(2,Z/4))", "corner(M(2,Z/2),[[1,0],[0,0]])", "M(n,Z)"})
        EXPECT_TRUE(ids.count(id)) << id;
    std::size_t corners = std::count_if(reg.begin(), reg.end(), [](const auto& d) { return d.id.rfind("corner(", 0) == 0; });
    EXPECT_EQ(corners, 7u);
    for (const auto& d : reg) {
        if (d.integer) continue;
        if (d.id.rfind("M(2,Z/", 0) == 0 && d.id.find(" x ") == std::string::npos) { EXPECT_TRUE(d.ring->has_involution()) << d.id; }
    }
    for (const auto& d : reg)
        if (d.id == "M(2,Z/2)") { EXPECT_EQ(d.ring->order(), 16u); }
}

TEST(Selectors, AliasesAndFamilies) {
    EXPECT_EQ(resolve_theorem_ids({"sjl"}), (std::vector<std::string>{"L3.2-unit", "L3.2-reg", "L3.2-ureg"}));
    EXPECT_EQ(resolve_theorem_ids({"prop36", "circle"}), (std::vector<std::string>{"P3.6", "R3.5-circle"}));
    auto t2 = resolve_theorem_ids({"T2.*"});
    EXPECT_TRUE(std::find(t2.begin(), t2.end(), "T2.4D") != t2.end());
    EXPECT_TRUE(std::find(t2.begin(), t2.end(), "T3.7") == t2.end());
    EXPECT_THROW(resolve_theorem_ids({"T9.9"}), ConfigError);
    EXPECT_THROW(resolve_theorem_ids({"Q*"}), ConfigError);
}

TEST(RunSuite, L32UnitOnM2Z2) {
    auto reps = run_suite(default_registry(), {"L3.2-unit"}, one_thread());
    for (const auto& r : reps) EXPECT_EQ(r.outcome, Outcome::pass) << r.ring;
    EXPECT_EQ(find(reps, "L3.2-unit", "M(2,Z/2)").instances, 4096u);
    EXPECT_TRUE(std::is_sorted(reps.begin(), reps.end(), [](const auto& a, const auto& b) {
        return std::tie(a.theorem, a.ring) < std::tie(b.theorem, b.ring);
    }));
}

TEST(RunSuite, RadicalCrossCheck) {
    auto reps = run_suite(default_registry(), {"T2.6"}, one_thread());
    EXPECT_FALSE(reps.empty());
    for (const auto& r : reps) EXPECT_EQ(r.outcome, Outcome::pass) << r.ring;
}

TEST(RunSuite, SregCounterexampleExhibitsTriple) {
    auto reps = run_suite(default_registry(), {"L3.2-sreg-counterexample"}, one_thread());
    const auto& r = find(reps, "L3.2-sreg-counterexample", "M(2,Z/4)");
    EXPECT_EQ(r.outcome, Outcome::pass);
    ASSERT_EQ(r.counterexample.size(), 3u);
    EXPECT_EQ(r.counterexample[0], (std::pair<std::string, std::string>{"a", "[[1,1],[0,0]]"}));
}

TEST(RunSuite, OrderLimitsSkip) {
    auto reps = run_suite(default_registry(), {"R3.5-circle"}, one_thread());
    const auto& r = find(reps, "R3.5-circle", "M(2,Z/4)");
    EXPECT_EQ(r.outcome, Outcome::skipped);
    EXPECT_NE(r.outcome_text().find("exceeds"), std::string::npos);
}

TEST(RunSuite, BudgetExhaustionSkips) {
    SuiteOptions o = one_thread();
    o.budget = 10;
    auto reps = run_suite(select_rings({"Z/6"}), {"T2.8"}, o);
    ASSERT_EQ(reps.size(), 1u);
    EXPECT_EQ(reps[0].outcome, Outcome::skipped);
    EXPECT_EQ(reps[0].instances, 10u);
}

TEST(RunSuite, ThreadCountDoesNotChangeReports) {
    auto reg = select_rings({"Z/12", "M(2,Z/2)", "T(2,Z/3)", "M(n,Z)"});
    SuiteOptions four = one_thread();
    four.threads = 4;
    auto a = to_json(run_suite(reg, {"T2.*", "T4.*", "E2.9"}, one_thread()), false);
    auto b = to_json(run_suite(reg, {"T2.*", "T4.*", "E2.9"}, four), false);
    EXPECT_EQ(a.dump(), b.dump());
}

TEST(Report, JsonShape) {
    PropertyReport r;
    r.theorem = "T2.6";
    r.ring = "Z/4";
    r.instances = 16;
    r.outcome = Outcome::skipped;
    r.reason = "why not";
    r.elapsed_ms = 1.5;
    auto j = to_json(r);
    std::vector<std::string> keys;
    for (auto& [k, v] : j.items()) keys.push_back(k);
    EXPECT_EQ(keys, (std::vector<std::string>{"theorem", "ring", "instances", "outcome", "counterexample", "elapsed_ms"}));
    EXPECT_EQ(j["outcome"], "skipped(why not)");
    EXPECT_TRUE(j["counterexample"].is_null());
    EXPECT_EQ(to_json(r, false)["elapsed_ms"], 0.0);
}

TEST(Replay, ReproducesInjectedFailure) {
    // a deliberately false claim: every element of Z/6 is a unit
    TheoremCheck bogus;
    bogus.id = "bogus";
    bogus.depth = 1;
    bogus.slots = {{"a", SlotRing::self, [](const RingEnv& env, const std::vector<Element>&) { return env.elements(); }}};
    bogus.body = [](const RingEnv& env, const std::vector<Element>& v) { return env.unit(v[0]); };
    RingEnv env(make_modular(6));
    PropertyReport rep;
    detail::run_finite(bogus, env, kDefaultBudget, rep);
    EXPECT_EQ(rep.outcome, Outcome::fail);
    ASSERT_EQ(rep.counterexample.size(), 1u);
    EXPECT_EQ(rep.counterexample[0].second, "0");
    EXPECT_TRUE(replay(bogus, env, rep.counterexample));
    EXPECT_FALSE(replay(bogus, env, {{"a", "1"}}));
}

TEST(Counterexamples, AllKindsFoundAndVerified) {
    for (const auto& kind : counterexample_kinds()) {
        auto r = find_counterexamples(kind);
        EXPECT_TRUE(r.found) << kind;
        EXPECT_TRUE(r.verified) << kind;
    }
    auto p = find_counterexamples("sreg-product");
    EXPECT_EQ(p.ring, "M(2,Z/4)");
    EXPECT_EQ(p.payload[2].second, "[[2,1],[0,0]]");
    EXPECT_EQ(find_counterexamples("trace-mismatch").ring, "M(2,Z/2)");
    EXPECT_THROW(find_counterexamples("nope"), ConfigError);
}

TEST(IntegerChecks, Pass) {
    auto reps = run_suite(select_rings({"M(n,Z)"}), {"E2.5B", "E2.9", "E6.11", "E6.13-audit", "C7.5-diagonal"}, one_thread());
    EXPECT_EQ(reps.size(), 5u);
    for (const auto& r : reps) EXPECT_EQ(r.outcome, Outcome::pass) << r.theorem;
    const auto& audit_rep = find(reps, "E6.13-audit", "M(n,Z)");
    bool flagged = false;
    for (const auto& [k, v] : audit_rep.counterexample) flagged |= k == "discrepancy" && v == "true";
    EXPECT_TRUE(flagged);
}
