// Acceptance run: one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "srone/cli.hpp"
#include "srone/jacobson.hpp"
#include "srone/suite.hpp"

using namespace srone;

namespace {

struct Verdict {
    bool ok = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

SuiteOptions single() {
    SuiteOptions o;
    o.budget = budget_from_env();
    o.threads = 0;
    return o;
}

std::string tally(const std::vector<PropertyReport>& reps, std::uint64_t* instances = nullptr) {
    std::size_t pass = 0, fail = 0, skip = 0;
    std::uint64_t n = 0;
    std::string first_fail;
    for (const auto& r : reps) {
        n += r.instances;
        if (r.outcome == srone::Outcome::pass) ++pass;
        if (r.outcome == srone::Outcome::skipped) ++skip;
        if (r.outcome == srone::Outcome::fail) {
            if (!fail) first_fail = " first failure " + r.theorem + " on " + r.ring;
            ++fail;
        }
    }
    if (instances) *instances = n;
    return std::to_string(pass) + " pass, " + std::to_string(fail) + " fail, " + std::to_string(skip) + " skipped, " +
           std::to_string(n) + " instances" + first_fail;
}

Verdict sjl() {
    auto t0 = Clock::now();
    auto reps = run_suite(select_rings({"M(2,Z/2)", "M(2,Z/3)"}), {"sjl"}, single());
    double s = seconds_since(t0);
    bool ok = !any_failed(reps) && s < 10.0 && reps.size() == 6;
    for (const auto& r : reps) {
        std::uint64_t want = r.ring == "M(2,Z/2)" ? 4096 : 531441;
        ok = ok && r.outcome == srone::Outcome::pass && r.instances == want;
    }
    return {ok, tally(reps) + ", " + std::to_string(s) + " s"};
}

Verdict sreg_asymmetry() {
    auto t0 = Clock::now();
    RingPtr m = construct_ring("M(2,Z/4)");
    RingAnalysis an(m);
    Element a = m->parse("[[1,1],[0,0]]"), b = m->parse("[[1,0],[0,0]]"), x = m->parse("[[0,1],[1,0]]");
    CircleContext c{m.get(), x};
    Element r = c(a, b), l = c(b, a);
    std::size_t sreg = 0;
    for (Element y = 0; y < m->order(); ++y) sreg += an.strongly_regular(y);
    double s = seconds_since(t0);
    bool ok = m->is_idempotent(r) && an.strongly_regular(r) && !an.strongly_regular(l) && s < 1.0;
    return {ok, "a+b-axb = " + m->format(r) + ", a+b-bxa = " + m->format(l) + ", " + std::to_string(sreg) +
                    " strongly regular elements, " + std::to_string(s) + " s"};
}

Verdict det_identity() {
    auto t0 = Clock::now();
    std::mt19937_64 rng(37);
    std::size_t bad = 0;
    for (int i = 0; i < 10000; ++i) {
        IntMatrix A = random_matrix(3, rng, 9), B = random_matrix(3, rng, 9), X = random_matrix(3, rng, 9);
        if (det_exact(A + B - A * X * B) != det_exact(A + B - B * X * A)) ++bad;
    }
    RingPtr m = construct_ring("M(2,Z/2)");
    const Ring& S = *m->matrix_shape()->base;
    std::size_t bad_mod = 0, triples = 0;
    for (Element a = 0; a < 16; ++a)
        for (Element b = 0; b < 16; ++b)
            for (Element x = 0; x < 16; ++x) {
                ++triples;
                Element l = m->sub(m->add(a, b), m->mul(a, x, b)), r = m->sub(m->add(a, b), m->mul(b, x, a));
                if (detail::det_base(S, m->entries(l), 2) != detail::det_base(S, m->entries(r), 2)) ++bad_mod;
            }
    auto trace = find_counterexamples("trace-mismatch");
    double s = seconds_since(t0);
    bool ok = bad == 0 && bad_mod == 0 && triples == 4096 && trace.found && trace.verified && s < 30.0;
    std::string w;
    for (const auto& [k, v] : trace.payload) w += " " + k + "=" + v;
    return {ok, std::to_string(bad) + " integer and " + std::to_string(bad_mod) + " mod-2 mismatches, trace witness" + w +
                    ", " + std::to_string(s) + " s"};
}

Verdict symmetry() {
    auto reps = run_suite(default_registry(), {"T3.1-*"}, single());
    bool ok = !any_failed(reps);
    for (const auto& r : reps) ok = ok && r.outcome == srone::Outcome::pass;
    return {ok, tally(reps)};
}

Verdict scalars() {
    auto t0 = Clock::now();
    bool ok = true;
    int certs = 0;
    for (int n = -20; n <= 20; ++n) {
        IntVerdict v = sr1_int(IntMatrix::diag({Integer(n)}));
        bool expect = n == 0 || n == 1 || n == -1;
        ok = ok && v.sr == expect;
        if (!expect) {
            ok = ok && v.refutation && v.refutation->residue != 1 && v.refutation->residue != v.refutation->modulus - 1;
            ++certs;
        }
    }
    double s = seconds_since(t0);
    return {ok && certs == 38 && s < 1.0, std::to_string(certs) + " refutation certificates, " + std::to_string(s) + " s"};
}

Verdict named_vectors() {
    auto t0 = Clock::now();
    bool d70 = det_exact(IntMatrix::diag({7, 0})) == 0 && sr1_int(IntMatrix::diag({7, 0})).sr;
    bool e29 = sr1_int(IntMatrix::diag({2, 0})).sr && sr1_int(IntMatrix::diag({0, 2})).sr && !sr1_int(IntMatrix::diag({2, 2})).sr;
    RingPtr m = construct_ring("M(2,Z/4)");
    Element two_e11 = m->parse("[[2,0],[0,0]]");
    bool e510 = has_sr1(m, two_e11) && !RingAnalysis(m).regular(two_e11);
    IntMatrix c = IntMatrix::unit(2, 2, 1, 2), a = IntMatrix::unit(2, 1, 2), b = IntMatrix::unit(2, 1, 1);
    IntVerdict ab = sr1_int(c - a * b), ba = sr1_int(c - b * a);
    bool e611 = ab.det == 0 && ba.det == 2 && ab.sr && !ba.sr;
    BlockAudit au = audit_block_example();
    bool e613 = au.criteria_agree && au.sr_one == "M^T (block)" && au.discrepancy;
    double s = seconds_since(t0);
    std::ostringstream d;
    d << "diag(7,0) " << d70 << ", diag(2,0)/diag(0,2)/diag(2,2) " << e29 << ", 2E11 " << e510 << ", dets (" << ab.det << "," << ba.det
      << ") " << e611 << ", audit orientation " << au.sr_one << " discrepancy " << au.discrepancy << ", " << s << " s";
    return {d70 && e29 && e510 && e611 && e613 && s < 1.0, d.str()};
}

Verdict variant() {
    auto t0 = Clock::now();
    VariantRefutation r = variant_refute(IntMatrix::diag({7, 0}), IntMatrix::diag({2, 1}), 10, 10000);
    double s = seconds_since(t0);
    bool ok = !r.unit_witness && !r.idempotent_witness && r.unit_congruence && r.idempotent_congruence &&
              r.samples == 10000 && s < 30.0;
    return {ok, std::to_string(r.unit_candidates) + " unimodular and " + std::to_string(r.idempotent_candidates) +
                    " idempotent candidates, " + std::to_string(r.samples) + " samples, " + std::to_string(s) + " s"};
}

Verdict witness_pipeline() {
    std::mt19937_64 rng(8);
    const IntMatrix I = IntMatrix::identity(3);
    int certified = 0;
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
        IntMatrix A;
        if (i % 3 == 0) {
            A = random_unimodular(3, rng);
        } else {
            std::uniform_int_distribution<int> d(-9, 9);
            A = random_unimodular(3, rng) * IntMatrix::diag({Integer(d(rng)), Integer(d(rng)), 0}) * random_unimodular(3, rng);
        }
        IntMatrix X = random_matrix(3, rng, 5);
        auto t0 = Clock::now();
        IntMatrix B = int_witness(A, X);
        bool ok = abs(det_exact(A + (I - A * X) * B)) == 1;
        worst = std::max(worst, seconds_since(t0));
        certified += ok;
    }
    return {certified == 100 && worst < 1.0,
            std::to_string(certified) + "/100 certified, slowest " + std::to_string(worst) + " s"};
}

Verdict theorem_suites() {
    auto t0 = Clock::now();
    auto reps = run_suite(default_registry(),
                          {"T2.*", "C2.*", "E2.5F", "T4.*", "C4.*", "E4.2B", "T5.*", "C5.*", "E5.3", "R5.spi", "T6.*",
                           "C6.*", "L6.*"},
                          single());
    double s = seconds_since(t0);
    return {!any_failed(reps) && s < 300.0, tally(reps) + ", " + std::to_string(s) + " s"};
}

Verdict certificates() {
    // extra certificate traffic on top of everything above
    RingPtr m = construct_ring("M(2,Z/3)");
    for (Side side : {Side::right, Side::left})
        for (Element a = 0; a < m->order(); ++a)
            for (Element x = 0; x < m->order(); x += 4) sr1_witness(m, a, x, side);
    RingPtr z4 = make_modular(4);
    RingAnalysis an(z4);
    for (Element u : z4->units())
        for (Element q = 0; q < 4; ++q)
            for (Element p = 0; p < 4; ++p)
                for (Element r = 0; r < 4; ++r) banachiewicz(an, {u, q, p, r}, ElementClass::unit);
    auto checked = audit().checked.load(), failed = audit().failed.load();
    return {checked > 0 && failed == 0, std::to_string(checked) + " re-verified, " + std::to_string(failed) + " failed"};
}

Verdict determinism() {
    auto once = [] {
        std::ostringstream out, err;
        int code = cli::run_command({"srone", "verify", "--theorems", "all", "--rings", "default", "--deterministic"}, out, err);
        return std::pair{code, out.str()};
    };
    auto a = once(), b = once();
    bool ok = a.first == 0 && b.first == 0 && a.second == b.second && !a.second.empty();
    return {ok, std::to_string(a.second.size()) + " bytes, exit codes " + std::to_string(a.first) + "/" +
                    std::to_string(b.first)};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"super Jacobson lemma on M(2,Z/2) and M(2,Z/3)", sjl},
        {"strongly regular asymmetry in M(2,Z/4)", sreg_asymmetry},
        {"determinant identity and trace mismatch", det_identity},
        {"right/left symmetry for all five variants", symmetry},
        {"integer scalars", scalars},
        {"named integer-matrix vectors", named_vectors},
        {"variant refutation for diag(7,0)", variant},
        {"integer witness pipeline", witness_pipeline},
        {"theorem suites on the default registry", theorem_suites},
        {"certificate re-verification", certificates},
        {"deterministic verify reports", determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.ok;
        std::printf("%s %zu %s: %s\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
