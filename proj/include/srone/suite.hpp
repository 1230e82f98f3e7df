#pragma once

// Theorem checks over a registry of small finite rings plus integer-matrix
// vectors, with deterministic reports and replayable counterexamples.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "json.hpp"
#include "srone/certificate.hpp"
#include "srone/classify.hpp"
#include "srone/error.hpp"
#include "srone/intmat.hpp"
#include "srone/jacobson.hpp"
#include "srone/ring.hpp"
#include "srone/ring_env.hpp"
#include "srone/ring_spec.hpp"
#include "srone/stable_range.hpp"

namespace srone {

inline constexpr std::uint64_t kDefaultBudget = 100000000;

/// Named element literals.
using Payload = std::vector<std::pair<std::string, std::string>>;

struct RingDescriptor {
    std::string id;
    RingPtr ring;          // null for the integer pseudo-ring
    bool integer = false;  // M(n,Z)
};

inline const char* kIntegerRingId = "M(n,Z)";

enum class Outcome { pass, fail, skipped };

struct PropertyReport {
    std::string theorem;
    std::string ring;
    std::uint64_t instances = 0;
    Outcome outcome = Outcome::pass;
    std::string reason;  // skipped only
    Payload counterexample;
    double elapsed_ms = 0;

    std::string outcome_text() const {
        switch (outcome) {
            case Outcome::pass: return "pass";
            case Outcome::fail: return "fail";
            case Outcome::skipped: return "skipped(" + reason + ")";
        }
        return "?";
    }
};

// ---------------------------------------------------------------------------
// Check definitions

/// Where a slot's elements live.
enum class SlotRing { self, base };

struct Slot {
    std::string name;
    SlotRing ring = SlotRing::self;
    std::function<std::vector<Element>(const RingEnv&, const std::vector<Element>& prefix)> domain;
};

struct TheoremCheck {
    std::string id;
    bool integer = false;
    /// quantifier depth; 3 or more limits to order 256, 2 to order 4096
    int depth = 1;
    std::uint32_t max_order = 0;  // overrides the depth rule when nonzero
    /// empty when applicable, otherwise the skip reason
    std::function<std::string(const RingDescriptor&)> applicable;

    // finite checks: for every tuple over the slots, body holds
    std::vector<Slot> slots;
    std::function<bool(const RingEnv&, const std::vector<Element>&)> body;
    // existential finite checks: pass with the witness as payload
    std::function<std::optional<Payload>(const RingEnv&, std::uint64_t& instances)> search;

    // integer checks
    struct IntResult {
        std::uint64_t instances = 0;
        bool ok = true;
        Payload payload;
    };
    std::function<IntResult(std::uint64_t budget)> run_int;
    /// true when the payload reproduces a violation
    std::function<bool(const Payload&)> replay_int;
};

namespace detail {

inline Slot all_slot(std::string name) {
    return {std::move(name), SlotRing::self, [](const RingEnv& env, const std::vector<Element>&) { return env.elements(); }};
}

inline Slot list_slot(std::string name, const std::vector<Element>& (RingEnv::*list)() const) {
    return {std::move(name), SlotRing::self,
            [list](const RingEnv& env, const std::vector<Element>&) { return (env.*list)(); }};
}

inline Slot units_slot(std::string name) {
    return {std::move(name), SlotRing::self, [](const RingEnv& env, const std::vector<Element>&) { return env.ring().units(); }};
}

inline Slot base_slot(std::string name) {
    return {std::move(name), SlotRing::base,
            [](const RingEnv& env, const std::vector<Element>&) { return env.base().elements(); }};
}

/// eRe, fRe, fRf and friends, with e taken from prefix[0].
inline Slot peirce_slot(std::string name, bool left_e, bool right_e) {
    return {std::move(name), SlotRing::self, [left_e, right_e](const RingEnv& env, const std::vector<Element>& p) {
                Element e = p[0], f = env.complement(e);
                return env.block(left_e ? e : f, right_e ? e : f);
            }};
}

inline std::string needs_full_matrix(const RingDescriptor& d, bool commutative_base) {
    auto shape = d.ring->matrix_shape();
    if (!shape || shape->triangular || d.ring->kind() != RingKind::matrix) return "not a full matrix ring";
    if (commutative_base && !shape->base->commutative()) return "base ring is not commutative";
    return "";
}

inline Element mat2(const Ring& R, Element a, Element b, Element c, Element d) {
    Element e[] = {a, b, c, d};
    return R.from_entries(e);
}

/// Determinant over a commutative base by cofactor expansion.
inline Element det_base(const Ring& S, const std::vector<Element>& m, std::size_t k) {
    if (k == 1) return m[0];
    Element acc = 0;
    for (std::size_t j = 0; j < k; ++j) {
        std::vector<Element> minor;
        for (std::size_t r = 1; r < k; ++r)
            for (std::size_t c = 0; c < k; ++c)
                if (c != j) minor.push_back(m[r * k + c]);
        Element term = S.mul(m[j], det_base(S, minor, k - 1));
        acc = (j % 2 == 0) ? S.add(acc, term) : S.sub(acc, term);
    }
    return acc;
}

inline Element trace_base(const Ring& S, const std::vector<Element>& m, std::size_t k) {
    Element acc = 0;
    for (std::size_t i = 0; i < k; ++i) acc = S.add(acc, m[i * k + i]);
    return acc;
}

inline Element transpose(const Ring& R, Element a) {
    auto m = R.entries(a);
    std::size_t k = R.matrix_shape()->k;
    std::vector<Element> t(m.size());
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) t[j * k + i] = m[i * k + j];
    return R.from_entries(t);
}

inline Element power(const Ring& R, Element a, std::uint32_t n) {
    Element p = R.one();
    for (std::uint32_t i = 0; i < n; ++i) p = R.mul(p, a);
    return p;
}

inline Element form3(const Ring& R, Element a, Element b, Element x, Side side) {
    Element m = side == Side::right ? R.mul(R.mul(a, x), b) : R.mul(R.mul(b, x), a);
    return R.sub(R.add(a, b), m);
}

inline bool same_all(std::initializer_list<bool> v) {
    return std::all_of(v.begin(), v.end(), [&](bool b) { return b == *v.begin(); });
}

/// a in a E b with a b = e, b a = g, for idempotents e, g.
inline std::optional<std::pair<Element, Element>> iso_pair(const RingEnv& env, Element e, Element g) {
    const Ring& R = env.ring();
    auto eRg = env.block(e, g), gRe = env.block(g, e);
    for (Element a : eRg)
        for (Element b : gRe)
            if (R.mul(a, b) == e && R.mul(b, a) == g) return std::pair{a, b};
    return std::nullopt;
}

// --- finite checks ----------------------------------------------------------

inline void add_section2(std::vector<TheoremCheck>& out) {
    TheoremCheck t22;
    t22.id = "T2.2";
    t22.depth = 3;
    t22.slots = {all_slot("a")};
    t22.body = [](const RingEnv& env, const std::vector<Element>& v) {
        const Ring& R = env.ring();
        Element a = v[0];
        const auto& aR = env.right_ideal(a);
        auto some_b = [&](auto&& unit_of) {
            for (Element b = 0; b < R.order(); ++b)
                if (env.unit(unit_of(b))) return true;
            return false;
        };
        bool c1 = env.sr(a);
        // (2) over 2-generated right ideals K
        bool c2 = true;
        for (const auto& K : env.two_generated_right_ideals()) {
            bool comax = false;
            for (Element w = 0; w < R.order() && !comax; ++w)
                comax = aR[w] && K[R.sub(R.one(), w)];
            if (!comax) continue;
            bool found = false;
            for (Element k = 0; k < R.order() && !found; ++k) found = K[k] && env.unit(R.add(a, k));
            if (!found) {
                c2 = false;
                break;
            }
        }
        bool c3 = true;
        for (Element x = 0; x < R.order() && c3; ++x)
            c3 = some_b([&](Element b) { return form3(R, a, b, x, Side::right); });
        bool c4 = true, c5 = true;
        for (Element c = 0; c < R.order(); ++c) {
            bool hyp4 = false, hyp5 = aR[R.sub(R.one(), c)];
            for (Element w = 0; w < R.order() && !hyp4; ++w) hyp4 = aR[w] && env.unit(R.add(w, c));
            if (!hyp4 && !hyp5) continue;
            bool concl = some_b([&](Element b) { return R.add(a, R.mul(c, b)); });
            if (hyp4 && !concl) c4 = false;
            if (hyp5 && !concl) c5 = false;
        }
        return same_all({c1, c2, c3, c4, c5});
    };
    out.push_back(t22);

    TheoremCheck c23;
    c23.id = "C2.3";
    c23.depth = 3;
    c23.slots = {all_slot("a")};
    c23.body = [](const RingEnv& env, const std::vector<Element>& v) {
        const Ring& R = env.ring();
        Element a = v[0];
        const auto& aR = env.right_ideal(a);
        bool hyp = true;
        for (Element t = 0; t < R.order() && hyp; ++t) {
            if (!env.comaximal(a, t)) continue;
            const auto& tR = env.right_ideal(t);
            bool found = false;
            for (Element f : R.idempotents())
                if (aR[f] && tR[R.sub(R.one(), f)]) {
                    found = true;
                    break;
                }
            hyp = found;
        }
        if (env.all_suitable_in(a) && !hyp) return false;
        if (!hyp) return true;
        auto some_b = [&](Element c) {
            for (Element b = 0; b < R.order(); ++b)
                if (env.unit(R.add(a, R.mul(c, b)))) return true;
            return false;
        };
        bool c6 = true, c7 = true;
        for (Element x = 0; x < R.order(); ++x) {
            Element ax = R.mul(a, x);
            Element e = R.sub(R.one(), ax);
            if (R.is_idempotent(ax) && !some_b(e)) c6 = false;
            if (R.is_idempotent(e) && !some_b(e)) c7 = false;
        }
        return same_all({env.sr(a), c6, c7});
    };
    out.push_back(c23);

    TheoremCheck t24a;
    t24a.id = "T2.4A";
    t24a.depth = 3;
    t24a.slots = {all_slot("a")};
    t24a.body = [](const RingEnv& env, const std::vector<Element>& v) {
        const Ring& R = env.ring();
        Element a = v[0];
        bool rhs = true;
        for (Element t = 0; t < R.order() && rhs; ++t) {
            if (!env.comaximal(a, t)) continue;
            bool found = false;
            for (Element y = 0; y < R.order() && !found; ++y) found = env.sr(R.add(a, R.mul(t, y)));
            rhs = found;
        }
        return env.sr(a) == rhs;
    };
    out.push_back(t24a);

    TheoremCheck t24b;
    t24b.id = "T2.4B";
    t24b.depth = 3;
    t24b.slots = {all_slot("a"), units_slot("u"), units_slot("v")};
    t24b.body = [](const RingEnv& env, const std::vector<Element>& v) {
        return !env.sr(v[0]) || env.sr(env.ring().mul(env.ring().mul(v[1], v[0]), v[2]));
    };
    out.push_back(t24b);

    TheoremCheck t24c;
    t24c.id = "T2.4C";
    t24c.depth = 2;
    t24c.slots = {all_slot("a")};
    t24c.body = [](const RingEnv& env, const std::vector<Element>& v) {
        const Ring& R = env.ring();
        Element a = v[0];
        bool one_sided = false;
        for (Element x = 0; x < R.order() && !one_sided; ++x)
            one_sided = R.mul(a, x) == R.one() || R.mul(x, a) == R.one();
        return !one_sided || env.sr(a) == env.unit(a);
    };
    out.push_back(t24c);

    TheoremCheck t24d;
    t24d.id = "T2.4D";
    t24d.depth = 3;
    t24d.slots = {list_slot("J", &RingEnv::ideal_generators), all_slot("a")};
    t24d.body = [](const RingEnv& env, const std::vector<Element>& v) {
        const auto& q = env.quotient(v[0]);
        if (q.in_radical && !q.reflects_units) return false;
        bool s = env.sr(v[1]);
        bool sq = q.env->sr(q.env->ring().project(v[1]));
        if (s && !sq) return false;
        return !q.reflects_units || s == sq;
    };
    out.push_back(t24d);

    TheoremCheck e25f;
    e25f.id = "E2.5F";
    e25f.depth = 2;
    e25f.applicable = [](const RingDescriptor& d) -> std::string {
        if (!d.ring->commutative()) return "base ring is not commutative";
        std::uint64_t n = d.ring->order();
        if (n * n * n * n > RingEnv::kMatrix2Limit) return "M(2,R) exceeds the table limit";
        return "";
    };
    e25f.slots = {all_slot("a"), all_slot("b")};
    e25f.body = [](const RingEnv& env, const std::vector<Element>& v) {
        Element a = v[0], b = v[1];
        if (!env.comaximal(a, b) || !(env.sr(a) || env.sr(b))) return true;
        const RingEnv& M = *env.matrix2();
        return M.an().clean(mat2(M.ring(), a, b, 0, 0));
    };
    out.push_back(e25f);

    TheoremCheck t26;
    t26.id = "T2.6";
    t26.depth = 2;
    t26.slots = {all_slot("a"), all_slot("b")};
    t26.body = [](const RingEnv& env, const std::vector<Element>& v) {
        const Ring& R = env.ring();
        Element a = v[0], b = v[1];
        bool rad = env.an().in_radical(b);
        if (rad && env.sr(a) != env.sr(R.add(a, b))) return false;
        if (a != 0) return true;
        bool plus_units = true;
        for (Element u : R.units())
            if (!env.unit(R.add(b, u))) {
                plus_units = false;
                break;
            }
        return rad == (env.sr(b) && plus_units);
    };
    out.push_back(t26);

    TheoremCheck t27;
    t27.id = "T2.7";
    t27.depth = 3;
    t27.slots = {all_slot("a")};
    t27.body = [](const RingEnv& env, const std::vector<Element>& v) {
        const Ring& R = env.ring();
        Element a = v[0];
        for (Element x = 0; x < R.order(); ++x) {
            bool found = false;
            for (Element u : R.units())
                if (env.unit(R.sub(x, R.unit_inverse(u))) && env.sr(R.sub(a, u))) {
                    found = true;
                    break;
                }
            if (!found) return true;  // hypothesis fails
        }
        return env.sr(a);
    };
    out.push_back(t27);

    TheoremCheck t28;
    t28.id = "T2.8";
    t28.depth = 2;
    t28.slots = {all_slot("a"), all_slot("b")};
    t28.body = [](const RingEnv& env, const std::vector<Element>& v) {
        if (env.unit(v[0]) && !env.sr(v[0])) return false;
        return !(env.sr(v[0]) && env.sr(v[1])) || env.sr(env.ring().mul(v[0], v[1]));
    };
    out.push_back(t28);

    TheoremCheck c210;
    c210.id = "C2.10";
    c210.depth = 3;
    c210.slots = {all_slot("x"), all_slot("a"), all_slot("y")};
    c210.body = [](const RingEnv& env, const std::vector<Element>& v) {
        const Ring& R = env.ring();
        Element x = v[0], a = v[1], y = v[2];
        if (R.mul(R.mul(x, a), y) != R.one() || !env.sr(a) || !(env.sr(x) || env.sr(y))) return true;
        return env.unit(a);
    };
    out.push_back(c210);
}

inline void add_section3(std::vector<TheoremCheck>& out) {
    for (Variant var : kAllVariants) {
        TheoremCheck t;
        t.id = std::string("T3.1-") + to_string(var);
        t.depth = 3;
        t.slots = {all_slot("a")};
        t.body = [var](const RingEnv& env, const std::vector<Element>& v) {
            const Ring& R = env.ring();
            Element a = v[0];
            if (env.sr(a, Side::right, var) != env.sr(a, Side::left, var)) return false;
            // every right witness in the variant's set is a left witness
            for (Element x = 0; x < R.order(); ++x)
                for (Element b : env.ctx().witnesses(var))
                    if (env.unit(form3(R, a, b, x, Side::right)) != env.unit(form3(R, a, b, x, Side::left)))
                        return false;
            return true;
        };
        out.push_back(t);
    }

    const std::pair<const char*, ElementClass> sjl[] = {
        {"L3.2-unit", ElementClass::unit}, {"L3.2-reg", ElementClass::reg}, {"L3.2-ureg", ElementClass::ureg}};
    for (auto [id, cls] : sjl) {
        TheoremCheck t;
        t.id = id;
        t.depth = 3;
        t.slots = {all_slot("a"), all_slot("b"), all_slot("x")};
        t.body = [cls = cls](const RingEnv& env, const std::vector<Element>& v) {
            auto [r, l] = sjl_check(env.an(), v[0], v[1], v[2], cls);
            return r == l;
        };
        out.push_back(t);
    }

    TheoremCheck sreg;
    sreg.id = "L3.2-sreg-counterexample";
    sreg.depth = 3;
    sreg.applicable = [](const RingDescriptor& d) -> std::string {
        return d.id == "M(2,Z/4)" ? "" : "the reduction of the integer example lives in M(2,Z/4)";
    };
    sreg.search = [](const RingEnv& env, std::uint64_t& instances) -> std::optional<Payload> {
        const Ring& R = env.ring();
        auto ok = [&](Element a, Element b, Element x) {
            ++instances;
            return env.an().strongly_regular(form3(R, a, b, x, Side::right)) &&
                   !env.an().strongly_regular(form3(R, a, b, x, Side::left));
        };
        auto payload = [&](Element a, Element b, Element x) {
            return Payload{{"a", R.format(a)}, {"b", R.format(b)}, {"x", R.format(x)}};
        };
        Element a = R.parse("[[1,1],[0,0]]"), b = R.parse("[[1,0],[0,0]]"), x = R.parse("[[0,1],[1,0]]");
        if (ok(a, b, x)) return payload(a, b, x);
        for (Element a2 = 0; a2 < R.order(); ++a2)
            for (Element b2 = 0; b2 < R.order(); ++b2)
                for (Element x2 = 0; x2 < R.order(); ++x2)
                    if (ok(a2, b2, x2)) return payload(a2, b2, x2);
        return std::nullopt;
    };
    out.push_back(sreg);

    TheoremCheck circ;
    circ.id = "R3.5-circle";
    circ.depth = 4;
    circ.max_order = 81;
    circ.slots = {all_slot("x"), all_slot("a"), all_slot("b"), all_slot("c")};
    circ.body = [](const RingEnv& env, const std::vector<Element>& v) {
        CircleContext o{&env.ring(), v[0]};
        Element a = v[1], b = v[2], c = v[3];
        return o(o(a, b), c) == o(a, o(b, c)) && o(a, 0) == a && o(0, a) == a;
    };
    out.push_back(circ);

    TheoremCheck p36;
    p36.id = "P3.6";
    p36.depth = 2;
    p36.slots = {all_slot("a"), all_slot("x")};
    p36.body = [](const RingEnv& env, const std::vector<Element>& v) {
        for (ElementClass cls : {ElementClass::unit, ElementClass::reg, ElementClass::ureg}) {
            auto r = prop36_check(env.an(), v[0], v[1], cls);
            if (!same_all({r.member[0], r.member[1], r.member[2], r.member[3]})) return false;
            if (r.decompositions)
                for (const auto& d : *r.decompositions)
                    if (!in_class(env.an(), d[1], cls) || !in_class(env.an(), d[2], cls)) return false;
        }
        return true;
    };
    out.push_back(p36);

    TheoremCheck e34;
    e34.id = "E3.4";
    e34.applicable = [](const RingDescriptor& d) { return needs_full_matrix(d, false); };
    e34.body = [](const RingEnv& env, const std::vector<Element>&) {
        const Ring& R = env.ring();
        if (R.matrix_shape()->k != 2) return true;
        Element one = R.matrix_shape()->base->one();
        Element a = mat2(R, one, 0, 0, 0), x = mat2(R, 0, one, one, 0), b = mat2(R, one, one, 0, 0);
        Element l = R.sub(R.one(), R.mul(R.mul(a, x), b)), r = R.sub(R.one(), R.mul(R.mul(b, x), a));
        return env.unit(l) && !env.unit(r) && r == mat2(R, 0, 0, 0, one) &&
               !env.unit(form3(R, a, b, x, Side::right)) && !env.unit(form3(R, a, b, x, Side::left));
    };
    out.push_back(e34);

    TheoremCheck t37;
    t37.id = "T3.7";
    t37.depth = 3;
    t37.applicable = [](const RingDescriptor& d) { return needs_full_matrix(d, true); };
    t37.slots = {all_slot("A"), all_slot("B"), all_slot("X")};
    t37.body = [](const RingEnv& env, const std::vector<Element>& v) {
        const Ring& R = env.ring();
        const Ring& S = *R.matrix_shape()->base;
        std::size_t k = R.matrix_shape()->k;
        Element l = form3(R, v[0], v[1], v[2], Side::right), r = form3(R, v[0], v[1], v[2], Side::left);
        return det_base(S, R.entries(l), k) == det_base(S, R.entries(r), k) && env.unit(l) == env.unit(r);
    };
    out.push_back(t37);

    TheoremCheck t39;
    t39.id = "T3.9";
    t39.depth = 2;
    t39.applicable = [](const RingDescriptor& d) -> std::string {
        return d.ring->has_involution() ? "" : "no involution attached";
    };
    t39.slots = {all_slot("a")};
    t39.body = [](const RingEnv& env, const std::vector<Element>& v) {
        Element s = env.ring().star(v[0]);
        return env.sr(v[0]) == env.sr(s) && env.sr(v[0], Side::left, Variant::full) == env.sr(s, Side::left, Variant::full);
    };
    out.push_back(t39);

    TheoremCheck c310;
    c310.id = "C3.10";
    c310.depth = 2;
    c310.applicable = [](const RingDescriptor& d) { return needs_full_matrix(d, true); };
    c310.slots = {all_slot("A")};
    c310.body = [](const RingEnv& env, const std::vector<Element>& v) {
        return env.sr(v[0]) == env.sr(transpose(env.ring(), v[0]));
    };
    out.push_back(c310);
}

inline void add_section4(std::vector<TheoremCheck>& out) {
    TheoremCheck t41;
    t41.id = "T4.1";
    t41.depth = 2;
    t41.slots = {list_slot("a", &RingEnv::regular_elements)};
    t41.body = [](const RingEnv& env, const std::vector<Element>& v) {
        Element a = v[0];
        const RingEnv& q = env.rad_quotient();
        return same_all({env.sr(a), env.ureg(a), bool(env.ureg_products()[a]), q.ureg(q.ring().project(a))});
    };
    out.push_back(t41);

    TheoremCheck e42b;
    e42b.id = "E4.2B";
    e42b.depth = 2;
    e42b.applicable = [](const RingDescriptor& d) { return needs_full_matrix(d, false); };
    e42b.slots = {base_slot("s"), base_slot("t")};
    e42b.body = [](const RingEnv& env, const std::vector<Element>& v) {
        const Ring& R = env.ring();
        if (R.matrix_shape()->k != 2) return true;
        const Ring& S = env.base().ring();
        Element s = v[0], t = v[1], one = S.one();
        Element U = mat2(R, one, 0, s, one), E = mat2(R, one, t, 0, 0);
        Element B = R.mul(U, E), A = R.mul(E, U);
        Element V = mat2(R, S.add(one, S.mul(t, s)), t, s, one);
        return env.unit(U) && R.is_idempotent(E) && env.ureg(B) && env.ureg(A) && env.sr(B) && env.sr(A) &&
               env.unit(V) && R.entries(V)[0] == R.entries(A)[0] && R.entries(V)[1] == R.entries(A)[1];
    };
    out.push_back(e42b);

    TheoremCheck t43;
    t43.id = "T4.3";
    t43.depth = 2;
    t43.slots = {all_slot("a")};
    t43.body = [](const RingEnv& env, const std::vector<Element>& v) {
        const Ring& R = env.ring();
        Element a = v[0];
        auto inner = inner_inverses(R, a);
        bool reg = !inner.empty();
        bool all_refl_ureg = true, all_refl_sr = true, some_refl_sr = false, some_inner_sr = false;
        bool some_refl_ureg = false, some_inner_ureg = false, c8 = false, c9 = false, c10 = false;
        for (Element x : inner) {
            bool refl = R.mul(R.mul(x, a), x) == x;
            bool xs = env.sr(x), xu = env.ureg(x);
            some_inner_sr |= xs;
            some_inner_ureg |= xu;
            if (refl) {
                all_refl_ureg &= xu;
                all_refl_sr &= xs;
                some_refl_sr |= xs;
                some_refl_ureg |= xu;
            }
            if (c8 && c9 && c10) continue;
            Element ay = R.mul(a, x);
            for (Element z = 0; z < R.order(); ++z) {
                if (R.mul(ay, z) != a) continue;
                c8 |= env.unit(z);
                c9 |= env.ureg(z);
                c10 |= env.sr(z);
            }
        }
        return same_all({env.ureg(a), reg && all_refl_ureg, reg && all_refl_sr, some_refl_sr, some_inner_sr,
                         some_refl_ureg, some_inner_ureg, c8, c9, c10});
    };
    out.push_back(t43);

    TheoremCheck t45;
    t45.id = "T4.5";
    t45.depth = 2;
    t45.slots = {list_slot("a1", &RingEnv::ureg_elements), list_slot("a2", &RingEnv::ureg_elements)};
    t45.body = [](const RingEnv& env, const std::vector<Element>& v) {
        const Ring& R = env.ring();
        Element b = R.mul(v[0], v[1]);
        if (!env.sr(b)) return false;
        if (env.reg(b) && !env.ureg(b)) return false;
        if (v[1] == 0) {
            // powers of a1
            std::vector<char> seen(R.order(), 0);
            for (Element p = v[0]; !seen[p]; p = R.mul(p, v[0])) {
                seen[p] = 1;
                if (env.reg(p) != env.ureg(p)) return false;
            }
        }
        if (v[0] == 0 && v[1] == 0) {
            // (3): reg closed under products implies ureg closed
            bool reg_closed = true, ureg_closed = true;
            for (Element x : env.regular_elements())
                for (Element y : env.regular_elements()) reg_closed = reg_closed && env.reg(R.mul(x, y));
            for (Element x : env.ureg_elements())
                for (Element y : env.ureg_elements()) ureg_closed = ureg_closed && env.ureg(R.mul(x, y));
            if (reg_closed && !ureg_closed) return false;
        }
        return true;
    };
    out.push_back(t45);

    TheoremCheck c47;
    c47.id = "C4.7";
    c47.depth = 2;
    c47.body = [](const RingEnv& env, const std::vector<Element>&) {
        bool ic = true, reg_sr = true, reg_prod = true;
        for (Element a : env.regular_elements()) {
            ic = ic && env.ureg(a);
            reg_sr = reg_sr && env.sr(a);
            reg_prod = reg_prod && env.ureg_products()[a];
        }
        return same_all({ic, reg_sr, reg_prod});
    };
    out.push_back(c47);

    TheoremCheck c49;
    c49.id = "C4.9";
    c49.depth = 2;
    c49.applicable = [](const RingDescriptor& d) -> std::string {
        std::string r = needs_full_matrix(d, true);
        if (r.empty() && d.ring->matrix_shape()->k != 2) return "not a 2x2 matrix ring";
        return r;
    };
    c49.slots = {list_slot("A", &RingEnv::regular_elements)};
    c49.body = [](const RingEnv& env, const std::vector<Element>& v) { return env.ureg(v[0]) && env.sr(v[0]); };
    out.push_back(c49);

    TheoremCheck t411;
    t411.id = "T4.11";
    t411.depth = 2;
    t411.slots = {all_slot("a")};
    t411.body = [](const RingEnv& env, const std::vector<Element>& v) {
        const Ring& R = env.ring();
        Element a = v[0];
        if (!env.all_suitable_in(a)) return true;
        bool rhs = true;
        for (Element f : R.idempotents()) {
            Element fa = R.mul(f, a);
            if (env.reg(fa) && !env.ureg(fa)) rhs = false;
        }
        return env.sr(a) == rhs;
    };
    out.push_back(t411);
}

inline void add_section5(std::vector<TheoremCheck>& out) {
    TheoremCheck t51;
    t51.id = "T5.1";
    t51.depth = 2;
    t51.slots = {all_slot("a")};
    t51.body = [](const RingEnv& env, const std::vector<Element>& v) {
        const Ring& R = env.ring();
        const RingAnalysis& an = env.an();
        Element a = v[0];
        bool rad = an.in_radical(a);
        if (rad && !env.sr(a)) return false;
        if (an.strongly_nilpotent(a) && !rad) return false;
        if (R.is_central(a) && an.quasi_nilpotent(a) && !rad) return false;
        bool commutes = true;
        for (Element e : R.idempotents()) commutes = commutes && R.mul(a, e) == R.mul(e, a);
        if (an.nilpotent(a) && env.all_suitable_in(a) && commutes && !rad) return false;
        return true;
    };
    out.push_back(t51);

    TheoremCheck spi;
    spi.id = "R5.spi";
    spi.depth = 2;
    spi.slots = {all_slot("a")};
    spi.body = [](const RingEnv& env, const std::vector<Element>& v) {
        const Ring& R = env.ring();
        Element a = v[0];
        if (!env.an().strongly_pi_regular(a)) return true;
        std::vector<char> seen(R.order(), 0);
        for (Element p = a; !seen[p]; p = R.mul(p, a)) {
            seen[p] = 1;
            if (!env.reg(p)) return true;
        }
        return env.ureg(a) && env.sr(a);
    };
    out.push_back(spi);

    TheoremCheck t52;
    t52.id = "T5.2";
    t52.depth = 2;
    t52.slots = {{"a", SlotRing::self, [](const RingEnv& env, const std::vector<Element>&) {
                      std::vector<Element> out;
                      for (Element a : env.regular_elements())
                          if (env.an().nilpotent(a)) out.push_back(a);
                      return out;
                  }}};
    t52.body = [](const RingEnv& env, const std::vector<Element>& v) {
        const Ring& R = env.ring();
        Element a = v[0];
        std::uint32_t n = env.an().nilpotent_index(a);
        bool all_reg = true;
        for (std::uint32_t i = 1; i <= n; ++i) all_reg = all_reg && env.reg(power(R, a, i));
        if (all_reg) {
            if (!env.idempotent_products(n)[a]) return false;
            for (std::uint32_t i = 1; i <= n; ++i)
                if (!env.ureg(power(R, a, i)) || !env.sr(power(R, a, i))) return false;
        }
        if (env.exchange()) {
            if (!env.ureg(a)) return false;
            for (std::uint32_t i = 1; i <= n; ++i)
                if (!env.sr(power(R, a, i))) return false;
        }
        if (n <= 2) {
            // square-zero: a = (e + a)(1 - e) with e = ax
            for (Element x : inner_inverses(R, a)) {
                Element e = R.mul(a, x), g = R.add(e, a), h = R.sub(R.one(), e);
                if (!R.is_idempotent(g) || !R.is_idempotent(h) || R.mul(g, h) != a) return false;
            }
        }
        return true;
    };
    out.push_back(t52);

    TheoremCheck e53;
    e53.id = "E5.3";
    e53.depth = 2;
    e53.applicable = [](const RingDescriptor& d) -> std::string {
        std::string r = needs_full_matrix(d, true);
        if (r.empty() && d.ring->matrix_shape()->k != 2) return "not a 2x2 matrix ring";
        return r;
    };
    e53.slots = {{"s", SlotRing::base,
                  [](const RingEnv& env, const std::vector<Element>&) {
                      const Ring& S = env.base().ring();
                      std::vector<Element> out;
                      for (Element s = 0; s < S.order(); ++s)
                          if (S.mul(s, s) == 0) out.push_back(s);
                      return out;
                  }},
                 base_slot("t")};
    e53.body = [](const RingEnv& env, const std::vector<Element>& v) {
        const Ring& R = env.ring();
        const Ring& S = env.base().ring();
        Element s = v[0], t = v[1], one = S.one();
        Element A = mat2(R, s, one, 0, S.neg(s)), W = mat2(R, one, 0, one, one);
        Element B = R.mul(A, mat2(R, one, t, 0, one));
        return R.mul(A, A) == 0 && env.unit(W) && R.mul(R.mul(A, W), A) == A && env.ureg(A) && env.sr(A) &&
               env.ureg(B) && env.sr(B) && env.sr(R.mul(B, B)) && power(R, B, 3) == 0;
    };
    out.push_back(e53);

    TheoremCheck t55;
    t55.id = "T5.5";
    t55.depth = 3;
    t55.slots = {list_slot("e", &RingEnv::nonzero_idempotents),
                 {"f", SlotRing::self,
                  [](const RingEnv& env, const std::vector<Element>& p) {
                      const Ring& R = env.ring();
                      std::vector<Element> out;
                      for (Element f : R.idempotents())
                          if (R.mul(p[0], f) == 0 && R.mul(f, p[0]) == 0) out.push_back(f);
                      return out;
                  }},
                 all_slot("r")};
    t55.body = [](const RingEnv& env, const std::vector<Element>& v) {
        const Ring& R = env.ring();
        Element e = v[0], f = v[1];
        Element erf = R.mul(R.mul(e, v[2]), f);
        Element g = R.add(f, erf);
        if (!R.is_idempotent(g) || R.mul(e, g) != erf || !env.sr(erf)) return false;
        for (Element s = 0; s < R.order(); ++s)
            if (!env.sr(R.mul(R.mul(erf, s), e))) return false;
        return true;
    };
    out.push_back(t55);

    TheoremCheck c56;
    c56.id = "C5.6";
    c56.depth = 3;
    c56.slots = {all_slot("p"),
                 {"q", SlotRing::self,
                  [](const RingEnv& env, const std::vector<Element>& p) {
                      const Ring& R = env.ring();
                      std::vector<Element> out;
                      for (Element q = 0; q < R.order(); ++q)
                          if (R.mul(p[0], q) == 0 && R.mul(q, p[0]) == 0 && env.unit(R.add(p[0], q))) out.push_back(q);
                      return out;
                  }},
                 all_slot("r")};
    c56.body = [](const RingEnv& env, const std::vector<Element>& v) {
        const Ring& R = env.ring();
        return env.sr(R.mul(R.mul(v[0], v[2]), v[1]));
    };
    out.push_back(c56);

    TheoremCheck t57;
    t57.id = "T5.7";
    t57.depth = 3;
    t57.slots = {list_slot("e", &RingEnv::proper_idempotents),
                 {"g", SlotRing::self,
                  [](const RingEnv& env, const std::vector<Element>& p) {
                      const Ring& R = env.ring();
                      Element f = env.complement(p[0]);
                      std::vector<Element> out;
                      for (Element g : R.idempotents())
                          if (R.mul(R.mul(f, g), f) == g && iso_pair(env, p[0], g)) out.push_back(g);
                      return out;
                  }},
                 peirce_slot("r", true, true)};
    t57.body = [](const RingEnv& env, const std::vector<Element>& v) {
        const Ring& R = env.ring();
        Element e = v[0], g = v[1], r = v[2], f = env.complement(e);
        auto ab = iso_pair(env, e, g);
        if (!ab) return false;
        Element h = R.sub(f, g);
        Element w = R.add(R.add(ab->first, ab->second), h);
        Element ra = R.mul(r, ab->first);
        return R.mul(w, w) == R.one() && R.mul(r, w) == ra && R.mul(R.mul(e, ra), f) == ra && env.sr(r);
    };
    out.push_back(t57);

    TheoremCheck t58;
    t58.id = "T5.8";
    t58.depth = 2;
    t58.applicable = [](const RingDescriptor& d) { return needs_full_matrix(d, false); };
    t58.slots = {all_slot("A")};
    t58.body = [](const RingEnv& env, const std::vector<Element>& v) {
        const Ring& R = env.ring();
        std::size_t k = R.matrix_shape()->k;
        auto m = R.entries(v[0]);
        for (std::size_t row = 0; row < k; ++row) {
            bool others_zero = true, has_zero = false;
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) {
                    if (i != row && m[i * k + j] != 0) others_zero = false;
                    if (i == row && m[i * k + j] == 0) has_zero = true;
                }
            if (others_zero && has_zero) return env.sr(v[0]);
        }
        return true;
    };
    out.push_back(t58);
}

inline void add_section6(std::vector<TheoremCheck>& out) {
    TheoremCheck l61;
    l61.id = "L6.1";
    l61.depth = 3;
    l61.slots = {list_slot("e", &RingEnv::proper_idempotents),
                 {"x", SlotRing::self, [](const RingEnv& env, const std::vector<Element>& p) { return env.corner_units(p[0]); }},
                 peirce_slot("p", false, true),
                 {"y", SlotRing::self,
                  [](const RingEnv& env, const std::vector<Element>& p) { return env.corner_units(env.complement(p[0])); }}};
    l61.body = [](const RingEnv& env, const std::vector<Element>& v) {
        try {
            peirce_inverse(env.ptr(), v[0], v[1], v[2], v[3]);
            return true;
        } catch (const CertificateError&) {
            return false;
        }
    };
    out.push_back(l61);

    TheoremCheck t62;
    t62.id = "T6.2";
    t62.depth = 3;
    t62.slots = {list_slot("e", &RingEnv::nonzero_idempotents), peirce_slot("a", true, true), peirce_slot("p", false, true)};
    t62.body = [](const RingEnv& env, const std::vector<Element>& v) {
        const Ring& R = env.ring();
        const FiniteOps& ops = env.ctx().ops();
        Element e = v[0], a = v[1], p = v[2], f = env.complement(e);
        const RingEnv& c = env.corner(e);
        bool corner_sr = c.sr(*c.ring().restrict(a));
        Element susp = R.add(R.add(a, p), f);
        if (corner_sr != env.sr(susp)) return false;
        if (!corner_sr) return true;
        if (!env.sr(a)) return false;
        const FiniteCornerOracle& oracle = env.corner_oracle(e);
        CornerOracle<Element> fn = [&oracle](const Element& x, const Element& w) { return oracle(x, w); };
        for (Element s = 0; s < R.order(); ++s) {
            auto cert = suspend_witness(ops, e, a, p, s, fn);
            if (cert.a != susp) return false;
        }
        // converse: a unit a + f + (1 - (a + f)(s + f)) t has a corner unit in its e-corner
        Element af = R.add(a, f);
        for (Element s : env.block(e, e)) {
            auto w = env.ctx().sr1_witness(af, R.add(s, f), Side::right);
            if (!w) return false;
            UnitPair<Element> k = extract_corner_unit(ops, e, w->u, w->u_inv);
            Element ete = R.mul(R.mul(e, w->b), e);
            Element expect = R.add(a, R.mul(R.sub(e, R.mul(a, s)), ete));
            if (k.u != expect) return false;
        }
        return true;
    };
    out.push_back(t62);

    TheoremCheck c65;
    c65.id = "C6.5";
    c65.depth = 3;
    c65.slots = {list_slot("e", &RingEnv::nonzero_idempotents)};
    c65.body = [](const RingEnv& env, const std::vector<Element>& v) {
        return !env.all_sr() || env.corner(v[0]).all_sr();
    };
    out.push_back(c65);

    TheoremCheck t66;
    t66.id = "T6.6";
    t66.depth = 3;
    t66.slots = {list_slot("e", &RingEnv::proper_idempotents), peirce_slot("a", true, true),
                 peirce_slot("p", false, true), peirce_slot("b", false, false)};
    t66.body = [](const RingEnv& env, const std::vector<Element>& v) {
        const Ring& R = env.ring();
        Element e = v[0], a = v[1], p = v[2], b = v[3], f = env.complement(e);
        const RingEnv& ce = env.corner(e);
        const RingEnv& cf = env.corner(f);
        bool sa = ce.sr(*ce.ring().restrict(a));
        Element rb = *cf.ring().restrict(b);
        bool sb = cf.sr(rb);
        bool s = env.sr(R.add(R.add(a, p), b));
        if (sa && sb && !s) return false;
        if (cf.unit(rb) && sa != s) return false;
        return true;
    };
    out.push_back(t66);

    TheoremCheck t67;
    t67.id = "T6.7";
    t67.depth = 3;
    t67.slots = {list_slot("e", &RingEnv::proper_idempotents), peirce_slot("a", true, true),
                 {"u", SlotRing::self,
                  [](const RingEnv& env, const std::vector<Element>& p) { return env.corner_units(env.complement(p[0])); }}};
    t67.body = [](const RingEnv& env, const std::vector<Element>& v) {
        const RingEnv& ce = env.corner(v[0]);
        return env.ureg(env.ring().add(v[1], v[2])) == ce.ureg(*ce.ring().restrict(v[1]));
    };
    out.push_back(t67);

    TheoremCheck t68;
    t68.id = "T6.8";
    t68.depth = 2;
    t68.applicable = [](const RingDescriptor& d) { return needs_full_matrix(d, false); };
    t68.slots = {all_slot("A")};
    t68.body = [](const RingEnv& env, const std::vector<Element>& v) {
        const Ring& R = env.ring();
        const RingEnv& S = env.base();
        std::size_t k = R.matrix_shape()->k;
        auto m = R.entries(v[0]);
        bool lower = true, upper = true, diag_sr = true;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) {
                if (j > i && m[i * k + j] != 0) lower = false;
                if (j < i && m[i * k + j] != 0) upper = false;
                if (i == j) diag_sr = diag_sr && S.sr(m[i * k + j]);
            }
        if (!diag_sr || !(lower || upper)) return true;
        if (!env.sr(v[0])) return false;
        // reversed rows and reversed rows+columns stay sr-one
        std::vector<Element> rows(m.size()), both(m.size());
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) {
                rows[i * k + j] = m[(k - 1 - i) * k + j];
                both[i * k + j] = m[(k - 1 - i) * k + (k - 1 - j)];
            }
        return env.sr(R.from_entries(rows)) && env.sr(R.from_entries(both));
    };
    out.push_back(t68);

    TheoremCheck t610;
    t610.id = "T6.10";
    t610.depth = 3;
    t610.slots = {all_slot("a"), all_slot("b"), all_slot("x")};
    t610.body = [](const RingEnv& env, const std::vector<Element>& v) {
        const Ring& S = env.ring();
        Element a = v[0], b = v[1], x = v[2];
        if (env.sr(form3(S, a, b, x, Side::right)) != env.sr(form3(S, a, b, x, Side::left))) return false;
        std::uint64_t n = S.order();
        if (n * n * n * n <= 256) {
            // [[1, a], [b, x]] over M(2,S) against its Schur complement x - ba
            const RingEnv& M = *env.matrix2();
            auto red = schur_reduce(env.ctx(), a, b, x);
            if (M.sr(mat2(M.ring(), S.one(), a, b, x)) != red.sr) return false;
        }
        return true;
    };
    out.push_back(t610);
}

// --- integer checks ---------------------------------------------------------

inline IntMatrix int_matrix_from_literal(const std::string& text) {
    LiteralNode n = parse_literal(text);
    if (n.kind != LiteralNode::Kind::list) throw ParseError("expected a matrix literal", 0);
    std::vector<std::vector<Integer>> rows;
    for (const auto& r : n.items) {
        if (r.kind != LiteralNode::Kind::list) throw ParseError("expected a matrix row", r.offset);
        std::vector<Integer> row;
        for (const auto& x : r.items) {
            if (x.kind != LiteralNode::Kind::integer) throw ParseError("expected an integer entry", x.offset);
            row.push_back(Integer(x.value));
        }
        rows.push_back(std::move(row));
    }
    return IntMatrix::from_rows(rows);
}

inline const std::string* payload_get(const Payload& p, const std::string& name) {
    for (const auto& [k, v] : p)
        if (k == name) return &v;
    return nullptr;
}

/// Sampled integer check: `gen` draws named matrices, `holds` decides them.
inline TheoremCheck sampled_int_check(std::string id, std::uint64_t samples, std::uint64_t seed,
                                      std::function<std::vector<std::pair<std::string, IntMatrix>>(std::mt19937_64&)> gen,
                                      std::function<bool(const std::vector<IntMatrix>&)> holds) {
    TheoremCheck t;
    t.id = std::move(id);
    t.integer = true;
    t.run_int = [samples, seed, gen, holds](std::uint64_t budget) {
        TheoremCheck::IntResult r;
        std::mt19937_64 rng(seed);
        for (std::uint64_t i = 0; i < samples && r.instances < budget; ++i) {
            auto named = gen(rng);
            std::vector<IntMatrix> ms;
            for (auto& [k, m] : named) ms.push_back(m);
            ++r.instances;
            if (!holds(ms)) {
                r.ok = false;
                for (auto& [k, m] : named) r.payload.emplace_back(k, m.to_string());
                break;
            }
        }
        return r;
    };
    t.replay_int = [holds](const Payload& p) {
        std::vector<IntMatrix> ms;
        for (const auto& [k, v] : p) ms.push_back(int_matrix_from_literal(v));
        return !holds(ms);
    };
    return t;
}

/// Fixed-vector integer check.
inline TheoremCheck fixed_int_check(std::string id, std::function<bool(Payload&)> run) {
    TheoremCheck t;
    t.id = std::move(id);
    t.integer = true;
    t.run_int = [run](std::uint64_t) {
        TheoremCheck::IntResult r;
        r.instances = 1;
        Payload p;
        r.ok = run(p);
        r.payload = std::move(p);
        return r;
    };
    return t;
}

inline bool int_sr(const IntMatrix& A) { return sr1_int(A).sr; }

inline Integer int_trace(const IntMatrix& A) {
    Integer t = 0;
    for (std::size_t i = 0; i < A.n(); ++i) t += A(i, i);
    return t;
}

inline void add_integer(std::vector<TheoremCheck>& out) {
    out.push_back(sampled_int_check(
        "T3.7", 10000, 37,
        [](std::mt19937_64& rng) {
            std::size_t n = 2 + rng() % 2;
            return std::vector<std::pair<std::string, IntMatrix>>{
                {"A", random_matrix(n, rng, 9)}, {"B", random_matrix(n, rng, 9)}, {"X", random_matrix(n, rng, 9)}};
        },
        [](const std::vector<IntMatrix>& m) {
            const IntMatrix &A = m[0], &B = m[1], &X = m[2];
            return det_exact(A + B - A * X * B) == det_exact(A + B - B * X * A);
        }));

    // trace may differ: some sampled triple must show it
    out.push_back(fixed_int_check("T3.7-trace", [](Payload& p) {
        std::mt19937_64 rng(38);
        for (int i = 0; i < 10000; ++i) {
            IntMatrix A = random_matrix(2, rng, 9), B = random_matrix(2, rng, 9), X = random_matrix(2, rng, 9);
            IntMatrix l = A + B - A * X * B, r = A + B - B * X * A;
            if (int_trace(l) != int_trace(r)) {
                p = {{"A", A.to_string()}, {"B", B.to_string()}, {"X", X.to_string()}};
                return true;
            }
        }
        p = {{"searched", "10000 triples"}};
        return false;
    }));

    out.push_back(sampled_int_check(
        "C3.10", 10000, 310,
        [](std::mt19937_64& rng) {
            std::size_t n = 2 + rng() % 2;
            IntMatrix A = (rng() % 2) ? random_matrix(n, rng, 3) : random_unimodular(n, rng) * random_matrix(n, rng, 1);
            return std::vector<std::pair<std::string, IntMatrix>>{{"A", A}};
        },
        [](const std::vector<IntMatrix>& m) { return int_sr(m[0]) == int_sr(m[0].transpose()); }));

    out.push_back(sampled_int_check(
        "C7.5", 10000, 75,
        [](std::mt19937_64& rng) {
            std::size_t n = 2 + rng() % 2;
            return std::vector<std::pair<std::string, IntMatrix>>{{"A", random_matrix(n, rng, 2)}, {"B", random_matrix(n, rng, 2)}};
        },
        [](const std::vector<IntMatrix>& m) { return int_sr(m[0] * m[1]) == int_sr(m[1] * m[0]); }));

    out.push_back(fixed_int_check("C7.5-diagonal", [](Payload& p) {
        // diag(a1..an) has sr 1 iff some ai = 0 or all ai = +-1, entries in [-3, 3], n <= 3
        for (std::size_t n = 1; n <= 3; ++n) {
            std::size_t total = 1;
            for (std::size_t i = 0; i < n; ++i) total *= 7;
            for (std::size_t code = 0; code < total; ++code) {
                std::vector<Integer> d;
                std::size_t c = code;
                bool zero = false, units = true;
                for (std::size_t i = 0; i < n; ++i, c /= 7) {
                    int x = int(c % 7) - 3;
                    d.push_back(x);
                    zero = zero || x == 0;
                    units = units && (x == 1 || x == -1);
                }
                IntMatrix D = IntMatrix::diag(d);
                if (int_sr(D) != (zero || units)) {
                    p = {{"A", D.to_string()}};
                    return false;
                }
            }
        }
        return true;
    }));

    out.push_back(sampled_int_check(
        "T7.2", 2000, 72,
        [](std::mt19937_64& rng) {
            std::size_t n = 2 + rng() % 2;
            IntMatrix A = random_unimodular(n, rng) * random_matrix(n, rng, 2) * random_unimodular(n, rng);
            return std::vector<std::pair<std::string, IntMatrix>>{{"A", A}, {"X", random_matrix(n, rng, 5)}};
        },
        [](const std::vector<IntMatrix>& m) {
            const IntMatrix &A = m[0], &X = m[1];
            IntVerdict v = sr1_int(A);
            if (!v.sr) {
                const auto& c = *v.refutation;
                return c.residue != 1 && c.residue != c.modulus - 1 && c.modulus == 1 + ipow(c.d, c.n + 1);
            }
            IntMatrix B = int_witness(A, X);
            IntMatrix I = IntMatrix::identity(A.n());
            return abs(det_exact(A + (I - A * X) * B)) == 1;
        }));

    out.push_back(sampled_int_check(
        "T7.1", 1000, 71,
        [](std::mt19937_64& rng) {
            std::size_t n = 2 + rng() % 3;
            std::vector<Integer> d;
            for (std::size_t i = 0; i < n; ++i) d.push_back(Integer(int(rng() % 19) - 9));
            d[rng() % n] = 0;
            return std::vector<std::pair<std::string, IntMatrix>>{{"A", IntMatrix::diag(d)}, {"X", random_matrix(n, rng, 5)}};
        },
        [](const std::vector<IntMatrix>& m) {
            IntMatrix I = IntMatrix::identity(m[0].n());
            IntMatrix B = int_witness(m[0], m[1]);
            return int_sr(m[0]) && abs(det_exact(m[0] + (I - m[0] * m[1]) * B)) == 1;
        }));

    out.push_back(sampled_int_check(
        "T5.8", 2000, 58,
        [](std::mt19937_64& rng) {
            std::size_t n = 2 + rng() % 3;
            IntMatrix A(n);
            std::size_t k = rng() % n;
            for (std::size_t j = 0; j < n; ++j) A(k, j) = int(rng() % 41) - 20;
            A(k, rng() % n) = 0;
            return std::vector<std::pair<std::string, IntMatrix>>{{"A", A}};
        },
        [](const std::vector<IntMatrix>& m) { return int_sr(m[0]) && structural_rules(m[0]).has_value(); }));

    out.push_back(sampled_int_check(
        "E5.12", 2000, 512,
        [](std::mt19937_64& rng) {
            IntMatrix Z(2), N = random_matrix(2, rng, 20);
            return std::vector<std::pair<std::string, IntMatrix>>{{"M", block2(Z, N, Z, Z)}};
        },
        [](const std::vector<IntMatrix>& m) { return int_sr(m[0]) && structural_rules(m[0]).has_value(); }));

    out.push_back(sampled_int_check(
        "T6.8", 2000, 68,
        [](std::mt19937_64& rng) {
            std::size_t n = 2 + rng() % 3;
            IntMatrix A(n);
            for (std::size_t i = 0; i < n; ++i) {
                A(i, i) = int(rng() % 3) - 1;
                for (std::size_t j = 0; j < i; ++j) A(i, j) = int(rng() % 19) - 9;
            }
            return std::vector<std::pair<std::string, IntMatrix>>{{"A", A}};
        },
        [](const std::vector<IntMatrix>& m) {
            return int_sr(m[0]) && int_sr(m[0].transpose()) && structural_rules(m[0]).has_value();
        }));

    out.push_back(sampled_int_check(
        "T7.2-rules", 10000, 7200,
        [](std::mt19937_64& rng) {
            std::size_t n = 2 + rng() % 3;
            IntMatrix A = random_matrix(n, rng, 4);
            switch (rng() % 4) {
                case 0:  // single row
                    for (std::size_t i = 1; i < n; ++i)
                        for (std::size_t j = 0; j < n; ++j) A(i, j) = 0;
                    break;
                case 1:  // diagonal
                    for (std::size_t i = 0; i < n; ++i)
                        for (std::size_t j = 0; j < n; ++j)
                            if (i != j) A(i, j) = 0;
                    break;
                case 2:  // lower triangular
                    for (std::size_t i = 0; i < n; ++i)
                        for (std::size_t j = i + 1; j < n; ++j) A(i, j) = 0;
                    break;
                default: break;
            }
            return std::vector<std::pair<std::string, IntMatrix>>{{"A", A}};
        },
        [](const std::vector<IntMatrix>& m) { return !structural_rules(m[0]) || int_sr(m[0]); }));

    out.push_back(fixed_int_check("E2.5B", [](Payload& p) {
        for (int n = -20; n <= 20; ++n) {
            IntVerdict v = sr1_int(IntMatrix::diag({Integer(n)}));
            bool expect = n == 0 || n == 1 || n == -1;
            bool cert_ok = expect || (v.refutation && v.refutation->residue != 1 &&
                                      v.refutation->residue != v.refutation->modulus - 1);
            if (v.sr != expect || !cert_ok) {
                p = {{"n", std::to_string(n)}};
                return false;
            }
        }
        return true;
    }));

    out.push_back(fixed_int_check("E2.9", [](Payload& p) {
        bool ok = int_sr(IntMatrix::diag({2, 0})) && int_sr(IntMatrix::diag({0, 2})) && !int_sr(IntMatrix::diag({2, 2})) &&
                  int_sr(IntMatrix::diag({7, 0}));
        if (!ok) p = {{"A", "[[2,0],[0,0]]"}, {"B", "[[0,0],[0,2]]"}};
        return ok;
    }));

    out.push_back(fixed_int_check("E6.11", [](Payload& p) {
        IntMatrix a = IntMatrix::unit(2, 1, 2), b = IntMatrix::unit(2, 1, 1), c = IntMatrix::unit(2, 2, 1, 2);
        IntMatrix ab = c - a * b, ba = c - b * a;
        IntVerdict v1 = sr1_int(ab), v2 = sr1_int(ba);
        bool ok = v1.det == 0 && v2.det == 2 && v1.sr && !v2.sr;
        p = {{"c-ab", ab.to_string()}, {"c-ba", ba.to_string()}};
        return ok;
    }));

    out.push_back(fixed_int_check("E6.13-audit", [](Payload& p) {
        BlockAudit au = audit_block_example();
        p = {{"M", au.m.matrix.to_string()},
             {"det(M)", au.m.det.str()},
             {"det(M^T block)", au.block_t.det.str()},
             {"sr_one", au.sr_one},
             {"discrepancy", au.discrepancy ? "true" : "false"}};
        // the audit passes when both criteria agree on every matrix
        return au.criteria_agree && au.sr_one != "both" && au.sr_one != "neither";
    }));

    out.push_back(fixed_int_check("E3.12", [](Payload& p) {
        VariantRefutation r = variant_refute(IntMatrix::diag({7, 0}), IntMatrix::diag({2, 1}), 10);
        bool ok = !r.unit_witness && !r.idempotent_witness && r.unit_congruence && r.idempotent_congruence &&
                  r.det_trivial_zero == 0;
        if (r.unit_witness) p.emplace_back("U", r.unit_witness->to_string());
        if (r.idempotent_witness) p.emplace_back("P", r.idempotent_witness->to_string());
        if (!ok && p.empty()) p = {{"congruence", "violated"}};
        return ok;
    }));
}

}  // namespace detail

/// Every known check, in registration order.
inline const std::vector<TheoremCheck>& theorem_checks() {
    static const std::vector<TheoremCheck> checks = [] {
        std::vector<TheoremCheck> out;
        detail::add_section2(out);
        detail::add_section3(out);
        detail::add_section4(out);
        detail::add_section5(out);
        detail::add_section6(out);
        detail::add_integer(out);
        return out;
    }();
    return checks;
}

inline const TheoremCheck* find_check(const std::string& id, bool integer) {
    for (const auto& c : theorem_checks())
        if (c.id == id && c.integer == integer) return &c;
    return nullptr;
}

/// Expands ids, family wildcards ("T2.*") and the aliases sjl, prop36, circle.
inline std::vector<std::string> resolve_theorem_ids(const std::vector<std::string>& selectors) {
    std::vector<std::string> known;
    for (const auto& c : theorem_checks())
        if (std::find(known.begin(), known.end(), c.id) == known.end()) known.push_back(c.id);
    if (selectors.empty() || (selectors.size() == 1 && selectors[0] == "all")) return known;
    std::vector<std::string> out;
    auto add = [&](const std::string& id) {
        if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
    };
    for (const auto& s : selectors) {
        if (s == "sjl") {
            for (const char* id : {"L3.2-unit", "L3.2-reg", "L3.2-ureg"}) add(id);
        } else if (s == "prop36") {
            add("P3.6");
        } else if (s == "circle") {
            add("R3.5-circle");
        } else if (!s.empty() && s.back() == '*') {
            std::string prefix = s.substr(0, s.size() - 1);
            bool any = false;
            for (const auto& id : known)
                if (id.rfind(prefix, 0) == 0) {
                    add(id);
                    any = true;
                }
            if (!any) throw ConfigError("no theorem matches '" + s + "'");
        } else if (std::find(known.begin(), known.end(), s) != known.end()) {
            add(s);
        } else {
            throw ConfigError("unknown theorem id '" + s + "'");
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Registry

inline std::vector<RingDescriptor> default_registry() {
    std::vector<RingDescriptor> out;
    auto push = [&](RingPtr r) { out.push_back({r->id(), r, false}); };
    for (std::uint32_t n : {2u, 3u, 4u, 5u, 6u, 8u, 9u, 12u}) push(make_modular(n));
    std::vector<RingPtr> noncomm;
    for (std::uint32_t n : {2u, 3u, 4u}) {
        RingPtr m = with_transpose(make_matrix(2, make_modular(n)));
        push(m);
        noncomm.push_back(m);
    }
    for (std::uint32_t n : {2u, 3u}) {
        RingPtr t = make_triangular(2, make_modular(n));
        push(t);
        noncomm.push_back(t);
    }
    push(make_product({make_modular(2), make_modular(4)}));
    RingPtr mp = make_product({make_matrix(2, make_modular(2)), make_modular(2)});
    push(mp);
    noncomm.push_back(mp);
    RingPtr m22 = out[8].ring;
    for (Element e : m22->idempotents())
        if (e != 0) push(make_corner(m22, e));
    for (const auto& r : noncomm) push(make_opposite(r));
    out.push_back({kIntegerRingId, nullptr, true});
    return out;
}

/// Registry entries selected by id; "default" keeps the whole registry and
/// any other spec is constructed on the fly.
inline std::vector<RingDescriptor> select_rings(const std::vector<std::string>& specs) {
    if (specs.empty() || (specs.size() == 1 && specs[0] == "default")) return default_registry();
    std::vector<RingDescriptor> out;
    for (const auto& s : specs) {
        if (s == kIntegerRingId) {
            out.push_back({kIntegerRingId, nullptr, true});
            continue;
        }
        RingPtr r = construct_ring(s);
        out.push_back({r->id(), r, false});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Running

inline std::uint64_t budget_from_env(std::uint64_t fallback = kDefaultBudget) {
    if (const char* s = std::getenv("SRONE_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(s, &end, 10);
        if (end == s || *end != '\0' || v == 0) throw ConfigError(std::string("SRONE_BUDGET must be a positive integer, got '") + s + "'");
        return v;
    }
    return fallback;
}

namespace detail {

inline std::uint32_t order_limit(const TheoremCheck& c) {
    if (c.max_order) return c.max_order;
    if (c.depth >= 3) return kExhaustiveTripleLimit;
    if (c.depth == 2) return kTableLimit;
    return ~std::uint32_t(0);
}

inline const Ring& slot_ring(const RingEnv& env, const Slot& s) {
    return s.ring == SlotRing::self ? env.ring() : env.base().ring();
}

struct BudgetExhausted {};

inline void run_finite(const TheoremCheck& c, const RingEnv& env, std::uint64_t budget, PropertyReport& rep) {
    if (c.search) {
        std::uint64_t n = 0;
        auto found = c.search(env, n);
        rep.instances = n;
        if (found) {
            rep.outcome = Outcome::pass;
            rep.counterexample = *found;
        } else {
            rep.outcome = Outcome::fail;
            rep.counterexample = {{"searched", std::to_string(n) + " tuples, no witness"}};
        }
        return;
    }
    std::vector<Element> tuple;
    std::function<bool(std::size_t)> rec = [&](std::size_t depth) -> bool {
        if (depth == c.slots.size()) {
            if (rep.instances >= budget) throw BudgetExhausted{};
            ++rep.instances;
            return c.body(env, tuple);
        }
        for (Element x : c.slots[depth].domain(env, tuple)) {
            tuple.push_back(x);
            bool ok = rec(depth + 1);
            tuple.pop_back();
            if (!ok) {
                if (rep.counterexample.empty()) {
                    tuple.push_back(x);
                    for (std::size_t i = 0; i < tuple.size(); ++i)
                        rep.counterexample.emplace_back(c.slots[i].name, slot_ring(env, c.slots[i]).format(tuple[i]));
                    tuple.pop_back();
                }
                return false;
            }
        }
        return true;
    };
    try {
        bool ok;
        if (c.slots.empty()) {
            rep.instances = 1;
            ok = c.body(env, tuple);
            if (!ok) rep.counterexample = {{"ring", env.ring().id()}};
        } else {
            ok = rec(0);
        }
        rep.outcome = ok ? Outcome::pass : Outcome::fail;
    } catch (const BudgetExhausted&) {
        rep.outcome = Outcome::skipped;
        rep.reason = "budget of " + std::to_string(budget) + " instances exhausted";
        rep.counterexample.clear();
    }
}

}  // namespace detail

/// Re-evaluates a finite check on a recorded counterexample. Returns true
/// when the violation reproduces.
inline bool replay(const TheoremCheck& c, const RingEnv& env, const Payload& payload) {
    if (c.search) throw PreconditionError("existential checks are replayed through their witness, not a violation");
    std::vector<Element> tuple;
    if (c.slots.empty()) return !c.body(env, tuple);
    if (payload.size() != c.slots.size()) throw PreconditionError("payload does not match the check's slots");
    for (std::size_t i = 0; i < c.slots.size(); ++i) {
        const Ring& R = detail::slot_ring(env, c.slots[i]);
        Element x = R.parse(payload[i].second);
        auto dom = c.slots[i].domain(env, tuple);
        if (std::find(dom.begin(), dom.end(), x) == dom.end()) return false;
        tuple.push_back(x);
    }
    return !c.body(env, tuple);
}

inline bool replay_report(const PropertyReport& rep, const std::vector<RingDescriptor>& registry) {
    if (rep.outcome != Outcome::fail) return false;
    for (const auto& d : registry) {
        if (d.id != rep.ring) continue;
        const TheoremCheck* c = find_check(rep.theorem, d.integer);
        if (!c) return false;
        if (d.integer) return c->replay_int ? c->replay_int(rep.counterexample) : false;
        RingEnv env(d.ring);
        return replay(*c, env, rep.counterexample);
    }
    return false;
}

struct SuiteOptions {
    std::uint64_t budget = kDefaultBudget;
    unsigned threads = 0;  // 0 = hardware concurrency
};

inline std::vector<PropertyReport> run_suite(const std::vector<RingDescriptor>& registry,
                                             const std::vector<std::string>& theorem_ids, const SuiteOptions& opt = {}) {
    auto ids = resolve_theorem_ids(theorem_ids);
    std::vector<EnvPtr> envs;
    for (const auto& d : registry) envs.push_back(d.integer ? nullptr : std::make_shared<const RingEnv>(d.ring));

    struct Cell {
        const TheoremCheck* check;
        std::size_t ring;
    };
    std::vector<Cell> cells;
    for (const auto& id : ids)
        for (std::size_t r = 0; r < registry.size(); ++r)
            if (const TheoremCheck* c = find_check(id, registry[r].integer)) cells.push_back({c, r});

    std::vector<PropertyReport> reports(cells.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < cells.size();) {
            const Cell& cell = cells[i];
            const TheoremCheck& c = *cell.check;
            const RingDescriptor& d = registry[cell.ring];
            PropertyReport& rep = reports[i];
            rep.theorem = c.id;
            rep.ring = d.id;
            auto t0 = std::chrono::steady_clock::now();
            try {
                std::string skip = (!d.integer && c.applicable) ? c.applicable(d) : "";
                if (!skip.empty()) {
                    rep.outcome = Outcome::skipped;
                    rep.reason = skip;
                } else if (d.integer) {
                    auto r = c.run_int(opt.budget);
                    rep.instances = r.instances;
                    rep.outcome = r.ok ? Outcome::pass : Outcome::fail;
                    rep.counterexample = std::move(r.payload);
                } else if (d.ring->order() > detail::order_limit(c)) {
                    rep.outcome = Outcome::skipped;
                    rep.reason = "order " + std::to_string(d.ring->order()) + " exceeds the limit " +
                                 std::to_string(detail::order_limit(c)) + " for this quantifier depth";
                } else {
                    detail::run_finite(c, *envs[cell.ring], opt.budget, rep);
                }
            } catch (const Error& e) {
                rep.outcome = Outcome::fail;
                rep.counterexample = {{"error", e.what()}};
            }
            rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        }
    };
    unsigned n = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
    n = unsigned(std::min<std::size_t>(n, std::max<std::size_t>(1, cells.size())));
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::stable_sort(reports.begin(), reports.end(), [](const PropertyReport& a, const PropertyReport& b) {
        return std::tie(a.theorem, a.ring) < std::tie(b.theorem, b.ring);
    });
    return reports;
}

inline bool any_failed(const std::vector<PropertyReport>& reports) {
    return std::any_of(reports.begin(), reports.end(), [](const PropertyReport& r) { return r.outcome == Outcome::fail; });
}

inline nlohmann::ordered_json to_json(const PropertyReport& r, bool timing = true) {
    nlohmann::ordered_json j;
    j["theorem"] = r.theorem;
    j["ring"] = r.ring;
    j["instances"] = r.instances;
    j["outcome"] = r.outcome_text();
    if (r.counterexample.empty()) {
        j["counterexample"] = nullptr;
    } else {
        nlohmann::ordered_json ce = nlohmann::ordered_json::object();
        for (const auto& [k, v] : r.counterexample) ce[k] = v;
        j["counterexample"] = ce;
    }
    j["elapsed_ms"] = timing ? std::round(r.elapsed_ms * 1000.0) / 1000.0 : 0.0;
    return j;
}

inline nlohmann::ordered_json to_json(const std::vector<PropertyReport>& reports, bool timing = true) {
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    for (const auto& r : reports) a.push_back(to_json(r, timing));
    return a;
}

// ---------------------------------------------------------------------------
// Counterexample search

struct CounterexampleResult {
    std::string kind;
    std::string ring;
    bool found = false;
    bool verified = false;  // re-checked independently of the search
    std::uint64_t searched = 0;
    Payload payload;
};

inline const std::vector<std::string>& counterexample_kinds() {
    static const std::vector<std::string> k{"sreg-asymmetry", "trace-mismatch", "sreg-product", "nonregular-sr1"};
    return k;
}

inline CounterexampleResult find_counterexamples(const std::string& kind, std::uint64_t budget = kDefaultBudget) {
    CounterexampleResult res;
    res.kind = kind;
    auto finish = [&](const RingEnv& env, std::vector<std::pair<std::string, Element>> named, auto&& verify) {
        res.found = true;
        for (auto& [k, x] : named) res.payload.emplace_back(k, env.ring().format(x));
        // fresh analysis so the check does not reuse the search's tables
        RingEnv fresh(env.ptr());
        std::vector<Element> xs;
        for (auto& [k, v] : res.payload) xs.push_back(fresh.ring().parse(v));
        res.verified = verify(fresh, xs);
    };

    if (kind == "sreg-asymmetry" || kind == "sreg-product" || kind == "nonregular-sr1") {
        RingEnv env(construct_ring("M(2,Z/4)"));
        const Ring& R = env.ring();
        const RingAnalysis& an = env.an();
        res.ring = R.id();
        if (kind == "sreg-asymmetry") {
            auto test = [&](const RingEnv& e, const std::vector<Element>& v) {
                const Ring& Q = e.ring();
                return e.an().strongly_regular(detail::form3(Q, v[0], v[1], v[2], Side::right)) &&
                       !e.an().strongly_regular(detail::form3(Q, v[0], v[1], v[2], Side::left));
            };
            std::vector<Element> seed{R.parse("[[1,1],[0,0]]"), R.parse("[[1,0],[0,0]]"), R.parse("[[0,1],[1,0]]")};
            ++res.searched;
            if (test(env, seed)) {
                finish(env, {{"a", seed[0]}, {"b", seed[1]}, {"x", seed[2]}}, test);
                return res;
            }
            for (Element a = 0; a < R.order(); ++a)
                for (Element b = 0; b < R.order(); ++b)
                    for (Element x = 0; x < R.order() && res.searched < budget; ++x) {
                        ++res.searched;
                        if (test(env, {a, b, x})) {
                            finish(env, {{"a", a}, {"b", b}, {"x", x}}, test);
                            return res;
                        }
                    }
            return res;
        }
        if (kind == "sreg-product") {
            auto test = [](const RingEnv& e, const std::vector<Element>& v) {
                const RingAnalysis& a = e.an();
                Element b = e.ring().mul(v[0], v[1]);
                return a.strongly_regular(v[0]) && a.strongly_regular(v[1]) && a.regular(b) && !a.strongly_regular(b);
            };
            std::vector<Element> seed{R.parse("[[1,2],[0,0]]"), R.parse("[[0,3],[1,1]]")};
            ++res.searched;
            if (test(env, seed)) {
                finish(env, {{"a1", seed[0]}, {"a2", seed[1]}, {"b", R.mul(seed[0], seed[1])}}, test);
                return res;
            }
            for (Element a = 0; a < R.order(); ++a)
                for (Element b = 0; b < R.order() && res.searched < budget; ++b) {
                    ++res.searched;
                    if (test(env, {a, b})) {
                        finish(env, {{"a1", a}, {"a2", b}, {"b", R.mul(a, b)}}, test);
                        return res;
                    }
                }
            return res;
        }
        auto test = [](const RingEnv& e, const std::vector<Element>& v) { return e.sr(v[0]) && !e.reg(v[0]); };
        Element seed = R.parse("[[2,0],[0,0]]");
        ++res.searched;
        if (test(env, {seed})) {
            finish(env, {{"a", seed}}, test);
            return res;
        }
        for (Element a = 0; a < R.order() && res.searched < budget; ++a) {
            ++res.searched;
            if (test(env, {a})) {
                finish(env, {{"a", a}}, test);
                return res;
            }
        }
        (void)an;
        return res;
    }
    if (kind == "trace-mismatch") {
        RingEnv env(construct_ring("M(2,Z/2)"));
        const Ring& R = env.ring();
        res.ring = R.id();
        auto test = [](const RingEnv& e, const std::vector<Element>& v) {
            const Ring& Q = e.ring();
            const Ring& S = *Q.matrix_shape()->base;
            Element l = detail::form3(Q, v[0], v[1], v[2], Side::right), r = detail::form3(Q, v[0], v[1], v[2], Side::left);
            return detail::trace_base(S, Q.entries(l), 2) != detail::trace_base(S, Q.entries(r), 2) &&
                   detail::det_base(S, Q.entries(l), 2) == detail::det_base(S, Q.entries(r), 2);
        };
        for (Element a = 0; a < R.order(); ++a)
            for (Element b = 0; b < R.order(); ++b)
                for (Element x = 0; x < R.order() && res.searched < budget; ++x) {
                    ++res.searched;
                    if (test(env, {a, b, x})) {
                        finish(env, {{"A", a}, {"B", b}, {"X", x}}, test);
                        return res;
                    }
                }
        return res;
    }
    throw ConfigError("unknown counterexample kind '" + kind + "'");
}

}  // namespace srone
