#pragma once

// Circle operation, 2x2 block inversion and the Jacobson-type equivalence
// checks on finite rings.

#include <array>
#include <optional>
#include <utility>

#include "srone/certificate.hpp"
#include "srone/classify.hpp"
#include "srone/ring.hpp"
#include "srone/stable_range.hpp"

namespace srone {

enum class ElementClass { unit, reg, ureg, sreg };

inline const char* to_string(ElementClass c) {
    switch (c) {
        case ElementClass::unit: return "unit";
        case ElementClass::reg: return "reg";
        case ElementClass::ureg: return "ureg";
        case ElementClass::sreg: return "sreg";
    }
    return "?";
}

inline bool in_class(const RingAnalysis& an, Element a, ElementClass c) {
    switch (c) {
        case ElementClass::unit: return an.ring().is_unit(a);
        case ElementClass::reg: return an.regular(a);
        case ElementClass::ureg: return an.unit_regular(a);
        case ElementClass::sreg: return an.strongly_regular(a);
    }
    return false;
}

/// a o b = a + b - axb for a fixed x.
struct CircleContext {
    const Ring* ring;
    Element x;

    Element operator()(Element a, Element b) const {
        const Ring& R = *ring;
        return R.sub(R.add(a, b), R.mul(R.mul(a, x), b));
    }
};

inline Element circle(const CircleContext& ctx, Element a, Element b) { return ctx(a, b); }

/// Block datum [[u, q], [p, r]] over a base ring.
struct Block2 {
    Element u, q, p, r;
};

struct BanachiewiczResult {
    bool verdict = false;
    Element schur = 0;                       // r - p u^-1 q
    std::optional<std::array<Element, 4>> inverse;  // [[A, B], [C, D]] for the unit class
};

/// The block matrix is in the class iff its Schur complement r - p u^-1 q is.
/// For the unit class the inverse blocks are assembled and re-verified.
inline BanachiewiczResult banachiewicz(const RingAnalysis& an, const Block2& blk, ElementClass cls) {
    const Ring& S = an.ring();
    auto u_inv = S.inverse(blk.u);
    if (!u_inv) throw PreconditionError("banachiewicz: pivot " + S.format(blk.u) + " is not a unit");
    BanachiewiczResult res;
    res.schur = S.sub(blk.r, S.mul(S.mul(blk.p, *u_inv), blk.q));
    res.verdict = in_class(an, res.schur, cls);
    if (cls != ElementClass::unit || !res.verdict) return res;

    Element s_inv = S.unit_inverse(res.schur);
    Element uq = S.mul(*u_inv, blk.q);   // u^-1 q
    Element pu = S.mul(blk.p, *u_inv);   // p u^-1
    Element A = S.add(*u_inv, S.mul(S.mul(uq, s_inv), pu));
    Element B = S.neg(S.mul(uq, s_inv));
    Element C = S.neg(S.mul(s_inv, pu));
    Element D = s_inv;

    auto block_mul = [&](const std::array<Element, 4>& x, const std::array<Element, 4>& y) {
        return std::array<Element, 4>{S.add(S.mul(x[0], y[0]), S.mul(x[1], y[2])),
                                      S.add(S.mul(x[0], y[1]), S.mul(x[1], y[3])),
                                      S.add(S.mul(x[2], y[0]), S.mul(x[3], y[2])),
                                      S.add(S.mul(x[2], y[1]), S.mul(x[3], y[3]))};
    };
    const std::array<Element, 4> m{blk.u, blk.q, blk.p, blk.r};
    const std::array<Element, 4> inv{A, B, C, D};
    const std::array<Element, 4> id{S.one(), 0, 0, S.one()};
    audit().checked.fetch_add(1, std::memory_order_relaxed);
    if (block_mul(m, inv) != id || block_mul(inv, m) != id) {
        audit().failed.fetch_add(1, std::memory_order_relaxed);
        throw CertificateError("banachiewicz: inverse blocks failed re-verification");
    }
    res.inverse = inv;
    return res;
}

/// Inverse of x + p + y for x in U(eRe), p in fRe, y in U(fRf).
inline Element peirce_inverse(const RingPtr& ring, Element e, Element x, Element p, Element y) {
    PeirceSplit split(ring, e);
    const Ring& R = *ring;
    if (!split.in_eRe(x) || !split.in_fRe(p) || !split.in_fRf(y))
        throw PreconditionError("peirce_inverse: components are not in eRe, fRe, fRf");
    auto corner_inverse = [&](Element z, Element other_idem) {
        auto inv = R.inverse(R.add(z, other_idem));
        if (!inv) throw PreconditionError("peirce_inverse: " + R.format(z) + " is not a corner unit");
        return R.sub(*inv, other_idem);
    };
    Element x_inv = corner_inverse(x, split.f());
    Element y_inv = corner_inverse(y, split.e());
    return peirce_assemble_inverse(FiniteOps(R), x, x_inv, p, y, y_inv);
}

/// Class membership of (a + b - axb, a + b - bxa).
inline std::pair<bool, bool> sjl_check(const RingAnalysis& an, Element a, Element b, Element x, ElementClass cls) {
    CircleContext c{&an.ring(), x};
    return {in_class(an, c(a, b), cls), in_class(an, c(b, a), cls)};
}

struct Prop36Result {
    std::array<Element, 4> values{};      // 1-ax+axa, 1-xa+axa, 1-ax+a^2x, 1-xa+xa^2
    std::array<bool, 4> member{};
    /// (target, first, second) with target = first + second, each summand in the class.
    std::optional<std::array<std::array<Element, 3>, 3>> decompositions;
};

inline Prop36Result prop36_check(const RingAnalysis& an, Element a, Element x, ElementClass cls) {
    const Ring& R = an.ring();
    Element ax = R.mul(a, x), xa = R.mul(x, a), axa = R.mul(ax, a);
    Element a2x = R.mul(a, ax), xa2 = R.mul(xa, a);
    Prop36Result res;
    res.values = {R.add(R.sub(R.one(), ax), axa), R.add(R.sub(R.one(), xa), axa), R.add(R.sub(R.one(), ax), a2x),
                  R.add(R.sub(R.one(), xa), xa2)};
    for (int i = 0; i < 4; ++i) res.member[i] = in_class(an, res.values[i], cls);
    if (res.member[0] && res.member[1] && res.member[2] && res.member[3]) {
        const auto& v = res.values;
        res.decompositions = std::array<std::array<Element, 3>, 3>{
            std::array<Element, 3>{R.sub(ax, xa), v[1], R.neg(v[0])},
            std::array<Element, 3>{R.sub(axa, xa2), v[1], R.neg(v[3])},
            std::array<Element, 3>{R.sub(axa, a2x), v[0], R.neg(v[2])}};
        for (const auto& d : *res.decompositions)
            if (R.add(d[1], d[2]) != d[0]) throw CertificateError("prop36: decomposition does not add up");
    }
    return res;
}

}  // namespace srone
