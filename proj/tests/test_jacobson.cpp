#include <gtest/gtest.h>

#include "srone/jacobson.hpp"
#include "srone/ring_spec.hpp"

using namespace srone;

TEST(Circle, IdentityAndAssociativity) {
    RingPtr m = construct_ring("M(2,Z/2)");
    for (Element x = 0; x < m->order(); ++x) {
        CircleContext c{m.get(), x};
        for (Element a = 0; a < m->order(); ++a) {
            EXPECT_EQ(c(a, 0), a);
            EXPECT_EQ(c(0, a), a);
            for (Element b = 0; b < m->order(); ++b)
                for (Element d = 0; d < m->order(); ++d) EXPECT_EQ(c(c(a, b), d), c(a, c(b, d)));
        }
    }
}

TEST(Sjl, M2Z2AllClasses) {
    RingPtr m = construct_ring("M(2,Z/2)");
    RingAnalysis an(m);
    for (ElementClass cls : {ElementClass::unit, ElementClass::reg, ElementClass::ureg})
        for (Element a = 0; a < m->order(); ++a)
            for (Element b = 0; b < m->order(); ++b)
                for (Element x = 0; x < m->order(); ++x) {
                    auto [r, l] = sjl_check(an, a, b, x, cls);
                    EXPECT_EQ(r, l) << to_string(cls);
                }
}

TEST(Sjl, ClassicalJacobsonAtXEqualsOne) {
    RingPtr m = construct_ring("M(2,Z/3)");
    RingAnalysis an(m);
    for (Element a = 0; a < m->order(); a += 4)
        for (Element b = 0; b < m->order(); b += 5) {
            Element ab = m->sub(m->one(), m->mul(a, b)), ba = m->sub(m->one(), m->mul(b, a));
            EXPECT_EQ(m->is_unit(ab), m->is_unit(ba));
            auto [r, l] = sjl_check(an, m->sub(m->one(), a), m->sub(m->one(), b), m->one(), ElementClass::unit);
            EXPECT_EQ(r, m->is_unit(ab));
            EXPECT_EQ(l, m->is_unit(ba));
        }
}

TEST(Sjl, StronglyRegularIsAsymmetric) {
    RingPtr m = construct_ring("M(2,Z/4)");
    RingAnalysis an(m);
    Element a = m->parse("[[1,1],[0,0]]"), b = m->parse("E11"), x = m->parse("[[0,1],[1,0]]");
    auto [r, l] = sjl_check(an, a, b, x, ElementClass::sreg);
    EXPECT_TRUE(r);
    EXPECT_FALSE(l);
    CircleContext c{m.get(), x};
    EXPECT_TRUE(m->is_idempotent(c(a, b)));
}

TEST(Prop36, AgreesOnZ6AndM2Z2) {
    for (const char* spec : {"Z/6", "M(2,Z/2)"}) {
        RingPtr R = construct_ring(spec);
        RingAnalysis an(R);
        for (ElementClass cls : {ElementClass::unit, ElementClass::reg, ElementClass::ureg})
            for (Element a = 0; a < R->order(); ++a)
                for (Element x = 0; x < R->order(); ++x) {
                    auto res = prop36_check(an, a, x, cls);
                    for (int i = 1; i < 4; ++i) EXPECT_EQ(res.member[i], res.member[0]) << spec;
                }
    }
}

TEST(Prop36, IdempotentWithItself) {
    RingPtr m = construct_ring("M(2,Z/3)");
    RingAnalysis an(m);
    for (Element e : m->idempotents()) {
        auto res = prop36_check(an, e, e, ElementClass::unit);
        for (int i = 0; i < 4; ++i) {
            EXPECT_EQ(res.values[i], m->one());
            EXPECT_TRUE(res.member[i]);
        }
    }
}

TEST(Banachiewicz, Identity) {
    RingPtr z4 = make_modular(4);
    RingAnalysis an(z4);
    auto r = banachiewicz(an, {1, 0, 0, 1}, ElementClass::unit);
    EXPECT_TRUE(r.verdict);
    ASSERT_TRUE(r.inverse);
    EXPECT_EQ(*r.inverse, (std::array<Element, 4>{1, 0, 0, 1}));
}

TEST(Banachiewicz, Z4Example) {
    RingPtr z4 = make_modular(4);
    RingAnalysis an(z4);
    auto r = banachiewicz(an, {1, 2, 2, 1}, ElementClass::unit);
    EXPECT_EQ(r.schur, 1u);
    EXPECT_TRUE(r.verdict);
    EXPECT_TRUE(r.inverse);
    EXPECT_THROW(banachiewicz(an, {2, 0, 0, 1}, ElementClass::unit), PreconditionError);
}

TEST(Banachiewicz, AgreesWithMatrixRing) {
    RingPtr s = make_modular(3);
    RingPtr m = make_matrix(2, s);
    RingAnalysis an(s), mn(m);
    for (ElementClass cls : {ElementClass::unit, ElementClass::reg, ElementClass::ureg})
        for (Element u : s->units())
            for (Element q = 0; q < 3; ++q)
                for (Element p = 0; p < 3; ++p)
                    for (Element r = 0; r < 3; ++r) {
                        Element ents[] = {u, q, p, r};
                        EXPECT_EQ(banachiewicz(an, {u, q, p, r}, cls).verdict, in_class(mn, m->from_entries(ents), cls));
                    }
}

TEST(PeirceInverse, TrivialSplit) {
    RingPtr m = construct_ring("M(2,Z/3)");
    Element e = m->parse("E11"), f = m->parse("E22");
    EXPECT_EQ(peirce_inverse(m, e, e, 0, f), m->one());
}

TEST(PeirceInverse, M2Z4Example) {
    RingPtr m = construct_ring("M(2,Z/4)");
    Element e = m->parse("E11"), f = m->parse("E22");
    EXPECT_EQ(peirce_inverse(m, e, e, m->parse("[[0,0],[2,0]]"), f), m->parse("[[1,0],[2,1]]"));
    EXPECT_THROW(peirce_inverse(m, e, f, 0, f), PreconditionError);
}

TEST(PeirceInverse, AllCornerUnitsM2Z3) {
    RingPtr m = construct_ring("M(2,Z/3)");
    for (Element e : m->idempotents()) {
        if (e == 0 || e == m->one()) continue;
        PeirceSplit split(m, e);
        auto ce = split.corner(), cf = split.complement_corner();
        for (Element xu : ce->units())
            for (Element yu : cf->units())
                for (Element p : split.fRe()) {
                    Element x = ce->embed(xu), y = cf->embed(yu);
                    Element inv = peirce_inverse(m, e, x, p, y);
                    Element w = m->add(m->add(x, p), y);
                    EXPECT_EQ(m->mul(w, inv), m->one());
                    EXPECT_EQ(m->mul(inv, w), m->one());
                }
    }
    EXPECT_EQ(audit().failed.load(), 0u);
}
