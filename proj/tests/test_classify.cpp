#include <gtest/gtest.h>

#include <algorithm>

#include "srone/classify.hpp"
#include "srone/ring_spec.hpp"
#include "srone/suite.hpp"

using namespace srone;

TEST(Classify, NonRegularNilpotentInM2Z4) {
    RingPtr m = construct_ring("M(2,Z/4)");
    auto f = classify(m, m->parse("[[2,0],[0,0]]"));
    EXPECT_FALSE(f.regular);
    EXPECT_TRUE(f.nilpotent);
    EXPECT_EQ(f.nilpotent_index, 2u);
    EXPECT_TRUE(f.in_radical);
}

TEST(Classify, RadicalElementOfZ4) {
    RingPtr z4 = make_modular(4);
    auto f = classify(z4, 2);
    EXPECT_TRUE(f.in_radical);
    EXPECT_EQ(f.nilpotent_index, 2u);
    EXPECT_TRUE(f.quasi_nilpotent);
}

TEST(Classify, UnitRegularNotStronglyRegular) {
    RingPtr m = construct_ring("M(2,Z/4)");
    auto f = classify(m, m->parse("[[2,1],[0,0]]"));
    EXPECT_TRUE(f.unit_regular);
    EXPECT_FALSE(f.strongly_regular);
}

TEST(Classify, UnitsAreEverything) {
    RingPtr m = construct_ring("M(2,Z/3)");
    RingAnalysis an(m);
    for (Element u : m->units()) {
        EXPECT_TRUE(an.regular(u));
        EXPECT_TRUE(an.unit_regular(u));
        EXPECT_TRUE(an.strongly_regular(u));
        EXPECT_TRUE(an.clean(u));
    }
}

TEST(Classify, InnerInverses) {
    RingPtr m = construct_ring("M(2,Z/2)");
    Element e12 = m->parse("E12"), e21 = m->parse("E21");
    auto inner = inner_inverses(*m, e12);
    EXPECT_NE(std::find(inner.begin(), inner.end(), e21), inner.end());
    EXPECT_EQ(inner_inverses(*m, 0).size(), m->order());
    for (Element e : m->idempotents()) {
        auto in = inner_inverses(*m, e);
        EXPECT_NE(std::find(in.begin(), in.end(), e), in.end());
    }
}

TEST(Classify, ReflexiveInverses) {
    RingPtr m = construct_ring("M(2,Z/3)");
    for (Element u : m->units()) EXPECT_EQ(reflexive_inverses(*m, u), std::vector<Element>{m->unit_inverse(u)});
    EXPECT_EQ(reflexive_inverses(*m, 0), std::vector<Element>{0});

    // u a u is reflexive when u is a unit inner inverse of a
    RingAnalysis an(m);
    for (Element a = 0; a < m->order(); ++a) {
        if (!an.unit_regular(a)) continue;
        auto refl = reflexive_inverses(*m, a);
        for (Element u : m->units())
            if (m->mul(a, u, a) == a) { EXPECT_NE(std::find(refl.begin(), refl.end(), m->mul(u, a, u)), refl.end()); }
    }
}

TEST(Classify, Radicals) {
    RingPtr z4 = make_modular(4);
    EXPECT_EQ(radical(z4), (std::vector<Element>{0, 2}));
    EXPECT_EQ(radical(construct_ring("M(2,Z/2)")), std::vector<Element>{0});
    RingPtr t = construct_ring("T(2,Z/2)");
    EXPECT_EQ(radical(t), (std::vector<Element>{0, t->parse("E12")}));
}

TEST(Classify, StrongNilpotence) {
    RingPtr t = construct_ring("T(2,Z/2)");
    EXPECT_TRUE(is_strongly_nilpotent(t, t->parse("E12")));
    RingPtr m = construct_ring("M(2,Z/2)");
    EXPECT_FALSE(is_strongly_nilpotent(m, m->parse("E12")));
    EXPECT_TRUE(is_strongly_nilpotent(m, 0));
}

TEST(Classify, StrongNilpotenceMatchesNilpotenceWhenCommutative) {
    for (std::uint32_t n : {4u, 8u, 9u, 12u}) {
        RingPtr z = make_modular(n);
        RingAnalysis an(z);
        for (Element a = 0; a < n; ++a) EXPECT_EQ(an.strongly_nilpotent(a), an.nilpotent(a)) << n << " " << a;
    }
}

TEST(Classify, Suitability) {
    RingPtr z6 = make_modular(6);
    EXPECT_TRUE(is_suitable(z6, 3));
    RingPtr z4 = make_modular(4);
    for (Element a = 0; a < 4; ++a) EXPECT_TRUE(is_suitable(z4, a));
    RingPtr m = construct_ring("T(2,Z/3)");
    for (Element e : m->idempotents()) EXPECT_TRUE(is_suitable(m, e));
}

TEST(Classify, RingPredicates) {
    auto m = ring_predicates(construct_ring("M(2,Z/2)"));
    EXPECT_TRUE(m.ic);
    EXPECT_TRUE(m.exchange);
    EXPECT_TRUE(m.stable_range_one);
    auto z = ring_predicates(make_modular(6));
    EXPECT_TRUE(z.abelian);
    EXPECT_TRUE(z.ic);
    EXPECT_TRUE(ring_predicates(construct_ring("T(2,Z/2)")).exchange);
}

TEST(Classify, RegistryInclusionsAndSr1) {
    for (const auto& d : default_registry()) {
        if (d.integer) continue;
        RingAnalysis an(d.ring);
        EXPECT_TRUE(an.predicates().stable_range_one) << d.id;
        for (Element a = 0; a < d.ring->order(); ++a) {
            if (d.ring->is_unit(a) || d.ring->is_idempotent(a)) { EXPECT_TRUE(an.unit_regular(a)) << d.id; }
            if (an.unit_regular(a)) { EXPECT_TRUE(an.regular(a)) << d.id; }
            if (an.strongly_regular(a)) { EXPECT_TRUE(an.unit_regular(a)) << d.id; }
        }
    }
}
