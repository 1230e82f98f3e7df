#include <gtest/gtest.h>

#include <algorithm>
#include <vector>

#include "srone/ring.hpp"
#include "srone/ring_spec.hpp"

using namespace srone;

namespace {

std::vector<std::string> formatted(const Ring& R, const std::vector<Element>& xs) {
    std::vector<std::string> out;
    for (Element x : xs) out.push_back(R.format(x));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST(RingSpec, Orders) {
    EXPECT_EQ(construct_ring("Z/6")->order(), 6u);
    EXPECT_EQ(construct_ring("M(2,Z/2)")->order(), 16u);
    EXPECT_EQ(construct_ring("op(M(2,Z/3))")->order(), 81u);
    EXPECT_EQ(construct_ring("T(2,Z/3)")->order(), 27u);
    EXPECT_EQ(construct_ring("Z/2 x Z/4")->order(), 8u);
}

TEST(RingSpec, CornerAtE11IsZ2) {
    RingPtr c = construct_ring("corner(M(2,Z/2),[[1,0],[0,0]])");
    EXPECT_EQ(c->order(), 2u);
    EXPECT_TRUE(c->commutative());
    EXPECT_EQ(c->units().size(), 1u);
    EXPECT_EQ(c->format(c->one()), "[[1,0],[0,0]]");
}

TEST(RingSpec, ParseErrorOffset) {
    try {
        parse_ring_spec("M(2 Z/4");
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.offset(), 4u);
        EXPECT_NE(std::string(e.what()).find("offset 4"), std::string::npos);
    }
    EXPECT_THROW(parse_ring_spec(""), ParseError);
    EXPECT_THROW(parse_ring_spec("Z/"), ParseError);
    EXPECT_THROW(parse_ring_spec("M(2,Z/4))"), ParseError);
}

TEST(RingSpec, NestedProductsFlatten) {
    RingPtr a = construct_ring("(Z/2 x Z/3) x Z/5");
    RingPtr b = construct_ring("Z/2 x Z/3 x Z/5");
    EXPECT_EQ(a->id(), b->id());
    EXPECT_EQ(a->order(), 30u);
}

TEST(RingCore, UnitsAndIdempotents) {
    RingPtr z6 = make_modular(6);
    EXPECT_EQ(formatted(*z6, z6->units()), (std::vector<std::string>{"1", "5"}));
    EXPECT_EQ(formatted(*z6, z6->idempotents()), (std::vector<std::string>{"0", "1", "3", "4"}));

    RingPtr m = make_matrix(2, make_modular(2));
    EXPECT_EQ(m->units().size(), 6u);
    EXPECT_EQ(m->idempotents().size(), 8u);

    RingPtr m4 = construct_ring("M(2,Z/4)");
    EXPECT_EQ(m4->units().size(), 96u);
}

TEST(RingCore, OppositeHasSameUnits) {
    RingPtr m = construct_ring("M(2,Z/3)");
    RingPtr op = make_opposite(m);
    EXPECT_EQ(m->units(), op->units());
    Element a = m->parse("[[1,1],[0,0]]"), b = m->parse("[[0,0],[1,0]]");
    EXPECT_EQ(op->mul(a, b), m->mul(b, a));
}

TEST(RingCore, LiteralEncoding) {
    EXPECT_EQ(construct_ring("Z/6")->parse("5"), 5u);
    EXPECT_EQ(construct_ring("M(2,Z/2)")->parse("[[1,0],[0,0]]"), 8u);
    EXPECT_EQ(construct_ring("Z/2 x Z/3")->parse("(1,2)"), 5u);
    RingPtr m = construct_ring("M(2,Z/4)");
    EXPECT_EQ(m->parse("E12"), m->parse("[[0,1],[0,0]]"));
    EXPECT_THROW(m->parse("[[1,0],[0]]"), ParseError);
    EXPECT_THROW(construct_ring("Z/4")->parse("7"), ParseError);
}

TEST(RingCore, FormatParseRoundTrip) {
    for (const char* spec : {"Z/12", "M(2,Z/3)", "T(2,Z/3)", "Z/2 x Z/4", "corner(M(2,Z/2),[[1,1],[0,0]])"}) {
        RingPtr R = construct_ring(spec);
        for (Element a = 0; a < R->order(); ++a) EXPECT_EQ(R->parse(R->format(a)), a) << spec;
    }
}

TEST(RingCore, CornerRejectsBadIdempotents) {
    RingPtr m = construct_ring("M(2,Z/2)");
    EXPECT_THROW(make_corner(m, 0), PreconditionError);
    EXPECT_THROW(make_corner(m, m->parse("[[0,1],[0,0]]")), PreconditionError);
}

TEST(RingCore, QuotientIsHomomorphism) {
    RingPtr z12 = make_modular(12);
    Element g[] = {4};
    RingPtr q = make_quotient(z12, g);
    EXPECT_EQ(q->order(), 4u);
    for (Element a = 0; a < 12; ++a)
        for (Element b = 0; b < 12; ++b) {
            EXPECT_EQ(q->project(z12->add(a, b)), q->add(q->project(a), q->project(b)));
            EXPECT_EQ(q->project(z12->mul(a, b)), q->mul(q->project(a), q->project(b)));
        }
    Element unit[] = {5};
    EXPECT_THROW(make_quotient(z12, unit), PreconditionError);
}

TEST(RingCore, MatrixQuotientBySpec) {
    RingPtr q = construct_ring("quot(M(2,Z/4),[[2,0],[0,0]])");
    EXPECT_EQ(q->order(), 16u);
    EXPECT_EQ(q->units().size(), 6u);
}

TEST(RingCore, TransposeInvolution) {
    RingPtr m = with_transpose(construct_ring("M(2,Z/3)"));
    ASSERT_TRUE(m->has_involution());
    Element a = m->parse("[[1,2],[0,1]]");
    EXPECT_EQ(m->format(m->star(a)), "[[1,0],[2,1]]");
    for (Element x = 0; x < m->order(); ++x)
        for (Element y = 0; y < m->order(); y += 7) EXPECT_EQ(m->star(m->mul(x, y)), m->mul(m->star(y), m->star(x)));
}

TEST(Peirce, MatrixUnits) {
    RingPtr m = construct_ring("M(2,Z/2)");
    PeirceSplit s(m, m->parse("E11"));
    EXPECT_EQ(formatted(*m, s.eRf()), (std::vector<std::string>{"[[0,0],[0,0]]", "[[0,1],[0,0]]"}));
    EXPECT_EQ(s.eRe().size(), 2u);
    for (Element r = 0; r < m->order(); ++r) {
        auto c = s.components(r);
        EXPECT_EQ(m->add(m->add(c[0], c[1]), m->add(c[2], c[3])), r);
    }
}

TEST(Peirce, IdentitySplit) {
    RingPtr z6 = make_modular(6);
    PeirceSplit s(z6, 1);
    EXPECT_EQ(s.eRe().size(), 6u);
    EXPECT_EQ(s.eRf(), std::vector<Element>{0});
    EXPECT_EQ(s.fRe(), std::vector<Element>{0});
    EXPECT_EQ(s.fRf(), std::vector<Element>{0});

    PeirceSplit t(z6, 3);
    EXPECT_EQ(t.eRe(), (std::vector<Element>{0, 3}));
    EXPECT_EQ(t.corner()->order(), 2u);
    EXPECT_EQ(t.corner()->embed(t.corner()->one()), 3u);
}
