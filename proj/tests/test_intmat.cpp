#include <gtest/gtest.h>

#include <random>

#include "srone/intmat.hpp"

using namespace srone;

namespace {

IntMatrix M(std::initializer_list<std::initializer_list<int>> rows) {
    std::vector<std::vector<Integer>> r;
    for (auto row : rows) {
        std::vector<Integer> v;
        for (int x : row) v.emplace_back(x);
        r.push_back(v);
    }
    return IntMatrix::from_rows(r);
}

}  // namespace

TEST(Det, Basics) {
    EXPECT_EQ(det_exact(IntMatrix::identity(4)), 1);
    EXPECT_EQ(det_exact(IntMatrix::diag({7, 0})), 0);
    EXPECT_EQ(det_exact(M({{0, -1}, {2, 0}})), 2);
    EXPECT_EQ(det_exact(M({{2, 0, 1}, {1, 3, 2}, {1, 1, 2}})), 6);
    EXPECT_EQ(det_exact(M({{2, 0, 1}, {1, 3, 2}, {1, 1, 1}})), 0);
}

TEST(Det, BlockExample) {
    const IntMatrix I = IntMatrix::identity(2);
    IntMatrix m = block2(I, IntMatrix::unit(2, 1, 2), IntMatrix::unit(2, 1, 1), IntMatrix::unit(2, 2, 1, 2));
    EXPECT_EQ(det_exact(m), 2);
}

TEST(Det, LargeEntriesAreExact) {
    Integer big("123456789012345678901234567890");
    IntMatrix a = IntMatrix::diag({big, big, 3});
    EXPECT_EQ(det_exact(a), big * big * 3);
}

TEST(Snf, Examples) {
    EXPECT_EQ(snf(IntMatrix::diag({2, 0})).D, IntMatrix::diag({2, 0}));
    EXPECT_EQ(snf(M({{0, -1}, {2, 0}})).D, IntMatrix::diag({1, 2}));
    EXPECT_EQ(snf(M({{1, 1}, {0, 1}})).D, IntMatrix::identity(2));
}

TEST(Snf, RandomFactorizationsVerify) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        std::size_t n = 1 + rng() % 4;
        IntMatrix A = random_matrix(n, rng, 6);
        SnfResult r = snf(A);
        EXPECT_EQ(r.U * A * r.V, r.D);
        EXPECT_EQ(r.U * r.U_inv, IntMatrix::identity(n));
        EXPECT_EQ(r.V * r.V_inv, IntMatrix::identity(n));
        auto d = r.diagonal();
        for (std::size_t k = 0; k < n; ++k) {
            EXPECT_GE(d[k], 0);
            if (k + 1 < n && d[k] != 0) { EXPECT_EQ(d[k + 1] % d[k], 0); }
            if (d[k] == 0)
                for (std::size_t l = k; l < n; ++l) { EXPECT_EQ(d[l], 0); }
        }
    }
}

TEST(Sr1Int, TwoIdentity) {
    IntVerdict v = sr1_int(IntMatrix::diag({2, 2}));
    EXPECT_FALSE(v.sr);
    ASSERT_TRUE(v.refutation);
    EXPECT_EQ(v.refutation->d, 4);
    EXPECT_EQ(v.refutation->modulus, 65);
    EXPECT_EQ(v.refutation->residue, 16);
}

TEST(Sr1Int, Scalars) {
    for (int n = -20; n <= 20; ++n) {
        IntVerdict v = sr1_int(IntMatrix::diag({n}));
        EXPECT_EQ(v.sr, n == 0 || n == 1 || n == -1) << n;
        if (!v.sr) {
            ASSERT_TRUE(v.refutation);
            EXPECT_NE(v.refutation->residue, 1);
            EXPECT_NE(v.refutation->residue, v.refutation->modulus - 1);
        }
    }
}

TEST(Sr1Int, NamedVectors) {
    EXPECT_TRUE(sr1_int(IntMatrix::diag({7, 0})).sr);
    EXPECT_TRUE(sr1_int(IntMatrix::diag({2, 0})).sr);
    EXPECT_TRUE(sr1_int(IntMatrix::diag({0, 2})).sr);
    EXPECT_FALSE(sr1_int(IntMatrix::diag({2, 2})).sr);
    IntVerdict ab = sr1_int(IntMatrix::unit(2, 2, 1, 2));
    IntVerdict ba = sr1_int(IntMatrix::unit(2, 2, 1, 2) - IntMatrix::unit(2, 1, 2));
    EXPECT_EQ(ab.det, 0);
    EXPECT_TRUE(ab.sr);
    EXPECT_EQ(ba.det, 2);
    EXPECT_FALSE(ba.sr);
}

TEST(Witness, UnimodularTakesZero) {
    IntMatrix A = M({{2, 1}, {1, 1}}), X = M({{3, -1}, {4, 5}});
    EXPECT_EQ(int_witness(A, X), IntMatrix(2));
}

TEST(Witness, OneByOneZero) {
    IntMatrix B = int_witness(IntMatrix::diag({0}), IntMatrix::diag({5}));
    EXPECT_EQ(B, IntMatrix::diag({1}));
}

TEST(Witness, Diag70) {
    IntMatrix A = IntMatrix::diag({7, 0});
    IntMatrix B = int_witness(A, IntMatrix(2));
    EXPECT_EQ(abs(det_exact(A + B)), 1);
}

TEST(Witness, RandomCertification) {
    std::mt19937_64 rng(2024);
    const IntMatrix I = IntMatrix::identity(3);
    for (int i = 0; i < 100; ++i) {
        IntMatrix A = (i % 2) ? random_unimodular(3, rng)
                              : random_unimodular(3, rng) *
                                    IntMatrix::diag({Integer(int(rng() % 9) - 4), Integer(int(rng() % 9) - 4), 0}) *
                                    random_unimodular(3, rng);
        IntMatrix X = random_matrix(3, rng, 5);
        IntCertificate c = int_certificate(A, X);
        EXPECT_EQ(c.u, A + (I - A * X) * c.b);
        EXPECT_EQ(abs(det_exact(c.u)), 1);
        EXPECT_EQ(c.u * c.u_inv, I);
    }
}

TEST(Witness, RejectsNonSr1) { EXPECT_THROW(int_witness(IntMatrix::diag({2, 2}), IntMatrix(2)), PreconditionError); }

TEST(StructuralRules, Tags) {
    EXPECT_EQ(structural_rules(IntMatrix::unit(2, 1, 2, 5)), "single-row");
    IntMatrix L = M({{1, 0, 0}, {4, 0, 0}, {-2, 7, -1}});
    EXPECT_EQ(structural_rules(L), "triangular");
    EXPECT_FALSE(structural_rules(IntMatrix::diag({5, 3})));
    EXPECT_FALSE(sr1_int(IntMatrix::diag({5, 3})).sr);
}

TEST(CompleteRow, Examples) {
    EXPECT_EQ(*complete_row({1, 0, 0}), IntMatrix::identity(3));
    auto V = complete_row({2, 3});
    ASSERT_TRUE(V);
    EXPECT_EQ((*V)(0, 0), 2);
    EXPECT_EQ((*V)(0, 1), 3);
    EXPECT_EQ(abs(det_exact(*V)), 1);
    EXPECT_FALSE(complete_row({2, 4}));
    auto W = complete_row({6, 10, 15});
    ASSERT_TRUE(W);
    EXPECT_EQ(abs(det_exact(*W)), 1);
}

TEST(Bezout, Examples) {
    auto b = bezout_matrix(2, 3);
    EXPECT_EQ(b.a, 1);
    auto c = bezout_matrix(4, 6);
    EXPECT_EQ(c.a, 2);
    EXPECT_EQ(c.U, M({{2, 3}, {1, 2}}));
    EXPECT_EQ(c.a * IntMatrix::unit(2, 1, 1) * c.U, c.C);
    auto d = bezout_matrix(1, 0);
    EXPECT_EQ(d.a, 1);
    EXPECT_EQ(d.U, IntMatrix::identity(2));
    EXPECT_THROW(bezout_matrix(0, 0), PreconditionError);
}

TEST(VariantRefute, Diag70) {
    VariantRefutation r = variant_refute(IntMatrix::diag({7, 0}), IntMatrix::diag({2, 1}), 10);
    EXPECT_FALSE(r.unit_witness);
    EXPECT_FALSE(r.idempotent_witness);
    EXPECT_GT(r.unit_candidates, 0u);
    EXPECT_GT(r.idempotent_candidates, 0u);
    EXPECT_TRUE(r.unit_congruence);
    EXPECT_TRUE(r.idempotent_congruence);
    EXPECT_EQ(r.det_trivial_zero, 0);
    EXPECT_EQ(r.det_trivial_one, 9);
}

TEST(BlockAudit, DerivedOrientation) {
    BlockAudit au = audit_block_example();
    EXPECT_EQ(au.m.det, 2);
    EXPECT_EQ(au.block_t.det, 0);
    EXPECT_TRUE(au.criteria_agree);
    EXPECT_EQ(au.sr_one, "M^T (block)");
    EXPECT_TRUE(au.discrepancy);
    EXPECT_EQ(au.m.schur, IntMatrix::unit(2, 2, 1, 2) - IntMatrix::unit(2, 1, 2));
}
