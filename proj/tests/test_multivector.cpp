#include "oracles.hpp"

#include <mvcalc/dual.hpp>
#include <mvcalc/generate.hpp>
#include <mvcalc/multivector.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace mvcalc;

namespace {

constexpr double kAtol = 1e-9;

Multivector mv(int dim, std::initializer_list<Term<double>> terms) { return Multivector(dim, terms); }
Multivector e(int dim, std::uint32_t mask, double c = 1.0) { return Multivector::blade(dim, BladeMask{mask}, c); }

void expect_near(const Multivector& a, const Multivector& b, double tol = kAtol) {
    EXPECT_LE(distance(a, b), tol) << "dims " << a.dim() << "/" << b.dim();
}

} // namespace

TEST(Multivector, CanonicalFormDropsZeros) {
    Multivector x = mv(3, {{BladeMask{1}, 2.0}, {BladeMask{1}, -2.0}, {BladeMask{3}, 0.0}});
    EXPECT_TRUE(x.is_zero());
    EXPECT_EQ(x, Multivector(3));
}

TEST(Multivector, RejectsBadDimsAndMasks) {
    EXPECT_THROW(Multivector(0), std::invalid_argument);
    EXPECT_THROW(Multivector(13), std::invalid_argument);
    EXPECT_THROW(Multivector::blade(2, BladeMask{0b100}), std::invalid_argument);
}

TEST(Multivector, EqualityNeedsSameDim) { EXPECT_NE(Multivector::scalar(2, 1.0), Multivector::scalar(3, 1.0)); }

TEST(Add, Examples) {
    EXPECT_EQ(add(e(2, 1), e(2, 2)), mv(2, {{BladeMask{1}, 1.0}, {BladeMask{2}, 1.0}}));
    EXPECT_TRUE(add(e(2, 1), e(2, 1, -1.0)).is_zero());
    Multivector lhs = mv(2, {{BladeMask{0}, 2.0}, {BladeMask{3}, 3.0}});
    Multivector rhs = mv(2, {{BladeMask{0}, 1.0}, {BladeMask{1}, 1.0}});
    EXPECT_EQ(add(lhs, rhs), mv(2, {{BladeMask{0}, 3.0}, {BladeMask{1}, 1.0}, {BladeMask{3}, 3.0}}));
}

TEST(Add, DimensionMismatchThrows) { EXPECT_THROW(add(e(2, 1), e(3, 1)), DimensionMismatch); }

TEST(Scale, Examples) {
    Multivector x = add(e(2, 1), e(2, 3));
    EXPECT_TRUE(scale(0.0, x).is_zero());
    EXPECT_EQ(scale(1.0, x), x);
    EXPECT_EQ(scale(-2.0, e(2, 2, 3.0)), e(2, 2, -6.0));
}

TEST(Wedge, Examples) {
    EXPECT_EQ(wedge(add(e(2, 1), e(2, 2)), e(2, 2)), e(2, 3));
    EXPECT_EQ(wedge(e(2, 2), e(2, 1)), e(2, 3, -1.0));
    // (1 + e1) ^ (1 + e2) distributed by hand: 1 + e2 + e1 + e1^e2.
    Multivector lhs = wedge(add(e(2, 0), e(2, 1)), add(e(2, 0), e(2, 2)));
    EXPECT_EQ(lhs, mv(2, {{BladeMask{0}, 1.0}, {BladeMask{1}, 1.0}, {BladeMask{2}, 1.0}, {BladeMask{3}, 1.0}}));
}

TEST(Wedge, DimensionMismatchThrows) { EXPECT_THROW(wedge(e(2, 1), e(3, 1)), DimensionMismatch); }

TEST(Geometric, Examples) {
    EXPECT_EQ(geometric(e(2, 1), e(2, 1)), Multivector::scalar(2, 1.0));
    EXPECT_EQ(geometric(e(2, 1), e(2, 2)), e(2, 3));
    EXPECT_EQ(geometric(e(2, 3), e(2, 3)), Multivector::scalar(2, -1.0));
}

TEST(Geometric, MatchesIndexShufflingOracleOnRandomInputs) {
    gen::Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        int dim = 1 + rng.below(6);
        Multivector x = gen::multivector(rng, dim);
        Multivector y = gen::multivector(rng, dim);
        expect_near(geometric(x, y), oracle::geometric(x, y), 1e-12);
    }
}

TEST(ScalarProduct, Examples) {
    Multivector x = mv(2, {{BladeMask{1}, 2.0}, {BladeMask{3}, 3.0}});
    Multivector y = mv(2, {{BladeMask{1}, 1.0}, {BladeMask{3}, 1.0}});
    EXPECT_DOUBLE_EQ(scalar_product(x, y), 5.0);
    EXPECT_DOUBLE_EQ(scalar_product(e(2, 1), e(2, 3)), 0.0);
    Multivector z = mv(2, {{BladeMask{0}, 1.0}, {BladeMask{1}, 1.0}, {BladeMask{3}, 1.0}});
    EXPECT_DOUBLE_EQ(scalar_product(z, z), 3.0);
}

TEST(ScalarProduct, EqualsScalarPartOfReverseTimesOther) {
    gen::Rng rng(5);
    for (int i = 0; i < 300; ++i) {
        int dim = 1 + rng.below(6);
        Multivector x = gen::multivector(rng, dim);
        Multivector y = gen::multivector(rng, dim);
        EXPECT_NEAR(scalar_product(x, y), geometric(reversion(x), y)[BladeMask{}], kAtol);
    }
}

TEST(ScalarProduct, PositiveDefinite) {
    gen::Rng rng(9);
    for (int i = 0; i < 300; ++i) {
        Multivector x = gen::multivector(rng, 1 + rng.below(6));
        double q = scalar_product(x, x);
        EXPECT_GE(q, 0.0);
        EXPECT_EQ(q == 0.0, x.is_zero());
    }
    EXPECT_EQ(scalar_product(Multivector(4), Multivector(4)), 0.0);
}

TEST(Contraction, Examples) {
    // e1 _| e12 = <e1 e12>_1 = e2.
    EXPECT_EQ(grade_project(geometric(e(2, 1), e(2, 3)), 1), e(2, 2));
    EXPECT_EQ(left_contraction(e(2, 1), e(2, 3)), e(2, 2));
    EXPECT_TRUE(left_contraction(e(2, 3), e(2, 1)).is_zero());
    Multivector x = mv(3, {{BladeMask{0}, 2.0}, {BladeMask{5}, -1.0}, {BladeMask{7}, 0.5}});
    EXPECT_EQ(left_contraction(Multivector::scalar(3, 1.0), x), x);
    EXPECT_EQ(right_contraction(x, Multivector::scalar(3, 1.0)), x);
    EXPECT_EQ(right_contraction(e(2, 3), e(2, 2)), e(2, 1));
}

TEST(Contraction, ConsistentWithGradedGeometricProductExhaustively) {
    for (int dim = 1; dim <= 5; ++dim)
        for (std::uint32_t a = 0; a < (1u << dim); ++a)
            for (std::uint32_t b = 0; b < (1u << dim); ++b) {
                Multivector ea = e(dim, a), eb = e(dim, b);
                int ga = BladeMask{a}.grade(), gb = BladeMask{b}.grade();
                Multivector gp = geometric(ea, eb);
                Multivector left = gb >= ga ? grade_project(gp, gb - ga) : Multivector(dim);
                Multivector right = ga >= gb ? grade_project(gp, ga - gb) : Multivector(dim);
                ASSERT_EQ(left_contraction(ea, eb), left) << dim << ":" << a << "," << b;
                ASSERT_EQ(right_contraction(ea, eb), right) << dim << ":" << a << "," << b;
                Multivector w = grade_project(gp, std::min(dim, ga + gb));
                ASSERT_EQ(wedge(ea, eb), (a & b) ? Multivector(dim) : w);
            }
}

TEST(GradeProject, Examples) {
    Multivector x = mv(2, {{BladeMask{0}, 3.0}, {BladeMask{1}, 2.0}, {BladeMask{3}, 1.0}});
    EXPECT_EQ(grade_project(x, 1), e(2, 1, 2.0));
    EXPECT_TRUE(grade_project(e(2, 3), 0).is_zero());
    EXPECT_THROW(grade_project(x, 3), std::out_of_range);
    EXPECT_THROW(grade_project(x, -1), std::out_of_range);
}

TEST(GradeProject, PartitionIsExact) {
    Multivector x = mv(3, {{BladeMask{0}, 1.0}, {BladeMask{2}, 1.0}, {BladeMask{7}, 5.0}});
    gen::Rng rng(3);
    for (int i = 0; i < 100; ++i) {
        Multivector y = i == 0 ? x : gen::multivector(rng, 1 + rng.below(6));
        Multivector sum(y.dim());
        for (int k = 0; k <= y.dim(); ++k) sum = add(sum, grade_project(y, k));
        EXPECT_EQ(sum, y);
    }
}

TEST(Reversion, Examples) {
    EXPECT_EQ(reversion(e(3, 1)), e(3, 1));
    EXPECT_EQ(reversion(e(3, 3)), e(3, 3, -1.0));
    Multivector x = mv(3, {{BladeMask{0}, 1.0}, {BladeMask{3}, 1.0}, {BladeMask{7}, 1.0}});
    EXPECT_EQ(reversion(x), mv(3, {{BladeMask{0}, 1.0}, {BladeMask{3}, -1.0}, {BladeMask{7}, -1.0}}));
}

TEST(Norm, Examples) {
    EXPECT_EQ(norm(Multivector(2)), 0.0);
    Multivector x = mv(2, {{BladeMask{0}, 1.0}, {BladeMask{1}, 1.0}, {BladeMask{3}, 1.0}});
    EXPECT_DOUBLE_EQ(norm(x), std::sqrt(3.0));
    for (double l = -3.0; l <= 3.0; l += 0.25)
        EXPECT_NEAR(norm(mv(2, {{BladeMask{0}, std::cos(l)}, {BladeMask{3}, std::sin(l)}})), 1.0, 1e-15);
}

TEST(NormInequalities, CauchySchwarzAndTriangleOnRandomPairs) {
    gen::Rng rng(77);
    for (int i = 0; i < 2000; ++i) {
        int dim = 1 + rng.below(6);
        Multivector x = gen::multivector(rng, dim);
        Multivector y = rng.chance(0.2) ? scale(gen::coefficient(rng), x) : gen::multivector(rng, dim);
        EXPECT_LE(std::abs(scalar_product(x, y)), norm(x) * norm(y) + kAtol);
        EXPECT_LE(norm(add(x, y)), norm(x) + norm(y) + kAtol);
    }
}

TEST(Products, BilinearOnRandomTriples) {
    gen::Rng rng(21);
    using Fn = Multivector (*)(const Multivector&, const Multivector&);
    const Fn products[] = {&wedge<double>, &geometric<double>, &left_contraction<double>, &right_contraction<double>,
                           &scalar_product_mv<double>};
    for (int i = 0; i < 200; ++i) {
        int dim = 1 + rng.below(6);
        Multivector x = gen::multivector(rng, dim), y = gen::multivector(rng, dim), z = gen::multivector(rng, dim);
        double a = gen::coefficient(rng);
        for (Fn p : products) {
            expect_near(p(add(x, y), z), add(p(x, z), p(y, z)));
            expect_near(p(x, add(y, z)), add(p(x, y), p(x, z)));
            expect_near(p(scale(a, x), y), scale(a, p(x, y)));
            expect_near(p(x, scale(a, y)), scale(a, p(x, y)));
        }
    }
}

TEST(Products, WedgeAndGeometricAssociative) {
    gen::Rng rng(31);
    for (int i = 0; i < 200; ++i) {
        int dim = 1 + rng.below(6);
        Multivector x = gen::multivector(rng, dim), y = gen::multivector(rng, dim), z = gen::multivector(rng, dim);
        expect_near(wedge(wedge(x, y), z), wedge(x, wedge(y, z)));
        expect_near(geometric(geometric(x, y), z), geometric(x, geometric(y, z)));
    }
}

TEST(Products, VectorIdentities) {
    gen::Rng rng(41);
    for (int i = 0; i < 200; ++i) {
        int dim = 1 + rng.below(6);
        Multivector u = grade_project(gen::multivector(rng, dim, 1.0), 1);
        Multivector v = grade_project(gen::multivector(rng, dim, 1.0), 1);
        expect_near(wedge(u, v), negate(wedge(v, u)));
        EXPECT_TRUE(wedge(u, u).is_zero() || norm(wedge(u, u)) <= kAtol);
        expect_near(geometric(u, v), add(Multivector::scalar(dim, scalar_product(u, v)), wedge(u, v)));
    }
}

TEST(Multivector, DualCoefficientsKeepDerivativeOnlyTerms) {
    BasicMultivector<Dual> x = BasicMultivector<Dual>::blade(2, BladeMask{1}, Dual{0.0, 1.0});
    EXPECT_EQ(x.size(), 1u);
    EXPECT_TRUE(BasicMultivector<Dual>::blade(2, BladeMask{1}, Dual{0.0, 0.0}).is_zero());
}
