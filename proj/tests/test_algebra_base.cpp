#include "superweyl/json_io.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace superweyl;

namespace {

Polynomial monic(const Polynomial& f) { return f.is_zero() ? f : Scalar(1 / f.leading()) * f; }

// Euclid on dense polynomials, independent of the factored representation.
Polynomial euclid_gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
        Polynomial r = a.mod(b);
        a = b;
        b = r;
    }
    return monic(a);
}

Polynomial expand(const std::vector<std::pair<Scalar, unsigned>>& factors) {
    Polynomial f = Polynomial::constant(1);
    for (const auto& [root, mult] : factors)
        for (unsigned i = 0; i < mult; ++i) f = f * Polynomial{-root, 1};
    return f;
}

FactoredIdeal random_ideal(std::mt19937& rng) {
    std::uniform_int_distribution<int> pts(0, 3), root(-2, 2), mult(1, 3);
    std::vector<std::pair<Scalar, unsigned>> e;
    const int n = pts(rng);
    for (int i = 0; i < n; ++i) e.emplace_back(Scalar(root(rng)), static_cast<unsigned>(mult(rng)));
    return ideal_from_points(e);
}

}  // namespace

TEST(Polynomial, ArithmeticAndEvaluation) {
    const Polynomial f{1, 2, 3};  // 1 + 2t + 3t^2
    EXPECT_EQ(f.degree(), 2);
    EXPECT_EQ(f.evaluate(2), Scalar(17));
    EXPECT_EQ(f - f, Polynomial{});
    EXPECT_EQ(Polynomial{}.degree(), Polynomial::zero_degree);
    const auto [q, r] = f.divmod(Polynomial{-1, 1});
    EXPECT_EQ((q * Polynomial{-1, 1} + r), f);
    EXPECT_EQ(r, Polynomial::constant(6));
    EXPECT_THROW(f.divmod(Polynomial{}), InvalidInput);
}

TEST(Ideal, FromPointsExamples) {
    const auto a = ideal_from_points({{0, 1u}, {1, 1u}});
    EXPECT_EQ(a.generator(), (Polynomial{0, -1, 1}));
    EXPECT_EQ(ideal_support(a), (std::set<Scalar>{0, 1}));
    EXPECT_EQ(a.codimension(), 2u);

    const auto unit = ideal_from_points({});
    EXPECT_TRUE(unit.is_unit());
    EXPECT_TRUE(ideal_support(unit).empty());
    EXPECT_EQ(unit.codimension(), 0u);

    const auto merged = ideal_from_points({{2, 2u}, {2, 1u}});
    EXPECT_EQ(merged.codimension(), 3u);
    EXPECT_EQ(merged.generator(), expand({{2, 3u}}));
    EXPECT_THROW(ideal_from_points({{0, 0u}}), InvalidInput);
}

TEST(Ideal, SupportOfPowers) {
    const auto i = ideal_from_points({{2, 1u}});
    EXPECT_EQ(ideal_support(ideal_combine(i, i, IdealOp::Power, 3)), ideal_support(i));
}

TEST(Ideal, CombineExamples) {
    const auto t = ideal_from_points({{0, 1u}});
    const auto t1 = ideal_from_points({{1, 1u}});
    EXPECT_TRUE(ideal_combine(t, t1, IdealOp::Sum).is_unit());
    EXPECT_EQ(ideal_combine(t, t1, IdealOp::Product), ideal_combine(t, t1, IdealOp::Intersection));
    EXPECT_EQ(ideal_combine(t, t1, IdealOp::Product).generator(), (Polynomial{0, -1, 1}));
    EXPECT_EQ(ideal_combine(t, t, IdealOp::Sum), t);
    const auto sq = ideal_combine(ideal_from_points({{0, 1u}, {1, 1u}}), {}, IdealOp::Power, 2);
    EXPECT_EQ(sq.codimension(), 4u);
    EXPECT_EQ(sq.generator(), expand({{0, 1u}, {1, 1u}}).pow(2));
    EXPECT_THROW(ideal_combine(t, t, IdealOp::Power, 0), InvalidInput);
}

TEST(Ideal, CombineMatchesDensePolynomialOracles) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const auto a = random_ideal(rng), b = random_ideal(rng);
        const Polynomial fa = a.generator(), fb = b.generator();
        const Polynomial g = euclid_gcd(fa, fb);
        EXPECT_EQ(ideal_combine(a, b, IdealOp::Sum).generator(), g);
        EXPECT_EQ(ideal_combine(a, b, IdealOp::Product).generator(), fa * fb);
        EXPECT_EQ(ideal_combine(a, b, IdealOp::Intersection).generator(), monic((fa * fb).divmod(g).first));
        bool disjoint = true;
        for (const auto& z : ideal_support(a)) disjoint = disjoint && !ideal_support(b).count(z);
        if (disjoint) {
            EXPECT_TRUE(ideal_combine(a, b, IdealOp::Sum).is_unit());
            EXPECT_EQ(ideal_combine(a, b, IdealOp::Product), ideal_combine(a, b, IdealOp::Intersection));
        }
    }
}

TEST(TruncatedAlgebra, Examples) {
    const auto b1 = truncated_algebra(ideal_from_points({{0, 1u}}));
    EXPECT_EQ(b1.dim(), 1u);
    EXPECT_EQ(b1.coordinates(Polynomial{5, 7}), (ScalarVector{5}));

    const auto b2 = truncated_algebra(ideal_from_points({{0, 2u}}));
    EXPECT_EQ(b2.dim(), 2u);
    EXPECT_EQ(b2.product(1, 1), (ScalarVector{0, 0}));

    EXPECT_THROW(truncated_algebra(ideal_from_points({})), InvalidInput);
}

TEST(TruncatedAlgebra, ChineseRemainderIdempotents) {
    const auto b = truncated_algebra(ideal_from_points({{0, 1u}, {1, 1u}}));
    const ScalarVector e0{1, -1}, e1{0, 1};
    EXPECT_EQ(b.multiply(e0, e0), e0);
    EXPECT_EQ(b.multiply(e1, e1), e1);
    EXPECT_EQ(b.multiply(e0, e1), (ScalarVector{0, 0}));
    EXPECT_EQ(b.multiply(e0, b.coordinates(Polynomial::constant(1))), e0);
}

TEST(TruncatedAlgebra, CrtOracleOnRandomIdeals) {
    // f mod prod (t - z)^m is determined by the Taylor data of f at each z.
    std::mt19937 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const auto I = random_ideal(rng);
        if (I.is_unit()) continue;
        const auto B = truncated_algebra(I);
        std::uniform_int_distribution<int> c(-3, 3);
        Polynomial f{Scalar(c(rng)), Scalar(c(rng)), Scalar(c(rng)), Scalar(c(rng)), Scalar(c(rng)), Scalar(c(rng))};
        const Polynomial r(B.coordinates(f));
        for (const auto& [z, m] : I.factors()) {
            Polynomial df = f - r;
            for (unsigned k = 0; k < m; ++k) {
                EXPECT_EQ(df.evaluate(z), Scalar(0));
                ScalarVector d;
                for (int i = 1; i <= df.degree(); ++i) d.push_back(Scalar(i) * df[static_cast<std::size_t>(i)]);
                df = Polynomial(d);
            }
        }
    }
}

TEST(TruncatedAlgebra, AssociativeAndCommutative) {
    const auto B = truncated_algebra(ideal_from_points({{0, 2u}, {1, 1u}, {Scalar(1, 2), 1u}}));
    const std::size_t n = B.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            EXPECT_EQ(B.product(i, j), B.product(j, i));
            for (std::size_t k = 0; k < n; ++k) {
                ScalarVector ei(n), ej(n), ek(n);
                ei[i] = ej[j] = ek[k] = 1;
                EXPECT_EQ(B.multiply(B.multiply(ei, ej), ek), B.multiply(ei, B.multiply(ej, ek)));
            }
        }
}

TEST(Json, PolynomialAndIdealRoundTrip) {
    const Polynomial f{Scalar(1, 3), 0, -2};
    EXPECT_EQ(to_json(f).dump(), R"(["1/3","0","-2"])");
    EXPECT_EQ(polynomial_from_json(to_json(f)), f);
    const auto I = ideal_from_points({{Scalar(-1, 2), 2u}, {3, 1u}});
    EXPECT_EQ(to_json(I).dump(), R"([{"root":"-1/2","mult":2},{"root":"3","mult":1}])");
    EXPECT_EQ(ideal_from_json(to_json(I)), I);
    EXPECT_THROW(ideal_from_json(Json::parse(R"([{"root":"1"}])")), InvalidInput);
    EXPECT_THROW(polynomial_from_json(Json::parse(R"([1])")), InvalidInput);
}

TEST(Scalar, ParseAndRender) {
    EXPECT_EQ(parse_scalar("-6/4"), Scalar(-3, 2));
    EXPECT_EQ(to_string(Scalar(-3, 2)), "-3/2");
    EXPECT_EQ(to_string(Scalar(4)), "4");
    EXPECT_THROW(parse_scalar("1/0"), InvalidInput);
    EXPECT_THROW(parse_scalar("x"), InvalidInput);
    EXPECT_THROW(parse_scalar(""), InvalidInput);
}
