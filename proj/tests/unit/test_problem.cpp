#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ppd/errors.hpp"
#include "ppd/problem.hpp"
#include "ppd/representation.hpp"
#include "support/random_expr.hpp"

namespace ppd {
namespace {

Grid2D unit_square(int n) { return Grid2D{make_grid(1.0, n), make_grid(1.0, n)}; }

GridFn1D constant(const Grid1D& g, double v) {
    return GridFn1D(g, std::vector<double>(g.size(), v));
}

NonClassicalData traces_of(const char* u, const Grid2D& g) {
    return nonclassical_from_field(symbolic_field(parse(u), g));
}

NonClassicalData random_data(std::mt19937_64& rng, const Grid2D& g) {
    std::uniform_real_distribution<double> u(-5, 5);
    NonClassicalData z(g);
    for (double* s : {&z.z00, &z.z10, &z.z01, &z.z00_h1, &z.z01_h1, &z.z00_h2, &z.z10_h2}) *s = u(rng);
    for (GridFn1D* f : {&z.z20, &z.z20_h2, &z.z02, &z.z02_h1})
        for (double& v : f->values()) v = u(rng);
    return z;
}

TEST(EvalBoundary, Examples) {
    const Grid1D g = make_grid(1.0, 64);
    GridFn1D six_t(g);
    for (std::size_t i = 0; i < g.size(); ++i) six_t[i] = 6 * g.node(i);
    EXPECT_NEAR(eval_boundary(BoundaryFn(1.0, 2.0, six_t), 64), 4.0, g.step() * g.step());

    const BoundaryFn zero(g);
    EXPECT_EQ(eval_boundary(zero, 17), 0.0);

    EXPECT_EQ(eval_boundary(BoundaryFn(1.0, 1.0, GridFn1D(g)), 32), 1.5);
    EXPECT_THROW(eval_boundary(zero, 65), InvalidArgument);
}

TEST(CheckAgreement, Examples) {
    const Grid2D g = unit_square(8);
    ClassicalData d = classical_from_expr(parse("x1 + x2"), g);
    const AgreementReport ok = check_agreement(d);
    EXPECT_LE(ok.max_abs(), 1e-12);

    d.psi1 = boundary_from_expr(parse("2*x1"), Var::x1, 0.0, g.g1);
    EXPECT_NEAR(check_agreement(d).r4, -1.0, 1e-12);

    const ClassicalData zero = classical_from_expr(parse("0"), g);
    EXPECT_EQ(check_agreement(zero), AgreementReport{});
}

TEST(ClassicalToNonclassical, SumOfSquares) {
    const Grid2D g = unit_square(8);
    const NonClassicalData z = classical_to_nonclassical(classical_from_expr(parse("x1^2 + x2^2"), g));
    EXPECT_EQ(z.z00, 0.0);
    EXPECT_EQ(z.z10, 0.0);
    EXPECT_EQ(z.z01, 0.0);
    EXPECT_EQ(z.z00_h1, 1.0);
    EXPECT_EQ(z.z01_h1, 0.0);
    EXPECT_EQ(z.z00_h2, 1.0);
    EXPECT_EQ(z.z10_h2, 0.0);
    EXPECT_EQ(z.z20, constant(g.g1, 2.0));
    EXPECT_EQ(z.z20_h2, constant(g.g1, 2.0));
    EXPECT_EQ(z.z02, constant(g.g2, 2.0));
    EXPECT_EQ(z.z02_h1, constant(g.g2, 2.0));
}

TEST(ClassicalToNonclassical, LinearAndZero) {
    const Grid2D g = unit_square(4);
    const NonClassicalData z = classical_to_nonclassical(classical_from_expr(parse("x1 + x2"), g));
    EXPECT_EQ(z.z00, 0.0);
    for (double s : {z.z10, z.z01, z.z00_h1, z.z01_h1, z.z00_h2, z.z10_h2}) EXPECT_EQ(s, 1.0);
    for (const GridFn1D* f : {&z.z20, &z.z20_h2, &z.z02, &z.z02_h1}) EXPECT_EQ(max_abs(*f), 0.0);

    EXPECT_EQ(classical_to_nonclassical(classical_from_expr(parse("0"), g)), NonClassicalData(g));
}

TEST(NonclassicalToClassical, TaylorReassembly) {
    const Grid2D g = unit_square(64);
    NonClassicalData z(g);
    z.z00 = 1.0;
    z.z01 = 2.0;
    for (std::size_t j = 0; j < g.cols(); ++j) z.z02[j] = 6 * g.g2.node(j);
    const ClassicalData d = nonclassical_to_classical(z);
    EXPECT_NEAR(eval_boundary(d.phi1, 64), 4.0, 1e-3);

    EXPECT_EQ(nonclassical_to_classical(NonClassicalData(g)), classical_from_expr(parse("0"), g));

    const ClassicalData sq = nonclassical_to_classical(traces_of("x1^2 + x2^2", g));
    for (std::size_t k = 0; k < g.rows(); ++k) {
        const double x = g.g1.node(k);
        // Second derivative is constant, so the trapezoid remainder is exact.
        EXPECT_NEAR(eval_boundary(sq.phi1, k), x * x, 1e-14);
        EXPECT_NEAR(eval_boundary(sq.psi1, k), x * x, 1e-14);
        EXPECT_NEAR(eval_boundary(sq.phi2, k), 1 + x * x, 1e-14);
        EXPECT_NEAR(eval_boundary(sq.psi2, k), 1 + x * x, 1e-14);
    }
    EXPECT_EQ(eval_boundary(sq.phi2, 0), 1.0);
    EXPECT_EQ(eval_boundary(sq.psi2, 64), 2.0);
}

TEST(CheckCompatibility, Examples) {
    const Grid2D g = unit_square(32);
    const double h = g.g1.step();
    EXPECT_LE(check_compatibility(traces_of("x1^2*x2^2 + x1*x2", g)).max_abs(), 10 * h * h);
    EXPECT_EQ(check_compatibility(NonClassicalData(g)), CompatibilityReport{});

    NonClassicalData z = traces_of("x1^2 + x2^2", g);
    const CompatibilityReport before = check_compatibility(z);
    z.z00_h1 += 0.001;
    const CompatibilityReport after = check_compatibility(z);
    EXPECT_NEAR(after.rho1, 0.001, 1e-10);
    EXPECT_EQ(after.rho2, 0.0);
    // z00_h1 is also the start of the far x1 = h1 edge, so rho3 moves with it.
    EXPECT_NEAR(after.rho3 - before.rho3, 0.001, 1e-12);
}

TEST(CheckCompatibility, AffineInScalars) {
    const Grid2D g{make_grid(1.5, 12), make_grid(0.75, 10)};
    std::mt19937_64 rng(1);
    const NonClassicalData base = random_data(rng, g);
    const CompatibilityReport r0 = check_compatibility(base);
    const double d = 0.37;
    const double h1 = 1.5, h2 = 0.75;
    struct Case {
        double NonClassicalData::*field;
        double d1, d2, d3;
    };
    const Case cases[] = {
        {&NonClassicalData::z00_h1, d, 0, d},       {&NonClassicalData::z00_h2, 0, d, -d},
        {&NonClassicalData::z00, -d, -d, 0},        {&NonClassicalData::z10, -h1 * d, 0, 0},
        {&NonClassicalData::z01, 0, -h2 * d, 0},    {&NonClassicalData::z01_h1, 0, 0, h2 * d},
        {&NonClassicalData::z10_h2, 0, 0, -h1 * d},
    };
    for (const Case& c : cases) {
        NonClassicalData z = base;
        z.*c.field += d;
        const CompatibilityReport r = check_compatibility(z);
        EXPECT_NEAR(r.rho1 - r0.rho1, c.d1, 1e-12);
        EXPECT_NEAR(r.rho2 - r0.rho2, c.d2, 1e-12);
        EXPECT_NEAR(r.rho3 - r0.rho3, c.d3, 1e-12);
    }
}

TEST(Conversion, RoundTripAIsBitExact) {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        const Grid2D g{make_grid(0.5 + trial * 0.1, 3 + trial % 7), make_grid(2.0, 4 + trial % 5)};
        const NonClassicalData z = random_data(rng, g);
        EXPECT_EQ(classical_to_nonclassical(nonclassical_to_classical(z)), z);
    }
}

TEST(Conversion, RoundTripBReplacesPsi1Value) {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> u(-3, 3);
    const Grid2D g{make_grid(1.0, 6), make_grid(1.2, 9)};
    for (int trial = 0; trial < 20; ++trial) {
        auto fn = [&](const Grid1D& grid) {
            BoundaryFn f(grid);
            f.v0 = u(rng);
            f.v1 = u(rng);
            for (double& v : f.v2.values()) v = u(rng);
            return f;
        };
        ClassicalData d{fn(g.g2), fn(g.g2), fn(g.g1), fn(g.g1)};
        ClassicalData expected = d;
        expected.psi1.v0 = d.phi1.v0;
        EXPECT_EQ(nonclassical_to_classical(classical_to_nonclassical(d)), expected);

        d.psi1.v0 = d.phi1.v0;  // r1 = 0
        EXPECT_EQ(check_agreement(d).r1, 0.0);
        EXPECT_EQ(nonclassical_to_classical(classical_to_nonclassical(d)), d);
    }
}

TEST(Conversion, AutomaticAgreementForTracesOfOneFunction) {
    testing::ExprGenerator gen(77);
    const Grid2D g = unit_square(32);
    const double h = g.g1.step();
    for (int trial = 0; trial < 10; ++trial) {
        const DerivativeField f = symbolic_field(parse(gen.smooth_solution()), g);
        const NonClassicalData z = nonclassical_from_field(f);
        const AgreementReport a = check_agreement(nonclassical_to_classical(z));
        const CompatibilityReport c = check_compatibility(z);
        EXPECT_EQ(a.r1, 0.0);
        EXPECT_EQ(a.r2, c.rho3);
        EXPECT_EQ(a.r3, -c.rho2);
        EXPECT_EQ(a.r4, c.rho1);
        const double scale = 1 + std::max({max_abs(f(2, 0)), max_abs(f(0, 2))});
        EXPECT_LE(a.max_abs(), 10 * h * h * scale);
    }
}

TEST(ClassicalData, FromExprMatchesConvertedTraces) {
    const Grid2D g{make_grid(1.0, 10), make_grid(2.0, 12)};
    const Expr u = parse("exp(x1)*sin(x2) + x1^3*x2");
    EXPECT_EQ(classical_from_expr(u, g), nonclassical_to_classical(nonclassical_from_field(symbolic_field(u, g))));
}

TEST(ClassicalData, FromSamplesIsSecondOrder) {
    auto error = [](int n) {
        const Grid1D g = make_grid(1.0, n);
        GridFn1D s(g);
        for (std::size_t i = 0; i < g.size(); ++i) s[i] = std::sin(2 * g.node(i)) + 1;
        const BoundaryFn f = boundary_from_samples(s);
        double e = std::abs(f.v1 - 2.0);
        for (std::size_t i = 0; i < g.size(); ++i) e = std::max(e, std::abs(f.v2[i] + 4 * std::sin(2 * g.node(i))));
        EXPECT_EQ(f.v0, 1.0);
        return e;
    };
    EXPECT_GE(std::log2(error(32) / error(64)), 1.8);
    EXPECT_THROW(boundary_from_samples(GridFn1D(make_grid(1.0, 2))), InvalidArgument);
}

TEST(ApplyOperator, Examples) {
    const Grid2D g = unit_square(8);
    Coefficients a = Coefficients::zero(g);
    a.a00 = sample(parse("1"), g);
    const GridFn2D v = apply_operator(symbolic_field(parse("x1^2*x2^2"), g), a);
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j) {
            const double x1 = g.g1.node(i), x2 = g.g2.node(j);
            EXPECT_DOUBLE_EQ(v(i, j), 4 + x1 * x1 * x2 * x2);
        }
    EXPECT_EQ(v(8, 8), 5.0);

    std::mt19937_64 rng(2);
    Coefficients any = Coefficients::zero(g);
    for (int i1 = 0; i1 <= 2; ++i1)
        for (int i2 = 0; i2 <= 2; ++i2)
            if (GridFn2D* c = any.at(i1, i2))
                for (double& x : c->values()) x = std::uniform_real_distribution<double>(-1, 1)(rng);
    EXPECT_EQ(max_abs(apply_operator(DerivativeField(g), any)), 0.0);

    EXPECT_EQ(max_abs(apply_operator(symbolic_field(parse("x1*x2"), g), Coefficients::zero(g))), 0.0);
}

TEST(ApplyOperator, EachCoefficientPairsWithItsDerivative) {
    const Grid2D g = unit_square(4);
    const Expr u = parse("exp(x1)*sin(2*x2) + x1^3*x2^2");
    const DerivativeField f = symbolic_field(u, g);
    for (int i1 = 0; i1 <= 2; ++i1)
        for (int i2 = 0; i2 <= 2; ++i2) {
            if (i1 == 2 && i2 == 2) continue;
            Coefficients a = Coefficients::zero(g);
            *a.at(i1, i2) = sample(parse("1"), g);
            const GridFn2D v = apply_operator(f, a);
            EXPECT_EQ(v, f(2, 2) + f(i1, i2)) << i1 << i2;
        }
    EXPECT_THROW(apply_operator(f, Coefficients::zero(unit_square(5))), GridMismatch);
}

}  // namespace
}  // namespace ppd
