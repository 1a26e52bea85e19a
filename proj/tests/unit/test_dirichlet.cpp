#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "ppd/dirichlet.hpp"
#include "ppd/errors.hpp"
#include "ppd/verify.hpp"

namespace ppd {
namespace {

Grid2D unit_square(int n) { return Grid2D{make_grid(1.0, n), make_grid(1.0, n)}; }

Coefficients only_a00(const Grid2D& g) {
    Coefficients a = Coefficients::zero(g);
    a.a00 = sample(parse("1"), g);
    return a;
}

CoefficientExprs mild_coefficients() {
    CoefficientExprs e;
    e.a21 = parse("0.3*x2");
    e.a12 = parse("0.2");
    e.a20 = parse("0.1*x1");
    e.a02 = parse("-0.2");
    e.a11 = parse("0.5");
    e.a10 = parse("x2");
    e.a01 = parse("-0.3*x1");
    e.a00 = parse("1");
    return e;
}

double norm2(std::span<const double> v) {
    return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

TEST(ClosureSystem, ShapeAndZeroCoefficientStructure) {
    const Grid2D g = unit_square(4);
    const DirichletProblem p{g, Coefficients::zero(g), GridFn2D(g), NonClassicalData(g)};
    const ClosureSystem cs = assemble_closure_system(p);
    ASSERT_EQ(cs.rows, 12u);
    ASSERT_EQ(cs.cols, 11u);
    ASSERT_EQ(cs.matrix.size(), 132u);
    EXPECT_NEAR(cs(0, 0), 1.0, 1e-15);
    EXPECT_NEAR(cs(1, 0), 1.0, 1e-15);
    for (std::size_t r = 2; r < cs.rows; ++r) EXPECT_EQ(cs(r, 0), 0.0) << r;
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t k = 0; k < 5; ++k) EXPECT_NEAR(cs(2 + i, 1 + k), i == k ? 1.0 : 0.0, 1e-15);
    for (double v : cs.offset) EXPECT_EQ(v, 0.0);
}

TEST(ClosureSystem, ScalarColumnScalesWithDomain) {
    const Grid2D g{make_grid(2.0, 4), make_grid(0.5, 6)};
    const DirichletProblem p{g, Coefficients::zero(g), GridFn2D(g), NonClassicalData(g)};
    const ClosureSystem cs = assemble_closure_system(p);
    EXPECT_EQ(cs.rows, 2u + 5u + 7u);
    EXPECT_NEAR(cs(0, 0), 2.0, 1e-15);
    EXPECT_NEAR(cs(1, 0), 0.5, 1e-15);
    for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(cs(2 + i, 1 + i), 0.5, 1e-15);
}

TEST(ClosureSystem, AffineConsistency) {
    const Grid2D g{make_grid(1.0, 6), make_grid(1.2, 5)};
    const ManufacturedCase mc = manufactured_problem(parse("sin(x1)*exp(x2)"), mild_coefficients(), g);
    const ClosureSystem cs = assemble_closure_system(mc.problem);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int trial = 0; trial < 3; ++trial) {
        std::vector<double> theta(cs.cols);
        for (double& t : theta) t = u(rng);
        const std::vector<double> direct = evaluate_closure(mc.problem, theta);
        ASSERT_EQ(direct.size(), cs.rows);
        for (std::size_t r = 0; r < cs.rows; ++r) {
            double affine = -cs.offset[r];
            for (std::size_t c = 0; c < cs.cols; ++c) affine += cs(r, c) * theta[c];
            EXPECT_NEAR(direct[r], affine, 1e-9) << "row " << r;
        }
    }
}

TEST(SolveDirichlet, ZeroProblem) {
    const Grid2D g = unit_square(8);
    const Solution s = solve_dirichlet({g, only_a00(g), GridFn2D(g), NonClassicalData(g)});
    EXPECT_EQ(s.field, DerivativeField(g));
    for (double t : s.theta) EXPECT_EQ(t, 0.0);
    EXPECT_EQ(s.diagnostics.closure_residual, 0.0);
    EXPECT_EQ(s.diagnostics.equation_residual, 0.0);
    EXPECT_EQ(s.diagnostics.compat.max_abs(), 0.0);
    EXPECT_EQ(s.diagnostics.closure_rank, 1 + 9 + 9);
}

TEST(SolveDirichlet, ManufacturedPolynomial) {
    const Grid2D g = unit_square(32);
    const ManufacturedCase mc = manufactured_problem(parse("x1^2*x2^2 + x1*x2"), only_a00(g), g);
    const Solution s = solve_dirichlet(mc.problem);
    EXPECT_LE(max_abs(s.field.u() - mc.reference.u()), 5e-3);
    EXPECT_NEAR(s.field.u()(32, 32), 2.0, 1e-9);
    ASSERT_EQ(s.theta.size(), 1u + 33u + 33u);
    EXPECT_NEAR(s.theta[0], 1.0, 1e-9);
    for (std::size_t k = 1; k < s.theta.size(); ++k) EXPECT_NEAR(s.theta[k], 0.0, 1e-9) << k;
    EXPECT_LE(s.diagnostics.closure_residual, 1e-9);
    EXPECT_LE(s.diagnostics.equation_residual, 1e-9);
}

TEST(SolveDirichlet, SmoothManufacturedIsSecondOrder) {
    const Expr u = parse("sin(x1)*cos(x2) + x1*x2^2");
    double prev = 0.0;
    for (int n : {8, 16, 32}) {
        const ManufacturedCase mc = manufactured_problem(u, mild_coefficients(), unit_square(n));
        const Solution s = solve_dirichlet(mc.problem);
        const double e = max_abs(s.field.u() - mc.reference.u());
        if (prev > 0.0) EXPECT_GE(std::log2(prev / e), 1.8) << "n=" << n;
        prev = e;
    }
}

TEST(SolveDirichlet, IncompatibleScalarOnlyMovesItsResidual) {
    const Grid2D g = unit_square(16);
    const ManufacturedCase mc = manufactured_problem(parse("x1^2*x2 + sin(x2)"), mild_coefficients(), g);
    const Solution base = solve_dirichlet(mc.problem);
    DirichletProblem perturbed = mc.problem;
    perturbed.data.z00_h1 += 1e-3;
    const Solution s = solve_dirichlet(perturbed);

    EXPECT_NEAR(s.diagnostics.compat.rho1 - base.diagnostics.compat.rho1, 1e-3, 1e-10);
    for (int i1 = 0; i1 <= 2; ++i1)
        for (int i2 = 0; i2 <= 2; ++i2) EXPECT_LE(max_abs(s.field(i1, i2) - base.field(i1, i2)), 1e-9);
    for (std::size_t k = 0; k < s.theta.size(); ++k) EXPECT_NEAR(s.theta[k], base.theta[k], 1e-9);

    for (std::size_t k = 0; k < condition_count; ++k) {
        const double dr = s.diagnostics.condition_residuals[k] - base.diagnostics.condition_residuals[k];
        if (condition_names[k] == "V00_h1")
            EXPECT_NEAR(std::abs(dr), 1e-3, 1e-9);
        else
            EXPECT_NEAR(dr, 0.0, 1e-9) << condition_names[k];
    }
}

TEST(SolveDirichlet, RidgeShrinksTowardsZero) {
    const Grid2D g = unit_square(8);
    const ManufacturedCase mc = manufactured_problem(parse("exp(x1)*x2 + x1*x2"), mild_coefficients(), g);
    const Solution plain = solve_dirichlet(mc.problem);

    DirichletProblem tiny = mc.problem;
    tiny.ridge = 1e-12;
    const Solution near_plain = solve_dirichlet(tiny);
    for (std::size_t k = 0; k < plain.theta.size(); ++k)
        EXPECT_NEAR(near_plain.theta[k], plain.theta[k], 1e-6);

    DirichletProblem heavy = mc.problem;
    heavy.ridge = 1e3;
    const Solution shrunk = solve_dirichlet(heavy);
    EXPECT_LT(norm2(shrunk.theta), 0.1 * norm2(plain.theta));
    EXPECT_GT(shrunk.diagnostics.closure_residual, plain.diagnostics.closure_residual);

    DirichletProblem negative = mc.problem;
    negative.ridge = -1.0;
    EXPECT_THROW(solve_dirichlet(negative), InvalidArgument);
}

TEST(SolveDirichlet, ResidualReportIsIdempotent) {
    const Grid2D g = unit_square(12);
    const ManufacturedCase mc = manufactured_problem(parse("cos(x1*x2)"), mild_coefficients(), g);
    const Solution s = solve_dirichlet(mc.problem);
    const Diagnostics d = residual_report(s, mc.problem);
    EXPECT_EQ(d, s.diagnostics);
    Solution again = s;
    again.diagnostics = d;
    EXPECT_EQ(residual_report(again, mc.problem), d);
}

TEST(SolveDirichlet, Deterministic) {
    const Grid2D g = unit_square(10);
    const ManufacturedCase mc = manufactured_problem(parse("sin(x1 + x2)"), mild_coefficients(), g);
    EXPECT_EQ(solve_dirichlet(mc.problem), solve_dirichlet(mc.problem));
}

TEST(SolveClassical, Examples) {
    const Grid2D g = unit_square(16);
    {
        const Solution s = solve_classical(Coefficients::zero(g), GridFn2D(g),
                                           classical_from_expr(parse("x1 + x2"), g), g);
        EXPECT_LE(max_abs(s.field.u() - sample(parse("x1 + x2"), g)), 1e-9);
        ASSERT_TRUE(s.diagnostics.agreement.has_value());
        EXPECT_LE(s.diagnostics.agreement->max_abs(), 1e-12);
    }
    {
        const Expr u = parse("x1^2 + x2^2");
        const Solution s = solve_classical(only_a00(g), sample(u, g), classical_from_expr(u, g), g);
        EXPECT_LE(max_abs(s.field.u() - sample(u, g)), 1e-9);
        EXPECT_LE(max_abs(s.field(2, 0) - sample(parse("2"), g)), 1e-9);
    }
    {
        const Solution s = solve_classical(only_a00(g), GridFn2D(g), classical_from_expr(parse("0"), g), g);
        EXPECT_EQ(s.field, DerivativeField(g));
    }
}

TEST(SolveClassical, MatchesNonClassicalPathBitForBit) {
    const Grid2D g{make_grid(1.0, 12), make_grid(0.8, 10)};
    const CoefficientExprs ce = mild_coefficients();
    const Coefficients a = sample_coefficients(ce, g);
    const Expr u = parse("sin(2*x1)*exp(-x2) + x1^3*x2");
    const GridFn2D rhs = apply_operator(symbolic_field(u, g), a);
    const ClassicalData d = classical_from_expr(u, g);

    const Solution viaClassical = solve_classical(a, rhs, d, g);
    const Solution direct = solve_dirichlet({g, a, rhs, classical_to_nonclassical(d)});
    EXPECT_EQ(viaClassical.field, direct.field);
    EXPECT_EQ(viaClassical.theta, direct.theta);
    Diagnostics stripped = viaClassical.diagnostics;
    stripped.agreement.reset();
    EXPECT_EQ(stripped, direct.diagnostics);
}

TEST(CoefficientNorms, ConstantCoefficients) {
    const Grid2D g{make_grid(2.0, 8), make_grid(0.5, 8)};
    Coefficients a = Coefficients::zero(g);
    a.a00 = sample(parse("3"), g);
    a.a21 = sample(parse("3"), g);
    const CoefficientNorms n2 = coefficient_norms(a, 2.0);
    EXPECT_NEAR(n2.a00, 3.0, 1e-12);          // 3 * sqrt(area) with area 1
    EXPECT_NEAR(n2.a21, 3.0 * std::sqrt(0.5), 1e-12);  // sup over x1 then L2 over x2
    EXPECT_EQ(n2.a12, 0.0);
    const CoefficientNorms ninf = coefficient_norms(a, std::numeric_limits<double>::infinity());
    EXPECT_EQ(ninf.a00, 3.0);
    EXPECT_EQ(ninf.a21, 3.0);
}

}  // namespace
}  // namespace ppd
