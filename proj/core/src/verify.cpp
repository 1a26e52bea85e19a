#include "ppd/verify.hpp"

#include <cmath>

#include "ppd/errors.hpp"
#include "ppd/representation.hpp"

namespace ppd {

ManufacturedCase manufactured_problem(const Expr& u, const Coefficients& coeffs, const Grid2D& grid,
                                      double tol) {
    if (!(coeffs.grid() == grid)) throw GridMismatch("coefficients do not match the grid");
    DerivativeField reference = symbolic_field(u, grid);
    GridFn2D rhs = apply_operator(reference, coeffs);
    DirichletProblem problem{grid, coeffs, std::move(rhs), nonclassical_from_field(reference), tol};
    return ManufacturedCase{u, coeffs, std::move(problem), std::move(reference)};
}

ManufacturedCase manufactured_problem(const Expr& u, const CoefficientExprs& coeffs, const Grid2D& grid,
                                      double tol) {
    return manufactured_problem(u, sample_coefficients(coeffs, grid), grid, tol);
}

ErrorNorms grid_error(const GridFn2D& got, const GridFn2D& want) {
    const GridFn2D diff = got - want;
    return ErrorNorms{max_abs(diff), lp_norm(diff, 2.0)};
}

std::array<std::array<ErrorNorms, 3>, 3> field_errors(const DerivativeField& got,
                                                      const DerivativeField& want) {
    std::array<std::array<ErrorNorms, 3>, 3> out{};
    for (int i1 = 0; i1 <= 2; ++i1)
        for (int i2 = 0; i2 <= 2; ++i2) out[i1][i2] = grid_error(got(i1, i2), want(i1, i2));
    return out;
}

ConvergenceTable convergence_study(const Expr& u, const CoefficientExprs& coeffs, std::span<const int> ns,
                                   const StudySettings& settings) {
    if (ns.size() < 2) throw InvalidArgument("convergence study needs at least two grids");
    for (std::size_t k = 1; k < ns.size(); ++k)
        if (ns[k] != 2 * ns[k - 1]) throw InvalidArgument("convergence grids must double");

    ConvergenceTable table;
    for (int n : ns) {
        const Grid2D grid{make_grid(settings.h1, n), make_grid(settings.h2, n)};
        ManufacturedCase mc = manufactured_problem(u, coeffs, grid, settings.tol);
        mc.problem.max_iter = settings.max_iter;
        const Solution s = solve_dirichlet(mc.problem);
        const ErrorNorms e = grid_error(s.field.u(), mc.reference.u());
        ConvergenceRow row{n, e.max_error, e.l2_error, std::nullopt};
        if (!table.rows.empty()) row.observed_order = std::log2(table.rows.back().max_error / e.max_error);
        table.rows.push_back(row);
    }
    return table;
}

double sobolev_norm(const DerivativeField& field, double p) {
    double total = 0.0;
    for (int i1 = 0; i1 <= 2; ++i1)
        for (int i2 = 0; i2 <= 2; ++i2) total += lp_norm(field(i1, i2), p);
    return total;
}

}  // namespace ppd
