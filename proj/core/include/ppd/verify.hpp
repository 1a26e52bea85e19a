#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "ppd/dirichlet.hpp"
#include "ppd/expr.hpp"
#include "ppd/field.hpp"
#include "ppd/problem.hpp"

namespace ppd {

/// A problem whose exact solution u is known symbolically.
struct ManufacturedCase {
    Expr u;
    Coefficients coeffs;
    DirichletProblem problem;
    DerivativeField reference;
};

/// Data are the traces of u; rhs is the operator applied to the sampled
/// symbolic derivatives of u.
ManufacturedCase manufactured_problem(const Expr& u, const Coefficients& coeffs, const Grid2D& grid,
                                      double tol = 1e-12);
ManufacturedCase manufactured_problem(const Expr& u, const CoefficientExprs& coeffs, const Grid2D& grid,
                                      double tol = 1e-12);

struct ErrorNorms {
    double max_error = 0.0;
    double l2_error = 0.0;
};

ErrorNorms grid_error(const GridFn2D& got, const GridFn2D& want);

/// Errors of all nine derivative grids, indexed [i1][i2].
std::array<std::array<ErrorNorms, 3>, 3> field_errors(const DerivativeField& got,
                                                      const DerivativeField& want);

struct ConvergenceRow {
    int n = 0;
    double max_error = 0.0;
    double l2_error = 0.0;
    /// log2(max_error of previous row / max_error of this row); empty on the first row.
    std::optional<double> observed_order;
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
};

struct StudySettings {
    double h1 = 1.0;
    double h2 = 1.0;
    double tol = 1e-12;
    int max_iter = 200;
};

/// Solves the manufactured problem on n x n grids for every n in ns (each
/// double the previous) and reports the error of u against the reference.
ConvergenceTable convergence_study(const Expr& u, const CoefficientExprs& coeffs, std::span<const int> ns,
                                   const StudySettings& settings = {});

/// sum_{i1,i2 <= 2} || D1^i1 D2^i2 u ||_{L_p}.
double sobolev_norm(const DerivativeField& field, double p);

}  // namespace ppd
