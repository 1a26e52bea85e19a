#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ppd/field.hpp"
#include "ppd/goursat.hpp"
#include "ppd/problem.hpp"

namespace ppd {

/// The equation with the eleven non-classical conditions as data.
struct DirichletProblem {
    Grid2D grid;
    Coefficients coeffs;
    GridFn2D rhs;
    NonClassicalData data;
    double tol = 1e-12;
    int max_iter = 200;
    double ridge = 0.0;          // Tikhonov weight for the closure; 0 = plain least squares
    double norm_exponent = 2.0;  // p used for the informational coefficient norms
};

/// Affine residual map R(theta) = matrix * theta - offset of the four far-edge
/// conditions, with theta = [c, g1 at the x1 nodes, g2 at the x2 nodes].
///
/// Rows: D2 u(h1,0) - z01_h1; D1 u(0,h2) - z10_h2; D1^2 u(x1_i, h2) - z20_h2(x1_i)
/// for every x1 node; D2^2 u(h1, x2_j) - z02_h1(x2_j) for every x2 node.
struct ClosureSystem {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> matrix;  // row-major rows x cols
    std::vector<double> offset;  // length rows

    double operator()(std::size_t r, std::size_t c) const { return matrix[r * cols + c]; }
};

inline constexpr std::size_t condition_count = 11;

/// Display names of the non-classical conditions, in Diagnostics order.
inline constexpr std::array<std::string_view, condition_count> condition_names = {
    "V00", "V10", "V01", "V20", "V02", "V00_h1", "V01_h1", "V00_h2", "V10_h2", "V20_h2", "V02_h1"};

/// a21, a20 in L_{inf,p}^{x1,x2}; a12, a02 in L_{p,inf}^{x1,x2}; the rest in L_p.
struct CoefficientNorms {
    double exponent = 2.0;
    double a21 = 0.0, a20 = 0.0, a12 = 0.0, a02 = 0.0;
    double a11 = 0.0, a10 = 0.0, a01 = 0.0, a00 = 0.0;

    friend bool operator==(const CoefficientNorms&, const CoefficientNorms&) = default;
};

CoefficientNorms coefficient_norms(const Coefficients& a, double p);

struct Diagnostics {
    CompatibilityReport compat;
    double closure_residual = 0.0;   // Euclidean norm of the closure rows at the solution
    double equation_residual = 0.0;  // sup |apply_operator(field) - rhs|
    std::array<double, condition_count> condition_residuals{};  // max abs violation each
    int goursat_iterations = 0;
    int closure_rank = 0;
    CoefficientNorms coefficient_norms;
    std::optional<AgreementReport> agreement;  // classical path only

    friend bool operator==(const Diagnostics&, const Diagnostics&) = default;
};

struct Solution {
    DerivativeField field;
    std::vector<double> theta;
    Diagnostics diagnostics;

    friend bool operator==(const Solution&, const Solution&) = default;
};

/// Goursat data for the given closure unknowns.
TraceSet traces_for(const NonClassicalData& data, std::span<const double> theta);

/// R(theta) by a direct Goursat solve.
std::vector<double> evaluate_closure(const DirichletProblem& p, std::span<const double> theta);

/// Probing assembly: one Goursat solve at theta = 0 and one per unit vector.
ClosureSystem assemble_closure_system(const DirichletProblem& p);

/// Minimum-norm least-squares closure followed by a final Goursat solve.
Solution solve_dirichlet(const DirichletProblem& p);

/// Classical data are converted to the non-classical form and solved;
/// the agreement residuals of d are attached to the diagnostics.
Solution solve_classical(const Coefficients& coeffs, const GridFn2D& rhs, const ClassicalData& d,
                         const Grid2D& grid, double tol = 1e-12, int max_iter = 200,
                         double ridge = 0.0);

/// Recomputes the diagnostics of s from its field. Iteration count, closure
/// rank and agreement are carried over from s.
Diagnostics residual_report(const Solution& s, const DirichletProblem& p);

}  // namespace ppd
