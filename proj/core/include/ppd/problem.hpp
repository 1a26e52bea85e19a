#pragma once

#include <cstddef>

#include "ppd/expr.hpp"
#include "ppd/field.hpp"
#include "ppd/grid.hpp"

namespace ppd {

/// Coefficients a_{i1,i2} of
///   D1^2 D2^2 u + a21 D1^2 D2 u + a12 D1 D2^2 u + a20 D1^2 u + a02 D2^2 u
///     + sum_{i1,i2 <= 1} a_{i1 i2} D1^i1 D2^i2 u = Z22.
struct Coefficients {
    GridFn2D a21, a12, a20, a02, a11, a10, a01, a00;

    static Coefficients zero(const Grid2D& grid);

    const Grid2D& grid() const noexcept { return a00.grid(); }

    /// Coefficient multiplying D1^i1 D2^i2 u; nullptr for (2, 2).
    const GridFn2D* at(int i1, int i2) const noexcept;
    GridFn2D* at(int i1, int i2) noexcept;

    friend bool operator==(const Coefficients&, const Coefficients&) = default;
};

/// Coefficient expressions, each defaulting to "0".
struct CoefficientExprs {
    Expr a21, a12, a20, a02, a11, a10, a01, a00;

    const Expr* at(int i1, int i2) const noexcept;
    Expr* at(int i1, int i2) noexcept;
};

Coefficients sample_coefficients(const CoefficientExprs& exprs, const Grid2D& grid);

/// Samples e at every node of the grid.
GridFn2D sample(const Expr& e, const Grid2D& grid);

/// A function on [0, h] stored as its W_p^(2) data: value and slope at 0 and
/// the second derivative on the edge grid. Evaluated by the Taylor identity
///   f(x) = v0 + x v1 + int_0^x (x - t) v2(t) dt.
struct BoundaryFn {
    double v0 = 0.0;
    double v1 = 0.0;
    GridFn1D v2;

    explicit BoundaryFn(Grid1D grid) : v2(std::move(grid)) {}
    BoundaryFn(double value, double slope, GridFn1D second) : v0(value), v1(slope), v2(std::move(second)) {}

    const Grid1D& grid() const noexcept { return v2.grid(); }

    friend bool operator==(const BoundaryFn&, const BoundaryFn&) = default;
};

/// Throws InvalidArgument when index is outside the edge grid.
double eval_boundary(const BoundaryFn& f, std::size_t index);
/// All node values of f.
GridFn1D eval_boundary(const BoundaryFn& f);

/// f restricted to the segment {(x1, fixed)} (along == x1) or {(fixed, x2)}.
BoundaryFn boundary_from_expr(const Expr& f, Var along, double fixed, const Grid1D& grid);
/// From node samples: v1 by the one-sided second-order difference at 0, v2 by
/// central second differences inside and one-sided second-order stencils at
/// the two ends. Needs at least 3 intervals.
BoundaryFn boundary_from_samples(const GridFn1D& values);

/// u(0, x2) = phi1, u(h1, x2) = phi2 on the x2 grid;
/// u(x1, 0) = psi1, u(x1, h2) = psi2 on the x1 grid.
struct ClassicalData {
    BoundaryFn phi1, phi2, psi1, psi2;

    friend bool operator==(const ClassicalData&, const ClassicalData&) = default;
};

/// Boundary traces of a function u given symbolically.
ClassicalData classical_from_expr(const Expr& u, const Grid2D& grid);

/// The eleven right-hand sides of the non-classical conditions.
struct NonClassicalData {
    double z00 = 0.0;     // u(0, 0)
    double z10 = 0.0;     // D1 u(0, 0)
    double z01 = 0.0;     // D2 u(0, 0)
    double z00_h1 = 0.0;  // u(h1, 0)
    double z01_h1 = 0.0;  // D2 u(h1, 0)
    double z00_h2 = 0.0;  // u(0, h2)
    double z10_h2 = 0.0;  // D1 u(0, h2)
    GridFn1D z20;         // D1^2 u(x1, 0)
    GridFn1D z20_h2;      // D1^2 u(x1, h2)
    GridFn1D z02;         // D2^2 u(0, x2)
    GridFn1D z02_h1;      // D2^2 u(h1, x2)

    explicit NonClassicalData(const Grid2D& grid)
        : z20(grid.g1), z20_h2(grid.g1), z02(grid.g2), z02_h1(grid.g2) {}

    Grid2D grid() const { return Grid2D{z20.grid(), z02.grid()}; }

    friend bool operator==(const NonClassicalData&, const NonClassicalData&) = default;
};

/// Reads the eleven conditions off a derivative field's corners and edges.
NonClassicalData nonclassical_from_field(const DerivativeField& field);

/// Residuals, in order: phi1(0)-psi1(0), phi2(h2)-psi2(h1), phi1(h2)-psi2(0),
/// phi2(0)-psi1(h1).
struct AgreementReport {
    double r1 = 0.0, r2 = 0.0, r3 = 0.0, r4 = 0.0;

    double max_abs() const noexcept;
    friend bool operator==(const AgreementReport&, const AgreementReport&) = default;
};

/// rho1 = z00_h1 - psi1(h1), rho2 = z00_h2 - phi1(h2),
/// rho3 = phi2(h2) - psi2(h1), with phi/psi rebuilt from z.
struct CompatibilityReport {
    double rho1 = 0.0, rho2 = 0.0, rho3 = 0.0;

    double max_abs() const noexcept;
    friend bool operator==(const CompatibilityReport&, const CompatibilityReport&) = default;
};

AgreementReport check_agreement(const ClassicalData& d);
CompatibilityReport check_compatibility(const NonClassicalData& z);

/// Z00 is read from phi1; a differing psi1(0) only shows up in check_agreement.
NonClassicalData classical_to_nonclassical(const ClassicalData& d);
ClassicalData nonclassical_to_classical(const NonClassicalData& z);

/// Left-hand side of the equation at every node.
GridFn2D apply_operator(const DerivativeField& field, const Coefficients& a);

}  // namespace ppd
