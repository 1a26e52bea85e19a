#include "ppd/problem.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ppd/errors.hpp"

namespace ppd {

Coefficients Coefficients::zero(const Grid2D& grid) {
    GridFn2D z(grid);
    return Coefficients{z, z, z, z, z, z, z, z};
}

const GridFn2D* Coefficients::at(int i1, int i2) const noexcept {
    return const_cast<Coefficients*>(this)->at(i1, i2);
}

GridFn2D* Coefficients::at(int i1, int i2) noexcept {
    switch (i1 * 3 + i2) {
        case 7: return &a21;
        case 5: return &a12;
        case 6: return &a20;
        case 2: return &a02;
        case 4: return &a11;
        case 3: return &a10;
        case 1: return &a01;
        case 0: return &a00;
        default: return nullptr;
    }
}

const Expr* CoefficientExprs::at(int i1, int i2) const noexcept {
    return const_cast<CoefficientExprs*>(this)->at(i1, i2);
}

Expr* CoefficientExprs::at(int i1, int i2) noexcept {
    switch (i1 * 3 + i2) {
        case 7: return &a21;
        case 5: return &a12;
        case 6: return &a20;
        case 2: return &a02;
        case 4: return &a11;
        case 3: return &a10;
        case 1: return &a01;
        case 0: return &a00;
        default: return nullptr;
    }
}

GridFn2D sample(const Expr& e, const Grid2D& grid) {
    GridFn2D out(grid);
    for (std::size_t i = 0; i < grid.rows(); ++i)
        for (std::size_t j = 0; j < grid.cols(); ++j) out(i, j) = e.eval(grid.g1.node(i), grid.g2.node(j));
    if (!std::all_of(out.values().begin(), out.values().end(), [](double v) { return std::isfinite(v); }))
        throw NumericalError("expression produced a non-finite sample");
    return out;
}

Coefficients sample_coefficients(const CoefficientExprs& exprs, const Grid2D& grid) {
    Coefficients c = Coefficients::zero(grid);
    for (int i1 = 0; i1 <= 2; ++i1)
        for (int i2 = 0; i2 <= 2; ++i2)
            if (auto* slot = c.at(i1, i2)) *slot = sample(*exprs.at(i1, i2), grid);
    return c;
}

double eval_boundary(const BoundaryFn& f, std::size_t index) {
    if (index >= f.v2.size()) throw InvalidArgument("boundary index out of range");
    const double x = f.grid().node(index);
    return f.v0 + x * f.v1 + taylor_remainder_integral(f.v2)[index];
}

GridFn1D eval_boundary(const BoundaryFn& f) {
    GridFn1D out = taylor_remainder_integral(f.v2);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += f.v0 + f.grid().node(i) * f.v1;
    return out;
}

BoundaryFn boundary_from_expr(const Expr& f, Var along, double fixed, const Grid1D& grid) {
    auto at = [&](const Expr& e, double t) {
        return along == Var::x1 ? e.eval(t, fixed) : e.eval(fixed, t);
    };
    const Expr d1 = differentiate(f, along);
    const Expr d2 = differentiate(d1, along);
    GridFn1D second(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) second[i] = at(d2, grid.node(i));
    return BoundaryFn(at(f, 0.0), at(d1, 0.0), std::move(second));
}

BoundaryFn boundary_from_samples(const GridFn1D& values) {
    const std::size_t n = values.size();
    if (n < 4) throw InvalidArgument("boundary_from_samples needs at least 3 intervals");
    const double h = values.grid().step();
    const auto& f = values;
    GridFn1D second(values.grid());
    second[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / (h * h);
    for (std::size_t i = 1; i + 1 < n; ++i) second[i] = (f[i - 1] - 2.0 * f[i] + f[i + 1]) / (h * h);
    second[n - 1] = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) / (h * h);
    const double slope = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
    return BoundaryFn(f[0], slope, std::move(second));
}

ClassicalData classical_from_expr(const Expr& u, const Grid2D& grid) {
    return ClassicalData{
        boundary_from_expr(u, Var::x2, 0.0, grid.g2),
        boundary_from_expr(u, Var::x2, grid.g1.length(), grid.g2),
        boundary_from_expr(u, Var::x1, 0.0, grid.g1),
        boundary_from_expr(u, Var::x1, grid.g2.length(), grid.g1),
    };
}

NonClassicalData nonclassical_from_field(const DerivativeField& field) {
    const Grid2D& g = field.grid();
    const std::size_t n1 = g.rows() - 1;
    const std::size_t n2 = g.cols() - 1;
    NonClassicalData z(g);
    z.z00 = field(0, 0)(0, 0);
    z.z10 = field(1, 0)(0, 0);
    z.z01 = field(0, 1)(0, 0);
    z.z00_h1 = field(0, 0)(n1, 0);
    z.z01_h1 = field(0, 1)(n1, 0);
    z.z00_h2 = field(0, 0)(0, n2);
    z.z10_h2 = field(1, 0)(0, n2);
    z.z20 = field(2, 0).column(0);
    z.z20_h2 = field(2, 0).column(n2);
    z.z02 = field(0, 2).row(0);
    z.z02_h1 = field(0, 2).row(n1);
    return z;
}

double AgreementReport::max_abs() const noexcept {
    return std::max({std::abs(r1), std::abs(r2), std::abs(r3), std::abs(r4)});
}

double CompatibilityReport::max_abs() const noexcept {
    return std::max({std::abs(rho1), std::abs(rho2), std::abs(rho3)});
}

AgreementReport check_agreement(const ClassicalData& d) {
    const std::size_t n2 = d.phi1.grid().size() - 1;
    const std::size_t n1 = d.psi1.grid().size() - 1;
    return AgreementReport{
        eval_boundary(d.phi1, 0) - eval_boundary(d.psi1, 0),
        eval_boundary(d.phi2, n2) - eval_boundary(d.psi2, n1),
        eval_boundary(d.phi1, n2) - eval_boundary(d.psi2, 0),
        eval_boundary(d.phi2, 0) - eval_boundary(d.psi1, n1),
    };
}

CompatibilityReport check_compatibility(const NonClassicalData& z) {
    const ClassicalData d = nonclassical_to_classical(z);
    const std::size_t n1 = z.z20.size() - 1;
    const std::size_t n2 = z.z02.size() - 1;
    return CompatibilityReport{
        z.z00_h1 - eval_boundary(d.psi1, n1),
        z.z00_h2 - eval_boundary(d.phi1, n2),
        eval_boundary(d.phi2, n2) - eval_boundary(d.psi2, n1),
    };
}

NonClassicalData classical_to_nonclassical(const ClassicalData& d) {
    if (!(d.phi1.grid() == d.phi2.grid()) || !(d.psi1.grid() == d.psi2.grid()))
        throw GridMismatch("classical data: phi and psi pairs must share their edge grids");
    NonClassicalData z(Grid2D{d.psi1.grid(), d.phi1.grid()});
    z.z00 = d.phi1.v0;
    z.z10 = d.psi1.v1;
    z.z01 = d.phi1.v1;
    z.z20 = d.psi1.v2;
    z.z02 = d.phi1.v2;
    z.z00_h1 = d.phi2.v0;
    z.z01_h1 = d.phi2.v1;
    z.z00_h2 = d.psi2.v0;
    z.z10_h2 = d.psi2.v1;
    z.z20_h2 = d.psi2.v2;
    z.z02_h1 = d.phi2.v2;
    return z;
}

ClassicalData nonclassical_to_classical(const NonClassicalData& z) {
    if (!(z.z20.grid() == z.z20_h2.grid()) || !(z.z02.grid() == z.z02_h1.grid()))
        throw GridMismatch("non-classical data: edge functions must share their grids");
    return ClassicalData{
        BoundaryFn(z.z00, z.z01, z.z02),
        BoundaryFn(z.z00_h1, z.z01_h1, z.z02_h1),
        BoundaryFn(z.z00, z.z10, z.z20),
        BoundaryFn(z.z00_h2, z.z10_h2, z.z20_h2),
    };
}

GridFn2D apply_operator(const DerivativeField& field, const Coefficients& a) {
    if (!(field.grid() == a.grid())) throw GridMismatch("field and coefficients live on different grids");
    GridFn2D out = field(2, 2);
    auto ov = out.values();
    for (int i1 = 0; i1 <= 2; ++i1)
        for (int i2 = 0; i2 <= 2; ++i2) {
            const GridFn2D* coeff = a.at(i1, i2);
            if (coeff == nullptr) continue;
            auto cv = coeff->values();
            auto dv = field(i1, i2).values();
            for (std::size_t k = 0; k < ov.size(); ++k) ov[k] += cv[k] * dv[k];
        }
    return out;
}

}  // namespace ppd
