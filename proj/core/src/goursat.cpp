#include "ppd/goursat.hpp"

#include <cmath>
#include <string>

#include "ppd/errors.hpp"

namespace ppd {

namespace {

// Z22 - (lower-order part of the operator applied to field).
GridFn2D picard_update(const DerivativeField& field, const Coefficients& a, const GridFn2D& rhs) {
    GridFn2D out = rhs;
    auto ov = out.values();
    for (int i1 = 0; i1 <= 2; ++i1)
        for (int i2 = 0; i2 <= 2; ++i2) {
            const GridFn2D* coeff = a.at(i1, i2);
            if (coeff == nullptr) continue;
            auto cv = coeff->values();
            auto dv = field(i1, i2).values();
            for (std::size_t k = 0; k < ov.size(); ++k) ov[k] -= cv[k] * dv[k];
        }
    return out;
}

double sup_diff(const GridFn2D& a, const GridFn2D& b) {
    double m = 0.0;
    auto av = a.values();
    auto bv = b.values();
    for (std::size_t k = 0; k < av.size(); ++k) {
        const double d = std::abs(av[k] - bv[k]);
        if (!(d <= m)) m = d;  // propagates NaN
    }
    return m;
}

}  // namespace

GoursatSolution solve_goursat(const GoursatProblem& gp, const GoursatOptions& options) {
    if (!(options.tol > 0.0)) throw InvalidArgument("Goursat tolerance must be positive");
    if (options.max_iter < 1) throw InvalidArgument("Goursat max_iter must be at least 1");
    const Grid2D& grid = gp.rhs.grid();
    if (!(gp.traces.grid() == grid) || !(gp.coeffs.grid() == grid))
        throw GridMismatch("Goursat problem parts live on different grids");

    // w0 is the known part: the update evaluated with w = 0.
    GridFn2D w = picard_update(reconstruct_field(gp.traces, GridFn2D(grid)), gp.coeffs, gp.rhs);
    double change = 0.0;
    int iterations = 0;
    for (;;) {
        ++iterations;
        GridFn2D next = picard_update(reconstruct_field(gp.traces, w), gp.coeffs, gp.rhs);
        change = sup_diff(next, w);
        w = std::move(next);
        if (!std::isfinite(change))
            throw NonConvergenceError("Goursat iteration diverged after " + std::to_string(iterations) +
                                          " sweeps",
                                      change);
        if (change <= options.tol) break;
        if (iterations >= options.max_iter)
            throw NonConvergenceError("Goursat iteration did not converge in " +
                                          std::to_string(options.max_iter) +
                                          " sweeps (last change " + std::to_string(change) + ")",
                                      change);
    }

    DerivativeField field = reconstruct_field(gp.traces, w);
    const double residual = sup_diff(apply_operator(field, gp.coeffs), gp.rhs);
    return GoursatSolution{std::move(w), std::move(field), iterations, change, residual};
}

}  // namespace ppd
