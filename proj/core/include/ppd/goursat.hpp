#pragma once

#include "ppd/field.hpp"
#include "ppd/problem.hpp"
#include "ppd/representation.hpp"

namespace ppd {

struct GoursatProblem {
    TraceSet traces;
    Coefficients coeffs;
    GridFn2D rhs;  // Z22 at the nodes
};

struct GoursatSolution {
    GridFn2D w;
    DerivativeField field;
    int iterations = 0;
    double final_change = 0.0;  // sup-norm of the last Picard update
    double residual = 0.0;      // sup-norm of apply_operator(field) - rhs
};

struct GoursatOptions {
    double tol = 1e-12;
    int max_iter = 200;
};

/// Solves the equation for w = D1^2 D2^2 u with u's Goursat data fixed.
///
/// Substituting the representation into the equation gives the Volterra
/// equation of the second kind
///
///   w = Z22 - sum_{(i1,i2) != (2,2)} a_{i1 i2} D1^i1 D2^i2 u[traces, w],
///
/// whose right side integrates w only over [0,x1] x [0,x2]. Each Picard sweep
/// reconstructs the derivative field of the current iterate (O(n1 n2)) and
/// re-evaluates the right side. Throws NonConvergenceError when the sup
/// change is still above tol after max_iter sweeps or the iterate blows up.
GoursatSolution solve_goursat(const GoursatProblem& gp, const GoursatOptions& options = {});

}  // namespace ppd
