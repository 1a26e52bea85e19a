#pragma once

#include "ppd/expr.hpp"
#include "ppd/field.hpp"
#include "ppd/grid.hpp"

namespace ppd {

/// Goursat data that, together with w = D1^2 D2^2 u, determines u:
///
///   u(x) = u00 + x1 u10 + x2 u01 + x1 x2 c
///        + int_0^x1 (x1-a) p(a) da + x2 int_0^x1 (x1-a) g1(a) da
///        + int_0^x2 (x2-b) q(b) db + x1 int_0^x2 (x2-b) g2(b) db
///        + int_0^x1 int_0^x2 (x1-a)(x2-b) w(a,b) db da.
struct TraceSet {
    double u00 = 0.0;  // u(0,0)
    double u10 = 0.0;  // D1 u(0,0)
    double u01 = 0.0;  // D2 u(0,0)
    double c = 0.0;    // D1 D2 u(0,0)
    GridFn1D p;        // D1^2 u(x1, 0)
    GridFn1D g1;       // D1^2 D2 u(x1, 0)
    GridFn1D q;        // D2^2 u(0, x2)
    GridFn1D g2;       // D1 D2^2 u(0, x2)

    explicit TraceSet(const Grid2D& grid) : p(grid.g1), g1(grid.g1), q(grid.g2), g2(grid.g2) {}

    Grid2D grid() const { return Grid2D{p.grid(), q.grid()}; }

    friend bool operator==(const TraceSet&, const TraceSet&) = default;
};

/// u at every node. The double integral uses the separable expansion
/// (x1-a)(x2-b) = x1 x2 - x1 b - x2 a + a b over cumulative product-trapezoid
/// moments of w.
GridFn2D reconstruct_u(const TraceSet& t, const GridFn2D& w);

/// All nine D1^i1 D2^i2 u. d[0][0] equals reconstruct_u(t, w) and d[2][2]
/// is w itself.
DerivativeField reconstruct_field(const TraceSet& t, const GridFn2D& w);

struct ExtractedTraces {
    TraceSet traces;
    GridFn2D w;
    DerivativeField field;  // symbolic derivatives sampled at the nodes
};

/// Symbolic trace extraction from a smooth u.
ExtractedTraces extract_traces(const Expr& u, const Grid2D& grid);

/// Samples D1^i1 D2^i2 u symbolically for all i1, i2 <= 2.
DerivativeField symbolic_field(const Expr& u, const Grid2D& grid);

}  // namespace ppd
