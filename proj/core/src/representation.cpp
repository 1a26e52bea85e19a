#include "ppd/representation.hpp"

#include "ppd/errors.hpp"
#include "ppd/problem.hpp"

namespace ppd {

namespace {

void require_consistent(const TraceSet& t, const GridFn2D& w) {
    if (!(t.p.grid() == t.g1.grid()) || !(t.q.grid() == t.g2.grid()))
        throw GridMismatch("trace set edge functions disagree on their grids");
    if (!(t.grid() == w.grid())) throw GridMismatch("traces and w live on different grids");
}

// Iterated (x1-a)(x2-b) integral of w through the four cumulative moments.
GridFn2D double_remainder(const GridFn2D& w) {
    const Grid2D& g = w.grid();
    GridFn2D wa(g), wb(g), wab(g);
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j) {
            const double a = g.g1.node(i);
            const double b = g.g2.node(j);
            wa(i, j) = a * w(i, j);
            wb(i, j) = b * w(i, j);
            wab(i, j) = a * b * w(i, j);
        }
    auto moment = [](const GridFn2D& f) {
        return cumulative_integral(cumulative_integral(f, Axis::x1), Axis::x2);
    };
    const GridFn2D m = moment(w);
    const GridFn2D ma = moment(wa);
    const GridFn2D mb = moment(wb);
    const GridFn2D mab = moment(wab);
    GridFn2D out(g);
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j) {
            const double x1 = g.g1.node(i);
            const double x2 = g.g2.node(j);
            out(i, j) = x1 * x2 * m(i, j) - x1 * mb(i, j) - x2 * ma(i, j) + mab(i, j);
        }
    return out;
}

}  // namespace

GridFn2D reconstruct_u(const TraceSet& t, const GridFn2D& w) {
    require_consistent(t, w);
    const Grid2D& g = w.grid();
    const GridFn1D rp = taylor_remainder_integral(t.p);
    const GridFn1D rg1 = taylor_remainder_integral(t.g1);
    const GridFn1D rq = taylor_remainder_integral(t.q);
    const GridFn1D rg2 = taylor_remainder_integral(t.g2);
    GridFn2D u = double_remainder(w);
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j) {
            const double x1 = g.g1.node(i);
            const double x2 = g.g2.node(j);
            u(i, j) += t.u00 + x1 * t.u10 + x2 * t.u01 + x1 * x2 * t.c + rp[i] + x2 * rg1[i] + rq[j] +
                       x1 * rg2[j];
        }
    return u;
}

// Differentiating the representation under the integral signs:
//
//   D1 u      = u10 + x2 c + C[p](x1) + x2 C[g1](x1) + R[g2](x2)
//               + int int (x2-b) w
//   D2 u      = u01 + x1 c + R[g1](x1) + C[q](x2) + x1 C[g2](x2)
//               + int int (x1-a) w
//   D1 D2 u   = c + C[g1](x1) + C[g2](x2) + int int w
//   D1^2 u    = p(x1) + x2 g1(x1) + int_0^x2 (x2-b) w(x1,b) db
//   D2^2 u    = q(x2) + x1 g2(x2) + int_0^x1 (x1-a) w(a,x2) da
//   D1^2 D2 u = g1(x1) + int_0^x2 w(x1,b) db
//   D1 D2^2 u = g2(x2) + int_0^x1 w(a,x2) da
//   D1^2D2^2u = w
//
// with C the cumulative integral and R the (x-t)-weighted remainder.
DerivativeField reconstruct_field(const TraceSet& t, const GridFn2D& w) {
    require_consistent(t, w);
    const Grid2D& g = w.grid();
    DerivativeField f(g);

    const GridFn1D cp = cumulative_integral(t.p);
    const GridFn1D cg1 = cumulative_integral(t.g1);
    const GridFn1D rg1 = taylor_remainder_integral(t.g1);
    const GridFn1D cq = cumulative_integral(t.q);
    const GridFn1D cg2 = cumulative_integral(t.g2);
    const GridFn1D rg2 = taylor_remainder_integral(t.g2);

    const GridFn2D c1w = cumulative_integral(w, Axis::x1);
    const GridFn2D c2w = cumulative_integral(w, Axis::x2);
    const GridFn2D r1w = taylor_remainder_integral(w, Axis::x1);
    const GridFn2D r2w = taylor_remainder_integral(w, Axis::x2);
    const GridFn2D c12w = cumulative_integral(c1w, Axis::x2);
    const GridFn2D r2c1w = taylor_remainder_integral(c1w, Axis::x2);
    const GridFn2D r1c2w = taylor_remainder_integral(c2w, Axis::x1);

    f(0, 0) = reconstruct_u(t, w);
    f(2, 2) = w;
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j) {
            const double x1 = g.g1.node(i);
            const double x2 = g.g2.node(j);
            f(1, 0)(i, j) = t.u10 + x2 * t.c + cp[i] + x2 * cg1[i] + rg2[j] + r2c1w(i, j);
            f(0, 1)(i, j) = t.u01 + x1 * t.c + rg1[i] + cq[j] + x1 * cg2[j] + r1c2w(i, j);
            f(1, 1)(i, j) = t.c + cg1[i] + cg2[j] + c12w(i, j);
            f(2, 0)(i, j) = t.p[i] + x2 * t.g1[i] + r2w(i, j);
            f(0, 2)(i, j) = t.q[j] + x1 * t.g2[j] + r1w(i, j);
            f(2, 1)(i, j) = t.g1[i] + c2w(i, j);
            f(1, 2)(i, j) = t.g2[j] + c1w(i, j);
        }
    return f;
}

DerivativeField symbolic_field(const Expr& u, const Grid2D& grid) {
    DerivativeField f(grid);
    for (int i1 = 0; i1 <= 2; ++i1)
        for (int i2 = 0; i2 <= 2; ++i2) f(i1, i2) = sample(differentiate(u, i1, i2), grid);
    return f;
}

ExtractedTraces extract_traces(const Expr& u, const Grid2D& grid) {
    DerivativeField field = symbolic_field(u, grid);
    TraceSet t(grid);
    t.u00 = field(0, 0)(0, 0);
    t.u10 = field(1, 0)(0, 0);
    t.u01 = field(0, 1)(0, 0);
    t.c = field(1, 1)(0, 0);
    t.p = field(2, 0).column(0);
    t.g1 = field(2, 1).column(0);
    t.q = field(0, 2).row(0);
    t.g2 = field(1, 2).row(0);
    GridFn2D w = field(2, 2);
    return ExtractedTraces{std::move(t), std::move(w), std::move(field)};
}

}  // namespace ppd
