#include "ppd/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "ppd/errors.hpp"

namespace ppd {

namespace {

void require_finite(std::span<const double> values, const char* what) {
    for (double v : values) {
        if (!std::isfinite(v)) throw InvalidArgument(std::string(what) + ": non-finite value");
    }
}

void require_same(const Grid2D& a, const Grid2D& b) {
    if (!(a == b)) throw GridMismatch("grid functions live on different grids");
}

void check_exponent(double p) {
    if (std::isnan(p) || p < 1.0) throw InvalidArgument("norm exponent must be >= 1 or infinity");
}

// Trapezoid running sum over `count` samples spaced `step` apart, read from
// `in` with the given stride and written to `out` with the same stride.
void running_trapezoid(const double* in, double* out, std::size_t count, std::size_t stride,
                       double step) {
    double acc = 0.0;
    out[0] = 0.0;
    for (std::size_t k = 1; k < count; ++k) {
        acc += 0.5 * step * (in[(k - 1) * stride] + in[k * stride]);
        out[k * stride] = acc;
    }
}

double trapezoid_1d(std::span<const double> f, double step) {
    double acc = 0.0;
    for (std::size_t k = 1; k < f.size(); ++k) acc += 0.5 * step * (f[k - 1] + f[k]);
    return acc;
}

double pnorm_1d(std::span<const double> f, double step, double p) {
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : f) m = std::max(m, std::abs(v));
        return m;
    }
    std::vector<double> powered(f.size());
    std::transform(f.begin(), f.end(), powered.begin(),
                   [p](double v) { return std::pow(std::abs(v), p); });
    return std::pow(trapezoid_1d(powered, step), 1.0 / p);
}

}  // namespace

Grid1D::Grid1D(double length, int n) : length_(length), n_(n) {
    if (!(length > 0.0) || !std::isfinite(length)) throw InvalidArgument("grid length must be positive");
    if (n < 1) throw InvalidArgument("grid must have at least one interval");
    nodes_.resize(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i < n; ++i) nodes_[i] = i * length / n;
    nodes_[n] = length;
}

Grid1D make_grid(double length, int n) { return Grid1D(length, n); }

GridFn1D::GridFn1D(Grid1D grid) : grid_(std::move(grid)), values_(grid_.size(), 0.0) {}

GridFn1D::GridFn1D(Grid1D grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.size()) throw GridMismatch("1D values do not match node count");
    require_finite(values_, "GridFn1D");
}

GridFn2D::GridFn2D(Grid2D grid)
    : grid_(std::move(grid)), cols_(grid_.cols()), values_(grid_.rows() * grid_.cols(), 0.0) {}

GridFn2D::GridFn2D(Grid2D grid, std::vector<double> values)
    : grid_(std::move(grid)), cols_(grid_.cols()), values_(std::move(values)) {
    if (values_.size() != grid_.rows() * grid_.cols())
        throw GridMismatch("2D values do not match grid shape");
    require_finite(values_, "GridFn2D");
}

GridFn1D GridFn2D::row(std::size_t i) const {
    auto first = values_.begin() + static_cast<std::ptrdiff_t>(i * cols_);
    return GridFn1D(grid_.g2, std::vector<double>(first, first + static_cast<std::ptrdiff_t>(cols_)));
}

GridFn1D GridFn2D::column(std::size_t j) const {
    GridFn1D out(grid_.g1);
    for (std::size_t i = 0; i < rows(); ++i) out[i] = (*this)(i, j);
    return out;
}

GridFn2D& GridFn2D::operator+=(const GridFn2D& other) {
    require_same(grid_, other.grid_);
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
    return *this;
}

GridFn2D& GridFn2D::operator-=(const GridFn2D& other) {
    require_same(grid_, other.grid_);
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= other.values_[k];
    return *this;
}

GridFn2D& GridFn2D::operator*=(double s) {
    for (double& v : values_) v *= s;
    return *this;
}

GridFn2D operator+(GridFn2D a, const GridFn2D& b) { return a += b; }
GridFn2D operator-(GridFn2D a, const GridFn2D& b) { return a -= b; }
GridFn2D operator*(double s, GridFn2D a) { return a *= s; }

GridFn2D hadamard(const GridFn2D& a, const GridFn2D& b) {
    require_same(a.grid(), b.grid());
    GridFn2D out(a.grid());
    auto av = a.values();
    auto bv = b.values();
    auto ov = out.values();
    for (std::size_t k = 0; k < ov.size(); ++k) ov[k] = av[k] * bv[k];
    return out;
}

double max_abs(const GridFn1D& f) noexcept {
    double m = 0.0;
    for (double v : f.values()) m = std::max(m, std::abs(v));
    return m;
}

double max_abs(const GridFn2D& f) noexcept {
    double m = 0.0;
    for (double v : f.values()) m = std::max(m, std::abs(v));
    return m;
}

GridFn1D cumulative_integral(const GridFn1D& f) {
    GridFn1D out(f.grid());
    running_trapezoid(f.values().data(), out.values().data(), f.size(), 1, f.grid().step());
    return out;
}

GridFn1D taylor_remainder_integral(const GridFn1D& f) {
    const Grid1D& g = f.grid();
    GridFn1D moment(g);
    for (std::size_t i = 0; i < f.size(); ++i) moment[i] = g.node(i) * f[i];
    GridFn1D c0 = cumulative_integral(f);
    GridFn1D c1 = cumulative_integral(moment);
    GridFn1D out(g);
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = g.node(i) * c0[i] - c1[i];
    return out;
}

GridFn2D cumulative_integral(const GridFn2D& f, Axis axis) {
    GridFn2D out(f.grid());
    const double* in = f.values().data();
    double* dst = out.values().data();
    const std::size_t rows = f.rows();
    const std::size_t cols = f.cols();
    if (axis == Axis::x1) {
        const double step = f.grid().g1.step();
        for (std::size_t j = 0; j < cols; ++j) running_trapezoid(in + j, dst + j, rows, cols, step);
    } else {
        const double step = f.grid().g2.step();
        for (std::size_t i = 0; i < rows; ++i)
            running_trapezoid(in + i * cols, dst + i * cols, cols, 1, step);
    }
    return out;
}

GridFn2D taylor_remainder_integral(const GridFn2D& f, Axis axis) {
    const Grid2D& g = f.grid();
    GridFn2D moment(g);
    for (std::size_t i = 0; i < f.rows(); ++i)
        for (std::size_t j = 0; j < f.cols(); ++j)
            moment(i, j) = (axis == Axis::x1 ? g.g1.node(i) : g.g2.node(j)) * f(i, j);
    GridFn2D c0 = cumulative_integral(f, axis);
    GridFn2D c1 = cumulative_integral(moment, axis);
    GridFn2D out(g);
    for (std::size_t i = 0; i < f.rows(); ++i)
        for (std::size_t j = 0; j < f.cols(); ++j) {
            const double x = axis == Axis::x1 ? g.g1.node(i) : g.g2.node(j);
            out(i, j) = x * c0(i, j) - c1(i, j);
        }
    return out;
}

double lp_norm(const GridFn1D& f, double p) {
    check_exponent(p);
    return pnorm_1d(f.values(), f.grid().step(), p);
}

double lp_norm(const GridFn2D& f, double p) {
    check_exponent(p);
    if (std::isinf(p)) return max_abs(f);
    // Product trapezoid: integrate |f|^p along x2 per row, then along x1.
    std::vector<double> rows(f.rows());
    std::vector<double> powered(f.cols());
    for (std::size_t i = 0; i < f.rows(); ++i) {
        for (std::size_t j = 0; j < f.cols(); ++j) powered[j] = std::pow(std::abs(f(i, j)), p);
        rows[i] = trapezoid_1d(powered, f.grid().g2.step());
    }
    return std::pow(trapezoid_1d(rows, f.grid().g1.step()), 1.0 / p);
}

double mixed_norm(const GridFn2D& f, double inner_exponent, double outer_exponent) {
    check_exponent(inner_exponent);
    check_exponent(outer_exponent);
    std::vector<double> inner(f.cols());
    for (std::size_t j = 0; j < f.cols(); ++j) {
        GridFn1D slice = f.column(j);
        inner[j] = pnorm_1d(slice.values(), f.grid().g1.step(), inner_exponent);
    }
    return pnorm_1d(inner, f.grid().g2.step(), outer_exponent);
}

}  // namespace ppd
