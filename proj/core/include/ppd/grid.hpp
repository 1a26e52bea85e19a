#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace ppd {

/// Equispaced nodes x_i = i * length / n, i = 0..n, on [0, length].
class Grid1D {
public:
    Grid1D(double length, int n);

    double length() const noexcept { return length_; }
    int intervals() const noexcept { return n_; }
    std::size_t size() const noexcept { return nodes_.size(); }
    double step() const noexcept { return length_ / n_; }
    double node(std::size_t i) const { return nodes_[i]; }
    std::span<const double> nodes() const noexcept { return nodes_; }

    friend bool operator==(const Grid1D& a, const Grid1D& b) noexcept {
        return a.length_ == b.length_ && a.n_ == b.n_;
    }

private:
    double length_;
    int n_;
    std::vector<double> nodes_;
};

/// Throws InvalidArgument for length <= 0 or n < 1.
Grid1D make_grid(double length, int n);

/// Tensor grid on G = (0, h1) x (0, h2); g1 runs along x1, g2 along x2.
struct Grid2D {
    Grid1D g1;
    Grid1D g2;

    std::size_t rows() const noexcept { return g1.size(); }
    std::size_t cols() const noexcept { return g2.size(); }

    friend bool operator==(const Grid2D&, const Grid2D&) = default;
};

class GridFn1D {
public:
    explicit GridFn1D(Grid1D grid);  // zero-filled
    GridFn1D(Grid1D grid, std::vector<double> values);

    const Grid1D& grid() const noexcept { return grid_; }
    std::size_t size() const noexcept { return values_.size(); }

    double operator[](std::size_t i) const { return values_[i]; }
    double& operator[](std::size_t i) { return values_[i]; }
    std::span<const double> values() const noexcept { return values_; }
    std::span<double> values() noexcept { return values_; }

    friend bool operator==(const GridFn1D&, const GridFn1D&) = default;

private:
    Grid1D grid_;
    std::vector<double> values_;
};

/// Row-major (n1+1) x (n2+1) matrix; entry (i, j) sits at (x1_i, x2_j),
/// so x2 varies fastest in memory.
class GridFn2D {
public:
    explicit GridFn2D(Grid2D grid);  // zero-filled
    GridFn2D(Grid2D grid, std::vector<double> values);

    const Grid2D& grid() const noexcept { return grid_; }
    std::size_t rows() const noexcept { return grid_.rows(); }
    std::size_t cols() const noexcept { return grid_.cols(); }

    double operator()(std::size_t i, std::size_t j) const { return values_[i * cols_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return values_[i * cols_ + j]; }
    std::span<const double> values() const noexcept { return values_; }
    std::span<double> values() noexcept { return values_; }

    GridFn1D row(std::size_t i) const;     // function of x2 at fixed x1_i
    GridFn1D column(std::size_t j) const;  // function of x1 at fixed x2_j

    GridFn2D& operator+=(const GridFn2D& other);
    GridFn2D& operator-=(const GridFn2D& other);
    GridFn2D& operator*=(double s);

    friend bool operator==(const GridFn2D&, const GridFn2D&) = default;

private:
    Grid2D grid_;
    std::size_t cols_;
    std::vector<double> values_;
};

GridFn2D operator+(GridFn2D a, const GridFn2D& b);
GridFn2D operator-(GridFn2D a, const GridFn2D& b);
GridFn2D operator*(double s, GridFn2D a);
GridFn2D hadamard(const GridFn2D& a, const GridFn2D& b);

double max_abs(const GridFn1D& f) noexcept;
double max_abs(const GridFn2D& f) noexcept;

/// Composite trapezoid: F(x_i) = int_0^{x_i} f. F(0) = 0 exactly.
GridFn1D cumulative_integral(const GridFn1D& f);

/// R(x_i) = int_0^{x_i} (x_i - t) f(t) dt, evaluated as x_i*C0 - C1 with
/// C0, C1 the cumulative trapezoid integrals of f and t*f.
GridFn1D taylor_remainder_integral(const GridFn1D& f);

// Axis-wise versions on 2D grid functions. Axis 1 integrates over x1 with x2
// held fixed; axis 2 the reverse. Composing the two axes gives the
// cumulative product-trapezoid rule.
enum class Axis { x1, x2 };
GridFn2D cumulative_integral(const GridFn2D& f, Axis axis);
GridFn2D taylor_remainder_integral(const GridFn2D& f, Axis axis);

inline constexpr double infinity_exponent = std::numeric_limits<double>::infinity();

/// L_p norm by (product-)trapezoid for finite p, node max for p = inf.
double lp_norm(const GridFn1D& f, double p);
double lp_norm(const GridFn2D& f, double p);

/// Inner norm over x1 at each x2 node, then outer norm over x2. So
/// L_{inf,p}^{x1,x2} is mixed_norm(f, inf, p).
double mixed_norm(const GridFn2D& f, double inner_exponent, double outer_exponent);

}  // namespace ppd
