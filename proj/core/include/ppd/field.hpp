#pragma once

#include <array>

#include "ppd/grid.hpp"

namespace ppd {

/// The nine grids D1^i1 D2^i2 u, i1, i2 in {0, 1, 2}, indexed d[i1][i2].
struct DerivativeField {
    std::array<std::array<GridFn2D, 3>, 3> d;

    explicit DerivativeField(const Grid2D& grid)
        : d{{{GridFn2D(grid), GridFn2D(grid), GridFn2D(grid)},
             {GridFn2D(grid), GridFn2D(grid), GridFn2D(grid)},
             {GridFn2D(grid), GridFn2D(grid), GridFn2D(grid)}}} {}

    const Grid2D& grid() const noexcept { return d[0][0].grid(); }
    const GridFn2D& u() const noexcept { return d[0][0]; }
    const GridFn2D& operator()(int i1, int i2) const { return d[i1][i2]; }
    GridFn2D& operator()(int i1, int i2) { return d[i1][i2]; }

    friend bool operator==(const DerivativeField&, const DerivativeField&) = default;
};

}  // namespace ppd
