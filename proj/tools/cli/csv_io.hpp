#pragma once

#include <filesystem>
#include <string>

#include "ppd/grid.hpp"

namespace ppd::cli {

/// 17 significant digits in scientific notation; strtod recovers the exact double.
std::string format_number(double v);

/// Header `x,value`, one row per node.
void write_csv(const std::filesystem::path& path, const GridFn1D& f);
/// Header `x1,x2,value`, row-major with x2 varying fastest.
void write_csv(const std::filesystem::path& path, const GridFn2D& f);

/// Reads the layouts above; throws ConfigError when the row count or the
/// node coordinates do not match the grid, IoError when unreadable.
GridFn1D read_csv_1d(const std::filesystem::path& path, const Grid1D& grid);
GridFn2D read_csv_2d(const std::filesystem::path& path, const Grid2D& grid);

}  // namespace ppd::cli
