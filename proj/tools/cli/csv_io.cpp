#include "cli/csv_io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include "cli/config.hpp"

namespace ppd::cli {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw IoError("error while writing " + path.string());
}

std::vector<std::vector<double>> read_rows(const std::filesystem::path& path, const std::string& header,
                                           std::size_t width) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open CSV file " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw ConfigError(path.string() + ": empty CSV file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != header) throw ConfigError(path.string() + ": expected header '" + header + "', got '" + line + "'");
    std::vector<std::vector<double>> rows;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<double> row;
        const char* p = line.c_str();
        for (std::size_t k = 0; k < width; ++k) {
            char* end = nullptr;
            errno = 0;
            const double v = std::strtod(p, &end);
            if (end == p || errno == ERANGE || !std::isfinite(v))
                throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": malformed number in column " +
                                  std::to_string(k + 1));
            row.push_back(v);
            p = end;
            if (k + 1 < width) {
                if (*p != ',') throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": expected ','");
                ++p;
            }
        }
        if (*p != '\0') throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": too many columns");
        rows.push_back(std::move(row));
    }
    return rows;
}

bool near(double a, double b, double scale) { return std::abs(a - b) <= 1e-9 * scale; }

}  // namespace

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

void write_csv(const std::filesystem::path& path, const GridFn1D& f) {
    auto out = open_out(path);
    out << "x,value\n";
    for (std::size_t i = 0; i < f.size(); ++i)
        out << format_number(f.grid().node(i)) << ',' << format_number(f[i]) << '\n';
    finish(out, path);
}

void write_csv(const std::filesystem::path& path, const GridFn2D& f) {
    auto out = open_out(path);
    out << "x1,x2,value\n";
    const Grid2D& g = f.grid();
    for (std::size_t i = 0; i < f.rows(); ++i)
        for (std::size_t j = 0; j < f.cols(); ++j)
            out << format_number(g.g1.node(i)) << ',' << format_number(g.g2.node(j)) << ','
                << format_number(f(i, j)) << '\n';
    finish(out, path);
}

GridFn1D read_csv_1d(const std::filesystem::path& path, const Grid1D& grid) {
    const auto rows = read_rows(path, "x,value", 2);
    if (rows.size() != grid.size())
        throw ConfigError(path.string() + ": expected " + std::to_string(grid.size()) + " rows, got " +
                          std::to_string(rows.size()));
    std::vector<double> values(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!near(rows[i][0], grid.node(i), grid.length()))
            throw ConfigError(path.string() + ": row " + std::to_string(i + 1) + " is not at grid node " +
                              format_number(grid.node(i)));
        values[i] = rows[i][1];
    }
    return GridFn1D(grid, std::move(values));
}

GridFn2D read_csv_2d(const std::filesystem::path& path, const Grid2D& grid) {
    const auto rows = read_rows(path, "x1,x2,value", 3);
    const std::size_t expected = grid.rows() * grid.cols();
    if (rows.size() != expected)
        throw ConfigError(path.string() + ": expected " + std::to_string(expected) + " rows, got " +
                          std::to_string(rows.size()));
    std::vector<double> values(expected);
    for (std::size_t k = 0; k < expected; ++k) {
        const std::size_t i = k / grid.cols();
        const std::size_t j = k % grid.cols();
        if (!near(rows[k][0], grid.g1.node(i), grid.g1.length()) ||
            !near(rows[k][1], grid.g2.node(j), grid.g2.length()))
            throw ConfigError(path.string() + ": row " + std::to_string(k + 1) + " is not at the expected node");
        values[k] = rows[k][2];
    }
    return GridFn2D(grid, std::move(values));
}

}  // namespace ppd::cli
