#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ppd/problem.hpp"

namespace ppd::cli {

/// Config or command-line problem; maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Unreadable or unwritable file; maps to exit code 4.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct IniValue {
    std::string text;  // quotes removed
    bool quoted = false;
    int line = 0;
};

using IniSection = std::map<std::string, IniValue, std::less<>>;

struct IniDocument {
    std::string source;  // file name, for messages
    std::map<std::string, IniSection, std::less<>> sections;
    std::map<std::string, int, std::less<>> section_lines;
};

/// Parses the INI dialect:
///
///     # comment            ; comment
///     [section]
///     key = value          value is a number, a bare word or "a quoted string"
///
/// Keys are unique within a section, sections unique within the file.
IniDocument parse_ini(std::string_view text, std::string source);

/// A fully resolved problem definition.
struct Config {
    std::filesystem::path base_dir;  // relative CSV paths resolve against this
    Grid2D grid;
    CoefficientExprs coeffs;
    GridFn2D rhs;
    std::optional<NonClassicalData> nonclassical;
    std::optional<ClassicalData> classical;
    double tol = 1e-12;
    int max_iter = 200;
    double ridge = 0.0;
    double norm_p = 2.0;
};

Config load_config(const std::filesystem::path& path);
Config parse_config(std::string_view text, const std::string& source, const std::filesystem::path& base_dir);

}  // namespace ppd::cli
