#include "cli/config.hpp"

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "cli/csv_io.hpp"
#include "ppd/errors.hpp"
#include "ppd/expr.hpp"

namespace ppd::cli {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::string where(const std::string& source, int line) {
    return source + ":" + std::to_string(line);
}

// Reads one section of the document and keeps track of which keys were used,
// so unknown keys can be reported.
class SectionReader {
public:
    SectionReader(const IniDocument& doc, std::string name)
        : doc_(doc), name_(std::move(name)) {
        auto it = doc.sections.find(name_);
        section_ = it == doc.sections.end() ? nullptr : &it->second;
    }

    bool present() const { return section_ != nullptr; }

    const IniValue* find(std::string_view key) {
        used_.insert(std::string(key));
        if (section_ == nullptr) return nullptr;
        auto it = section_->find(key);
        return it == section_->end() ? nullptr : &it->second;
    }

    std::string label(std::string_view key, const IniValue& v) const {
        return "[" + name_ + "] " + std::string(key) + " (" + where(doc_.source, v.line) + ")";
    }

    double number(std::string_view key, std::optional<double> fallback, bool allow_infinity = false) {
        const IniValue* v = find(key);
        if (v == nullptr) {
            if (!fallback) throw ConfigError("missing required key [" + name_ + "] " + std::string(key));
            return *fallback;
        }
        const char* begin = v->text.c_str();
        char* end = nullptr;
        errno = 0;
        const double d = std::strtod(begin, &end);
        if (end == begin || *end != '\0' || errno == ERANGE || std::isnan(d) ||
            (std::isinf(d) && !allow_infinity))
            throw ConfigError(label(key, *v) + ": expected a number, got '" + v->text + "'");
        return d;
    }

    int integer(std::string_view key, std::optional<int> fallback) {
        const IniValue* v = find(key);
        if (v == nullptr) {
            if (!fallback) throw ConfigError("missing required key [" + name_ + "] " + std::string(key));
            return *fallback;
        }
        const char* begin = v->text.c_str();
        char* end = nullptr;
        errno = 0;
        const long n = std::strtol(begin, &end, 10);
        if (end == begin || *end != '\0' || errno == ERANGE || n < -1000000000L || n > 1000000000L)
            throw ConfigError(label(key, *v) + ": expected an integer, got '" + v->text + "'");
        return static_cast<int>(n);
    }

    Expr expression(std::string_view key, const char* fallback) {
        const IniValue* v = find(key);
        if (v == nullptr) return parse(fallback);
        try {
            return parse(v->text);
        } catch (const ParseError& e) {
            throw ConfigError(label(key, *v) + ": " + e.what());
        }
    }

    void reject_unknown() const {
        if (section_ == nullptr) return;
        for (const auto& [key, value] : *section_)
            if (!used_.contains(key))
                throw ConfigError("unknown key [" + name_ + "] " + key + " (" + where(doc_.source, value.line) + ")");
    }

private:
    const IniDocument& doc_;
    std::string name_;
    const IniSection* section_ = nullptr;
    std::set<std::string, std::less<>> used_;
};

// An edge function given either as `key = "expr"` sampled at `at(t)` or as
// `key_csv = "path"`.
template <class At>
GridFn1D edge_function(SectionReader& r, const std::string& key, const Grid1D& grid,
                       const std::filesystem::path& base, At at) {
    const IniValue* csv = r.find(key + "_csv");
    const IniValue* ex = r.find(key);
    if (csv != nullptr && ex != nullptr)
        throw ConfigError(r.label(key, *ex) + ": give either " + key + " or " + key + "_csv, not both");
    if (csv != nullptr) {
        std::filesystem::path path = csv->text;
        if (path.is_relative()) path = base / path;
        return read_csv_1d(path, grid);
    }
    const Expr e = r.expression(key, "0");
    GridFn1D out(grid);
    try {
        for (std::size_t i = 0; i < grid.size(); ++i) out[i] = at(e, grid.node(i));
    } catch (const EvalDomainError& err) {
        throw ConfigError("[" + key + "]: " + err.what());
    }
    for (double v : out.values())
        if (!std::isfinite(v)) throw ConfigError("edge function " + key + " is not finite on the grid");
    return out;
}

}  // namespace

IniDocument parse_ini(std::string_view text, std::string source) {
    IniDocument doc;
    doc.source = std::move(source);
    std::string current;
    bool in_section = false;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t stop = text.find('\n', start);
        if (stop == std::string_view::npos) stop = text.size();
        std::string_view line = text.substr(start, stop - start);
        start = stop + 1;
        ++line_no;

        line = trim(line);
        if (line.empty() || line.front() == '#' || line.front() == ';') {
            if (stop == text.size()) break;
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(where(doc.source, line_no) + ": malformed section header");
            current = std::string(trim(line.substr(1, line.size() - 2)));
            if (current.empty()) throw ConfigError(where(doc.source, line_no) + ": empty section name");
            if (doc.sections.contains(current))
                throw ConfigError(where(doc.source, line_no) + ": duplicate section [" + current + "]");
            doc.sections[current];
            doc.section_lines[current] = line_no;
            in_section = true;
        } else {
            const std::size_t eq = line.find('=');
            if (eq == std::string_view::npos)
                throw ConfigError(where(doc.source, line_no) + ": expected 'key = value'");
            if (!in_section) throw ConfigError(where(doc.source, line_no) + ": key outside of any section");
            const std::string key(trim(line.substr(0, eq)));
            std::string_view raw = trim(line.substr(eq + 1));
            if (key.empty()) throw ConfigError(where(doc.source, line_no) + ": empty key");
            IniValue value;
            value.line = line_no;
            if (!raw.empty() && raw.front() == '"') {
                const std::size_t close = raw.find('"', 1);
                if (close == std::string_view::npos)
                    throw ConfigError(where(doc.source, line_no) + ": unterminated string for key '" + key + "'");
                std::string_view rest = trim(raw.substr(close + 1));
                if (!rest.empty() && rest.front() != '#' && rest.front() != ';')
                    throw ConfigError(where(doc.source, line_no) + ": trailing text after string for key '" + key + "'");
                value.text = std::string(raw.substr(1, close - 1));
                value.quoted = true;
            } else {
                const std::size_t comment = raw.find_first_of("#;");
                value.text = std::string(trim(raw.substr(0, comment)));
            }
            auto& section = doc.sections[current];
            if (section.contains(key))
                throw ConfigError(where(doc.source, line_no) + ": duplicate key '" + key + "' in [" + current + "]");
            section.emplace(key, std::move(value));
        }
        if (stop == text.size()) break;
    }
    return doc;
}

Config parse_config(std::string_view text, const std::string& source, const std::filesystem::path& base_dir) {
    const IniDocument doc = parse_ini(text, source);
    static const std::set<std::string, std::less<>> known = {"domain",       "coefficients", "equation",
                                                            "nonclassical", "classical",    "solver"};
    for (const auto& [name, line] : doc.section_lines)
        if (!known.contains(name)) throw ConfigError("unknown section [" + name + "] (" + where(source, line) + ")");

    SectionReader domain(doc, "domain");
    if (!domain.present()) throw ConfigError("missing section [domain]");
    const double h1 = domain.number("h1", std::nullopt);
    const double h2 = domain.number("h2", std::nullopt);
    const int n1 = domain.integer("n1", std::nullopt);
    const int n2 = domain.integer("n2", std::nullopt);
    domain.reject_unknown();
    if (!(h1 > 0.0) || !(h2 > 0.0)) throw ConfigError("[domain] h1 and h2 must be positive");
    if (n1 < 1 || n2 < 1) throw ConfigError("[domain] n1 and n2 must be at least 1");

    Grid2D grid{make_grid(h1, n1), make_grid(h2, n2)};
    Config cfg{base_dir, grid, {}, GridFn2D(grid), std::nullopt, std::nullopt};

    SectionReader coeffs(doc, "coefficients");
    for (int i1 = 0; i1 <= 2; ++i1)
        for (int i2 = 0; i2 <= 2; ++i2)
            if (Expr* slot = cfg.coeffs.at(i1, i2))
                *slot = coeffs.expression("a" + std::to_string(i1) + std::to_string(i2), "0");
    coeffs.reject_unknown();

    SectionReader equation(doc, "equation");
    {
        const IniValue* csv = equation.find("rhs_csv");
        const IniValue* ex = equation.find("rhs");
        if (csv != nullptr && ex != nullptr) throw ConfigError("[equation]: give either rhs or rhs_csv, not both");
        if (csv != nullptr) {
            std::filesystem::path path = csv->text;
            if (path.is_relative()) path = base_dir / path;
            cfg.rhs = read_csv_2d(path, grid);
        } else {
            const Expr rhs = equation.expression("rhs", "0");
            try {
                cfg.rhs = sample(rhs, grid);
            } catch (const EvalDomainError& e) {
                throw ConfigError(std::string("[equation] rhs: ") + e.what());
            } catch (const NumericalError& e) {
                throw ConfigError(std::string("[equation] rhs: ") + e.what());
            }
        }
    }
    equation.reject_unknown();

    const double x1_far = h1;
    const double x2_far = h2;
    SectionReader nc(doc, "nonclassical");
    if (nc.present()) {
        NonClassicalData z(grid);
        z.z00 = nc.number("z00", 0.0);
        z.z10 = nc.number("z10", 0.0);
        z.z01 = nc.number("z01", 0.0);
        z.z00_h1 = nc.number("z00_h1", 0.0);
        z.z01_h1 = nc.number("z01_h1", 0.0);
        z.z00_h2 = nc.number("z00_h2", 0.0);
        z.z10_h2 = nc.number("z10_h2", 0.0);
        z.z20 = edge_function(nc, "z20", grid.g1, base_dir, [](const Expr& e, double t) { return e.eval(t, 0.0); });
        z.z20_h2 = edge_function(nc, "z20_h2", grid.g1, base_dir,
                                 [&](const Expr& e, double t) { return e.eval(t, x2_far); });
        z.z02 = edge_function(nc, "z02", grid.g2, base_dir, [](const Expr& e, double t) { return e.eval(0.0, t); });
        z.z02_h1 = edge_function(nc, "z02_h1", grid.g2, base_dir,
                                 [&](const Expr& e, double t) { return e.eval(x1_far, t); });
        nc.reject_unknown();
        cfg.nonclassical = std::move(z);
    }

    SectionReader cl(doc, "classical");
    if (cl.present()) {
        auto triple = [&](const std::string& name, const Grid1D& g, auto at) {
            const double v0 = cl.number(name + "_v0", 0.0);
            const double v1 = cl.number(name + "_v1", 0.0);
            return BoundaryFn(v0, v1, edge_function(cl, name + "_v2", g, base_dir, at));
        };
        auto on_x1_zero = [](const Expr& e, double t) { return e.eval(0.0, t); };
        auto on_x1_far = [&](const Expr& e, double t) { return e.eval(x1_far, t); };
        auto on_x2_zero = [](const Expr& e, double t) { return e.eval(t, 0.0); };
        auto on_x2_far = [&](const Expr& e, double t) { return e.eval(t, x2_far); };
        ClassicalData d{triple("phi1", grid.g2, on_x1_zero), triple("phi2", grid.g2, on_x1_far),
                        triple("psi1", grid.g1, on_x2_zero), triple("psi2", grid.g1, on_x2_far)};
        cl.reject_unknown();
        cfg.classical = std::move(d);
    }

    SectionReader solver(doc, "solver");
    cfg.tol = solver.number("tol", 1e-12);
    cfg.max_iter = solver.integer("max_iter", 200);
    cfg.ridge = solver.number("ridge", 0.0);
    cfg.norm_p = solver.number("norm_p", 2.0, true);
    solver.reject_unknown();
    if (!(cfg.tol > 0.0)) throw ConfigError("[solver] tol must be positive");
    if (cfg.max_iter < 1) throw ConfigError("[solver] max_iter must be at least 1");
    if (cfg.ridge < 0.0) throw ConfigError("[solver] ridge must be non-negative");
    if (!(cfg.norm_p >= 1.0)) throw ConfigError("[solver] norm_p must be >= 1");
    return cfg;
}

Config load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), path.string(), path.parent_path());
}

}  // namespace ppd::cli
