#include "cli/cli.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cli/config.hpp"
#include "cli/csv_io.hpp"
#include "ppd/dirichlet.hpp"
#include "ppd/errors.hpp"
#include "ppd/verify.hpp"

namespace ppd::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

struct CheckFailed {};

DirichletProblem problem_from(const Config& cfg, NonClassicalData data) {
    return DirichletProblem{cfg.grid,     sample_coefficients(cfg.coeffs, cfg.grid),
                            cfg.rhs,      std::move(data),
                            cfg.tol,      cfg.max_iter,
                            cfg.ridge,    cfg.norm_p};
}

void require_one_block(const Config& cfg) {
    if (cfg.nonclassical && cfg.classical)
        throw ConfigError("config has both [nonclassical] and [classical]; give exactly one");
    if (!cfg.nonclassical && !cfg.classical)
        throw ConfigError("config needs a [nonclassical] or a [classical] data section");
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    out.flush();
    if (!out) throw IoError("error while writing " + path.string());
}

fs::path sibling(const fs::path& path, const std::string& suffix) {
    return path.parent_path() / (path.stem().string() + suffix);
}

json diagnostics_json(const Config& cfg, const Diagnostics& d, const char* formulation) {
    json j;
    j["formulation"] = formulation;
    j["h1"] = cfg.grid.g1.length();
    j["h2"] = cfg.grid.g2.length();
    j["n1"] = cfg.grid.g1.intervals();
    j["n2"] = cfg.grid.g2.intervals();
    j["tol"] = cfg.tol;
    j["max_iter"] = cfg.max_iter;
    j["ridge"] = cfg.ridge;
    j["goursat_iterations"] = d.goursat_iterations;
    j["closure_rank"] = d.closure_rank;
    j["closure_residual"] = d.closure_residual;
    j["equation_residual"] = d.equation_residual;
    j["compat_rho1"] = d.compat.rho1;
    j["compat_rho2"] = d.compat.rho2;
    j["compat_rho3"] = d.compat.rho3;
    for (std::size_t k = 0; k < condition_count; ++k)
        j["condition_residual_" + std::string(condition_names[k])] = d.condition_residuals[k];
    if (d.agreement) {
        j["agreement_r1"] = d.agreement->r1;
        j["agreement_r2"] = d.agreement->r2;
        j["agreement_r3"] = d.agreement->r3;
        j["agreement_r4"] = d.agreement->r4;
    }
    const CoefficientNorms& n = d.coefficient_norms;
    if (std::isinf(n.exponent))
        j["coefficient_norm_p"] = "inf";  // JSON has no infinity
    else
        j["coefficient_norm_p"] = n.exponent;
    j["norm_a21"] = n.a21;
    j["norm_a20"] = n.a20;
    j["norm_a12"] = n.a12;
    j["norm_a02"] = n.a02;
    j["norm_a11"] = n.a11;
    j["norm_a10"] = n.a10;
    j["norm_a01"] = n.a01;
    j["norm_a00"] = n.a00;
    return j;
}

int cmd_solve(const fs::path& config, const fs::path& out_path, const fs::path& diag_path, bool field,
              std::ostream& out) {
    const Config cfg = load_config(config);
    require_one_block(cfg);
    Solution s = [&] {
        if (cfg.classical)
            return solve_classical(sample_coefficients(cfg.coeffs, cfg.grid), cfg.rhs, *cfg.classical, cfg.grid,
                                   cfg.tol, cfg.max_iter, cfg.ridge);
        return solve_dirichlet(problem_from(cfg, *cfg.nonclassical));
    }();
    if (cfg.classical && cfg.norm_p != 2.0) {
        // solve_classical always reports p = 2 norms; recompute for the configured exponent.
        s.diagnostics.coefficient_norms = coefficient_norms(sample_coefficients(cfg.coeffs, cfg.grid), cfg.norm_p);
    }

    write_csv(out_path, s.field.u());
    if (field)
        for (int i1 = 0; i1 <= 2; ++i1)
            for (int i2 = 0; i2 <= 2; ++i2)
                write_csv(sibling(out_path, "_d" + std::to_string(i1) + std::to_string(i2) + ".csv"),
                          s.field(i1, i2));
    const json j = diagnostics_json(cfg, s.diagnostics, cfg.classical ? "classical" : "nonclassical");
    write_text(diag_path, j.dump(2) + "\n");
    out << "solved on " << cfg.grid.g1.intervals() << "x" << cfg.grid.g2.intervals()
        << " grid: equation residual " << format_number(s.diagnostics.equation_residual) << ", closure residual "
        << format_number(s.diagnostics.closure_residual) << "\n";
    return exit_ok;
}

std::string domain_block(const Config& cfg) {
    std::ostringstream o;
    o << "[domain]\n"
      << "h1 = " << format_number(cfg.grid.g1.length()) << "\n"
      << "h2 = " << format_number(cfg.grid.g2.length()) << "\n"
      << "n1 = " << cfg.grid.g1.intervals() << "\n"
      << "n2 = " << cfg.grid.g2.intervals() << "\n\n";
    return o.str();
}

int cmd_convert(const fs::path& config, const std::string& direction, const fs::path& out_path, std::ostream& out) {
    const Config cfg = load_config(config);
    std::ostringstream o;
    o << domain_block(cfg);
    auto edge = [&](const std::string& key, const GridFn1D& f) {
        const fs::path csv = sibling(out_path, "_" + key + ".csv");
        write_csv(csv, f);
        o << key << "_csv = \"" << csv.filename().string() << "\"\n";
    };
    if (direction == "c2n") {
        if (!cfg.classical) throw ConfigError("convert c2n needs a [classical] section");
        const NonClassicalData z = classical_to_nonclassical(*cfg.classical);
        o << "[nonclassical]\n";
        o << "z00 = " << format_number(z.z00) << "\n";
        o << "z10 = " << format_number(z.z10) << "\n";
        o << "z01 = " << format_number(z.z01) << "\n";
        o << "z00_h1 = " << format_number(z.z00_h1) << "\n";
        o << "z01_h1 = " << format_number(z.z01_h1) << "\n";
        o << "z00_h2 = " << format_number(z.z00_h2) << "\n";
        o << "z10_h2 = " << format_number(z.z10_h2) << "\n";
        edge("z20", z.z20);
        edge("z20_h2", z.z20_h2);
        edge("z02", z.z02);
        edge("z02_h1", z.z02_h1);
    } else if (direction == "n2c") {
        if (!cfg.nonclassical) throw ConfigError("convert n2c needs a [nonclassical] section");
        const ClassicalData d = nonclassical_to_classical(*cfg.nonclassical);
        o << "[classical]\n";
        auto triple = [&](const std::string& name, const BoundaryFn& f) {
            o << name << "_v0 = " << format_number(f.v0) << "\n";
            o << name << "_v1 = " << format_number(f.v1) << "\n";
            edge(name + "_v2", f.v2);
        };
        triple("phi1", d.phi1);
        triple("phi2", d.phi2);
        triple("psi1", d.psi1);
        triple("psi2", d.psi2);
    } else {
        throw ConfigError("--direction must be c2n or n2c");
    }
    write_text(out_path, o.str());
    out << "wrote " << out_path.string() << "\n";
    return exit_ok;
}

int cmd_check(const fs::path& config, double tol, std::ostream& out) {
    const Config cfg = load_config(config);
    require_one_block(cfg);
    double worst = 0.0;
    auto line = [&](const char* name, double v) {
        out << name << " = " << format_number(v) << "\n";
        worst = std::max(worst, std::abs(v));
    };
    NonClassicalData z = cfg.nonclassical ? *cfg.nonclassical : classical_to_nonclassical(*cfg.classical);
    if (cfg.classical) {
        const AgreementReport a = check_agreement(*cfg.classical);
        line("agreement_r1", a.r1);
        line("agreement_r2", a.r2);
        line("agreement_r3", a.r3);
        line("agreement_r4", a.r4);
    }
    const CompatibilityReport c = check_compatibility(z);
    line("compat_rho1", c.rho1);
    line("compat_rho2", c.rho2);
    line("compat_rho3", c.rho3);
    if (worst > tol) {
        out << "FAIL: max |residual| " << format_number(worst) << " > " << format_number(tol) << "\n";
        return exit_check_failed;
    }
    out << "OK: max |residual| " << format_number(worst) << " <= " << format_number(tol) << "\n";
    return exit_ok;
}

Expr parse_u(const std::string& text) {
    try {
        return parse(text);
    } catch (const ParseError& e) {
        throw ConfigError(std::string("--u: ") + e.what());
    }
}

int cmd_verify(const std::string& u_text, const fs::path& config, const fs::path& out_path, std::ostream& out) {
    const Expr u = parse_u(u_text);
    const Config cfg = load_config(config);
    ManufacturedCase mc = manufactured_problem(u, cfg.coeffs, cfg.grid, cfg.tol);
    mc.problem.max_iter = cfg.max_iter;
    mc.problem.ridge = cfg.ridge;
    mc.problem.norm_exponent = cfg.norm_p;
    const Solution s = solve_dirichlet(mc.problem);
    const auto errors = field_errors(s.field, mc.reference);
    std::ostringstream o;
    o << "derivative,max_error,l2_error\n";
    for (int i1 = 0; i1 <= 2; ++i1)
        for (int i2 = 0; i2 <= 2; ++i2)
            o << "d" << i1 << i2 << ',' << format_number(errors[i1][i2].max_error) << ','
              << format_number(errors[i1][i2].l2_error) << '\n';
    write_text(out_path, o.str());
    out << "u max error " << format_number(errors[0][0].max_error) << ", L2 error "
        << format_number(errors[0][0].l2_error) << "\n";
    return exit_ok;
}

std::vector<int> parse_grids(const std::string& text) {
    std::vector<int> ns;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        char* end = nullptr;
        const long n = std::strtol(item.c_str(), &end, 10);
        if (item.empty() || *end != '\0' || n < 1 || n > 1 << 16)
            throw ConfigError("--grids: '" + item + "' is not a positive integer");
        ns.push_back(static_cast<int>(n));
    }
    if (ns.size() < 2) throw ConfigError("--grids needs at least two sizes");
    for (std::size_t k = 1; k < ns.size(); ++k)
        if (ns[k] != 2 * ns[k - 1]) throw ConfigError("--grids must double at each step");
    return ns;
}

int cmd_convergence(const std::string& u_text, const fs::path& config, const std::string& grids,
                    const fs::path& out_path, std::ostream& out) {
    const Expr u = parse_u(u_text);
    const std::vector<int> ns = parse_grids(grids);
    const Config cfg = load_config(config);
    const ConvergenceTable t = convergence_study(
        u, cfg.coeffs, ns, StudySettings{cfg.grid.g1.length(), cfg.grid.g2.length(), cfg.tol, cfg.max_iter});
    std::ostringstream o;
    o << "n,max_error,l2_error,observed_order\n";
    for (const ConvergenceRow& r : t.rows) {
        o << r.n << ',' << format_number(r.max_error) << ',' << format_number(r.l2_error) << ',';
        if (r.observed_order) o << format_number(*r.observed_order);
        o << '\n';
    }
    write_text(out_path, o.str());
    for (const ConvergenceRow& r : t.rows) {
        out << "n=" << r.n << " max_error=" << format_number(r.max_error);
        if (r.observed_order) out << " order=" << format_number(*r.observed_order);
        out << "\n";
    }
    return exit_ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Dirichlet problems for a fourth-order pseudoparabolic equation on a rectangle", "ppd"};
    app.require_subcommand(1);

    std::string config, out_path, diag_path, direction, u_text, grids = "16,32,64";
    bool field = false;
    double check_tol = 1e-8;

    auto* solve = app.add_subcommand("solve", "solve the boundary-value problem of a config");
    solve->add_option("--config", config, "problem definition")->required();
    solve->add_option("--out", out_path, "CSV file for the u grid")->required();
    solve->add_option("--diag", diag_path, "JSON diagnostics file")->required();
    solve->add_flag("--field", field, "also write all nine derivative grids");

    auto* convert = app.add_subcommand("convert", "convert boundary data between formulations");
    convert->add_option("--config", config, "problem definition")->required();
    convert->add_option("--direction", direction, "c2n or n2c")->required()->check(CLI::IsMember({"c2n", "n2c"}));
    convert->add_option("--out", out_path, "output data block")->required();

    auto* check = app.add_subcommand("check", "print agreement / compatibility residuals");
    check->add_option("--config", config, "problem definition")->required();
    check->add_option("--tol", check_tol, "failure threshold");

    auto* verify = app.add_subcommand("verify", "manufactured-solution error report on the config grid");
    verify->add_option("--u", u_text, "manufactured solution")->required();
    verify->add_option("--config", config, "domain, coefficients and solver settings")->required();
    verify->add_option("--out", out_path, "CSV error table")->required();

    auto* conv = app.add_subcommand("convergence", "manufactured-solution grid-refinement study");
    conv->add_option("--u", u_text, "manufactured solution")->required();
    conv->add_option("--config", config, "domain, coefficients and solver settings")->required();
    conv->add_option("--grids", grids, "comma-separated doubling grid sizes");
    conv->add_option("--out", out_path, "CSV convergence table")->required();

    std::vector<std::string> storage;
    storage.reserve(args.size() + 1);
    storage.emplace_back("ppd");
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : storage) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "ppd: " << e.what() << "\n";
        return exit_config;
    }

    try {
        if (solve->parsed()) return cmd_solve(config, out_path, diag_path, field, out);
        if (convert->parsed()) return cmd_convert(config, direction, out_path, out);
        if (check->parsed()) return cmd_check(config, check_tol, out);
        if (verify->parsed()) return cmd_verify(u_text, config, out_path, out);
        if (conv->parsed()) return cmd_convergence(u_text, config, grids, out_path, out);
    } catch (const ConfigError& e) {
        err << "ppd: config error: " << e.what() << "\n";
        return exit_config;
    } catch (const ParseError& e) {
        err << "ppd: parse error: " << e.what() << "\n";
        return exit_config;
    } catch (const EvalDomainError& e) {
        err << "ppd: evaluation error: " << e.what() << "\n";
        return exit_config;
    } catch (const IoError& e) {
        err << "ppd: I/O error: " << e.what() << "\n";
        return exit_io;
    } catch (const NumericalError& e) {
        err << "ppd: numerical failure: " << e.what() << "\n";
        return exit_numerical;
    } catch (const std::invalid_argument& e) {
        err << "ppd: invalid input: " << e.what() << "\n";
        return exit_config;
    }
    return exit_config;
}

}  // namespace ppd::cli
