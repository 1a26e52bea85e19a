#include "ppd/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "ppd/errors.hpp"

namespace ppd {

namespace {

std::size_t unknown_count(const Grid2D& g) { return 1 + g.rows() + g.cols(); }
std::size_t row_count(const Grid2D& g) { return 2 + g.rows() + g.cols(); }

void validate(const DirichletProblem& p) {
    if (!(p.coeffs.grid() == p.grid) || !(p.rhs.grid() == p.grid) || !(p.data.grid() == p.grid))
        throw GridMismatch("Dirichlet problem parts live on different grids");
    if (!(p.tol > 0.0)) throw InvalidArgument("tolerance must be positive");
    if (p.ridge < 0.0) throw InvalidArgument("ridge must be non-negative");
}

GoursatSolution goursat_at(const DirichletProblem& p, std::span<const double> theta) {
    return solve_goursat(GoursatProblem{traces_for(p.data, theta), p.coeffs, p.rhs},
                         GoursatOptions{p.tol, p.max_iter});
}

std::vector<double> closure_rows(const DerivativeField& f, const NonClassicalData& z) {
    const Grid2D& g = f.grid();
    const std::size_t n1 = g.rows() - 1;
    const std::size_t n2 = g.cols() - 1;
    std::vector<double> r;
    r.reserve(row_count(g));
    r.push_back(f(0, 1)(n1, 0) - z.z01_h1);
    r.push_back(f(1, 0)(0, n2) - z.z10_h2);
    for (std::size_t i = 0; i <= n1; ++i) r.push_back(f(2, 0)(i, n2) - z.z20_h2[i]);
    for (std::size_t j = 0; j <= n2; ++j) r.push_back(f(0, 2)(n1, j) - z.z02_h1[j]);
    return r;
}

double max_edge_violation(const GridFn1D& got, const GridFn1D& want) {
    double m = 0.0;
    for (std::size_t k = 0; k < got.size(); ++k) m = std::max(m, std::abs(got[k] - want[k]));
    return m;
}

Diagnostics diagnose(const DerivativeField& f, const DirichletProblem& p) {
    Diagnostics d;
    d.compat = check_compatibility(p.data);

    const std::vector<double> rows = closure_rows(f, p.data);
    double ss = 0.0;
    for (double r : rows) ss += r * r;
    d.closure_residual = std::sqrt(ss);

    d.equation_residual = max_abs(apply_operator(f, p.coeffs) - p.rhs);

    const NonClassicalData got = nonclassical_from_field(f);
    const NonClassicalData& z = p.data;
    d.condition_residuals = {
        std::abs(got.z00 - z.z00),
        std::abs(got.z10 - z.z10),
        std::abs(got.z01 - z.z01),
        max_edge_violation(got.z20, z.z20),
        max_edge_violation(got.z02, z.z02),
        std::abs(got.z00_h1 - z.z00_h1),
        std::abs(got.z01_h1 - z.z01_h1),
        std::abs(got.z00_h2 - z.z00_h2),
        std::abs(got.z10_h2 - z.z10_h2),
        max_edge_violation(got.z20_h2, z.z20_h2),
        max_edge_violation(got.z02_h1, z.z02_h1),
    };
    d.coefficient_norms = coefficient_norms(p.coeffs, p.norm_exponent);
    return d;
}

}  // namespace

CoefficientNorms coefficient_norms(const Coefficients& a, double p) {
    CoefficientNorms n;
    n.exponent = p;
    n.a21 = mixed_norm(a.a21, infinity_exponent, p);
    n.a20 = mixed_norm(a.a20, infinity_exponent, p);
    n.a12 = mixed_norm(a.a12, p, infinity_exponent);
    n.a02 = mixed_norm(a.a02, p, infinity_exponent);
    n.a11 = lp_norm(a.a11, p);
    n.a10 = lp_norm(a.a10, p);
    n.a01 = lp_norm(a.a01, p);
    n.a00 = lp_norm(a.a00, p);
    return n;
}

TraceSet traces_for(const NonClassicalData& data, std::span<const double> theta) {
    const Grid2D g = data.grid();
    if (theta.size() != unknown_count(g)) throw InvalidArgument("closure unknown vector has wrong length");
    TraceSet t(g);
    t.u00 = data.z00;
    t.u10 = data.z10;
    t.u01 = data.z01;
    t.c = theta[0];
    t.p = data.z20;
    t.q = data.z02;
    for (std::size_t i = 0; i < g.rows(); ++i) t.g1[i] = theta[1 + i];
    for (std::size_t j = 0; j < g.cols(); ++j) t.g2[j] = theta[1 + g.rows() + j];
    return t;
}

std::vector<double> evaluate_closure(const DirichletProblem& p, std::span<const double> theta) {
    validate(p);
    return closure_rows(goursat_at(p, theta).field, p.data);
}

ClosureSystem assemble_closure_system(const DirichletProblem& p) {
    validate(p);
    ClosureSystem sys;
    sys.rows = row_count(p.grid);
    sys.cols = unknown_count(p.grid);
    sys.matrix.assign(sys.rows * sys.cols, 0.0);

    std::vector<double> theta(sys.cols, 0.0);
    auto probe = [&](std::size_t index) {
        try {
            return evaluate_closure(p, theta);
        } catch (const NonConvergenceError& e) {
            const std::string which = index == sys.cols ? std::string("base probe")
                                                        : "probe " + std::to_string(index);
            throw NonConvergenceError(which + ": " + e.what(), e.last_change());
        }
    };

    const std::vector<double> base = probe(sys.cols);
    sys.offset.resize(sys.rows);
    for (std::size_t r = 0; r < sys.rows; ++r) sys.offset[r] = -base[r];

    for (std::size_t k = 0; k < sys.cols; ++k) {
        theta[k] = 1.0;
        const std::vector<double> col = probe(k);
        theta[k] = 0.0;
        for (std::size_t r = 0; r < sys.rows; ++r) sys.matrix[r * sys.cols + k] = col[r] - base[r];
    }
    return sys;
}

Solution solve_dirichlet(const DirichletProblem& p) {
    validate(p);
    const ClosureSystem sys = assemble_closure_system(p);

    using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const Eigen::Index m = static_cast<Eigen::Index>(sys.rows);
    const Eigen::Index k = static_cast<Eigen::Index>(sys.cols);
    Eigen::Map<const RowMajor> a(sys.matrix.data(), m, k);
    Eigen::Map<const Eigen::VectorXd> b(sys.offset.data(), m);

    Eigen::VectorXd theta_hat;
    int rank = 0;
    if (p.ridge > 0.0) {
        Eigen::MatrixXd aug(m + k, k);
        aug << a, std::sqrt(p.ridge) * Eigen::MatrixXd::Identity(k, k);
        Eigen::VectorXd rhs(m + k);
        rhs << b, Eigen::VectorXd::Zero(k);
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(aug);
        theta_hat = cod.solve(rhs);
        rank = static_cast<int>(cod.rank());
    } else {
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
        theta_hat = cod.solve(b);
        rank = static_cast<int>(cod.rank());
    }
    if (!theta_hat.allFinite()) throw NumericalError("closure least-squares solve produced non-finite values");

    std::vector<double> theta(theta_hat.data(), theta_hat.data() + theta_hat.size());
    GoursatSolution gs = goursat_at(p, theta);

    Solution s{std::move(gs.field), std::move(theta), {}};
    s.diagnostics = diagnose(s.field, p);
    s.diagnostics.goursat_iterations = gs.iterations;
    s.diagnostics.closure_rank = rank;
    return s;
}

Solution solve_classical(const Coefficients& coeffs, const GridFn2D& rhs, const ClassicalData& d,
                         const Grid2D& grid, double tol, int max_iter, double ridge) {
    DirichletProblem p{grid, coeffs, rhs, classical_to_nonclassical(d), tol, max_iter, ridge};
    Solution s = solve_dirichlet(p);
    s.diagnostics.agreement = check_agreement(d);
    return s;
}

Diagnostics residual_report(const Solution& s, const DirichletProblem& p) {
    validate(p);
    if (!(s.field.grid() == p.grid)) throw GridMismatch("solution and problem live on different grids");
    Diagnostics d = diagnose(s.field, p);
    d.goursat_iterations = s.diagnostics.goursat_iterations;
    d.closure_rank = s.diagnostics.closure_rank;
    d.agreement = s.diagnostics.agreement;
    return d;
}

}  // namespace ppd
