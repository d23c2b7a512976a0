#ifndef SPECGAL_STUDIES_HPP
#define SPECGAL_STUDIES_HPP

#include "specgal/basis.hpp"
#include "specgal/cdr_operator.hpp"
#include "specgal/dense.hpp"
#include "specgal/errors.hpp"
#include "specgal/fast_solver.hpp"
#include "specgal/gmres.hpp"
#include "specgal/problems.hpp"

#include <algorithm>
#include <cstdio>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace specgal
{

enum class Study
{
    solve,
    convergence,
    iterations,
    spectrum,
};

inline Study parse_study(std::string_view name)
{
    if (name == "solve")
        return Study::solve;
    if (name == "convergence")
        return Study::convergence;
    if (name == "iterations")
        return Study::iterations;
    if (name == "spectrum")
        return Study::spectrum;
    throw InvalidArgument("unknown study '" + std::string(name) + "'");
}

struct StudyConfig
{
    Study               study   = Study::solve;
    CaseStudy           case_id = CaseStudy::case_i;
    int                 dim     = 2;
    std::vector<int>    orders{16};
    std::vector<double> rhos{1e-2};
    double              tol      = 1e-10;
    int                 max_iter = 100;
    std::string         output_path;
};

inline void validate(const StudyConfig& cfg)
{
    check_dim(cfg.dim);
    if (cfg.orders.empty())
        throw InvalidArgument("at least one N is required");
    if (!std::is_sorted(cfg.orders.begin(), cfg.orders.end()) ||
        std::adjacent_find(cfg.orders.begin(), cfg.orders.end()) != cfg.orders.end())
        throw InvalidArgument("N list must be strictly ascending");
    if (cfg.orders.front() < 4)
        throw InvalidArgument("N must be >= 4");
    if (cfg.rhos.empty())
        throw InvalidArgument("at least one rho is required");
    for (double r : cfg.rhos)
        if (!(r > 0.0))
            throw InvalidArgument("rho must be positive");
    if (!(cfg.tol > 0.0))
        throw InvalidArgument("tolerance must be positive");
    if (cfg.max_iter < 1)
        throw InvalidArgument("max-iter must be >= 1");
    if (cfg.study == Study::spectrum)
    {
        if (cfg.orders.size() != 1 || cfg.rhos.size() != 1)
            throw InvalidArgument("spectrum study takes exactly one N and one rho");
        if (ipow(cfg.orders.front() - 1, cfg.dim) > dense_mode_limit)
            throw SizeError("spectrum study needs (N-1)^d <= " + std::to_string(dense_mode_limit));
    }
}

/// Floats with 17 significant digits so values round-trip exactly.
inline std::string format_real(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct CsvReport
{
    std::vector<std::string>              header;
    std::vector<std::vector<std::string>> rows;
    bool                                  all_converged = true;

    void add_row(std::vector<std::string> row)
    {
        if (row.size() != header.size())
            throw InvalidArgument("CSV row has " + std::to_string(row.size()) + " columns, header has " +
                                  std::to_string(header.size()));
        rows.push_back(std::move(row));
    }

    void write(std::ostream& os) const
    {
        auto line = [&os](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i)
                os << (i ? "," : "") << cells[i];
            os << '\n';
        };
        line(header);
        for (const auto& r : rows)
            line(r);
    }

    [[nodiscard]] std::string str() const
    {
        std::ostringstream os;
        write(os);
        return os.str();
    }

    [[nodiscard]] std::size_t column(std::string_view name) const
    {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end())
            throw InvalidArgument("no CSV column '" + std::string(name) + "'");
        return static_cast<std::size_t>(it - header.begin());
    }
};

/// Everything produced by one benchmark solve.
struct SolveOutcome
{
    ControlProblem problem;
    SaddleVector   solution;
    KrylovStats    stats;
    double         alpha_bar = 0.0;
    double         gamma_bar = 0.0;
    double         state_error   = 0.0;
    double         control_error = 0.0;
};

/// Offline setup (basis, operator, preconditioner), GMRES solve and L2 errors.
inline SolveOutcome solve_case(CaseStudy id, int dim, int order, double rho, double tol = 1e-10, int max_iter = 100)
{
    SolveOutcome out;
    out.problem     = make_case_study(id, dim, order, rho);
    auto basis      = std::make_shared<const Basis1D>(build_basis(order));
    const CdrOperator op(basis, out.problem.coefficients, rho);
    const auto        mid = coefficient_midpoint(out.problem.coefficients, basis->rule().nodes);
    out.alpha_bar         = mid.alpha_bar;
    out.gamma_bar         = mid.gamma_bar;
    const FastSolver prec(*basis, dim, mid.alpha_bar, mid.gamma_bar, rho);

    const SaddleVector b = assemble_rhs(out.problem, *basis);
    auto [x, stats]      = gmres_solve(op, prec, b, tol, max_iter);
    out.solution         = std::move(x);
    out.stats            = std::move(stats);
    out.state_error      = l2_error(*basis, out.solution.first, out.problem.exact->state);
    out.control_error    = l2_error(*basis, out.solution.second, out.problem.exact->control);
    return out;
}

inline Eigen::Index degrees_of_freedom(int order, int dim)
{
    return 2 * ipow(order - 1, dim);
}

inline CsvReport run_solve_study(const StudyConfig& cfg)
{
    validate(cfg);
    CsvReport report;
    report.header = {"case", "dim", "N", "rho", "dof", "iters", "converged", "final_residual", "true_residual",
                     "err_y_l2", "err_u_l2", "seconds"};
    for (int order : cfg.orders)
        for (double rho : cfg.rhos)
        {
            const auto r = solve_case(cfg.case_id, cfg.dim, order, rho, cfg.tol, cfg.max_iter);
            report.all_converged = report.all_converged && r.stats.converged;
            report.add_row({std::string(to_string(cfg.case_id)), std::to_string(cfg.dim), std::to_string(order),
                            format_real(rho), std::to_string(degrees_of_freedom(order, cfg.dim)),
                            std::to_string(r.stats.iterations), r.stats.converged ? "true" : "false",
                            format_real(r.stats.final_residual()), format_real(r.stats.true_residual),
                            format_real(r.state_error), format_real(r.control_error),
                            format_real(r.stats.wall_seconds)});
        }
    return report;
}

/// Discretization error against the exact optimal pair for each N (first rho of the list).
inline CsvReport run_convergence_study(const StudyConfig& cfg)
{
    validate(cfg);
    CsvReport report;
    report.header = {"case", "dim", "N", "dof", "err_y_l2", "err_u_l2", "iters", "converged", "seconds"};
    const double rho = cfg.rhos.front();
    for (int order : cfg.orders)
    {
        const auto r = solve_case(cfg.case_id, cfg.dim, order, rho, cfg.tol, cfg.max_iter);
        report.all_converged = report.all_converged && r.stats.converged;
        report.add_row({std::string(to_string(cfg.case_id)), std::to_string(cfg.dim), std::to_string(order),
                        std::to_string(degrees_of_freedom(order, cfg.dim)), format_real(r.state_error),
                        format_real(r.control_error), std::to_string(r.stats.iterations),
                        r.stats.converged ? "true" : "false", format_real(r.stats.wall_seconds)});
    }
    return report;
}

/// GMRES iteration counts over the N x rho grid.
inline CsvReport run_iteration_study(const StudyConfig& cfg)
{
    validate(cfg);
    CsvReport report;
    report.header = {"case", "dim", "N", "rho", "iters", "converged", "final_residual", "seconds"};
    for (int order : cfg.orders)
        for (double rho : cfg.rhos)
        {
            const auto r = solve_case(cfg.case_id, cfg.dim, order, rho, cfg.tol, cfg.max_iter);
            report.all_converged = report.all_converged && r.stats.converged;
            report.add_row({std::string(to_string(cfg.case_id)), std::to_string(cfg.dim), std::to_string(order),
                            format_real(rho), std::to_string(r.stats.iterations),
                            r.stats.converged ? "true" : "false", format_real(r.stats.final_residual()),
                            format_real(r.stats.wall_seconds)});
        }
    return report;
}

/// Full eigenvalue set of the dense preconditioned operator P^{-1} A.
inline CsvReport run_spectrum_study(const StudyConfig& cfg)
{
    validate(cfg);
    const int    order = cfg.orders.front();
    const double rho   = cfg.rhos.front();

    const ControlProblem problem = make_case_study(cfg.case_id, cfg.dim, order, rho);
    auto                 basis   = std::make_shared<const Basis1D>(build_basis(order));
    const CdrOperator    op(basis, problem.coefficients, rho);
    const auto           mid = coefficient_midpoint(problem.coefficients, basis->rule().nodes);
    const FastSolver     prec(*basis, cfg.dim, mid.alpha_bar, mid.gamma_bar, rho);

    CsvReport report;
    report.header = {"re", "im"};
    for (const auto& z : preconditioned_spectrum(op, prec))
        report.add_row({format_real(z.real()), format_real(z.imag())});
    return report;
}

inline CsvReport run_study(const StudyConfig& cfg)
{
    switch (cfg.study)
    {
    case Study::solve: return run_solve_study(cfg);
    case Study::convergence: return run_convergence_study(cfg);
    case Study::iterations: return run_iteration_study(cfg);
    case Study::spectrum: return run_spectrum_study(cfg);
    }
    throw InvalidArgument("unknown study");
}

} // namespace specgal

#endif // SPECGAL_STUDIES_HPP
