#ifndef SPECGAL_TOOLS_CLI_HPP
#define SPECGAL_TOOLS_CLI_HPP

#include "specgal/studies.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace specgal::cli
{

inline constexpr int exit_ok             = 0;
inline constexpr int exit_not_converged  = 1;
inline constexpr int exit_usage          = 2;

inline void apply_thread_limit()
{
    const char* env = std::getenv("SPECGAL_THREADS");
    if (env == nullptr || *env == '\0')
        return;
    const int threads = std::atoi(env);
    if (threads < 1)
        return;
#ifdef _OPENMP
    omp_set_num_threads(threads);
#endif
    Eigen::setNbThreads(threads);
}

/// specgal_bench {solve|convergence|iterations|spectrum} --case ... [flags]
/// Exit codes: 0 success, 1 some row did not converge, 2 usage or input error.
inline int cli_main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    CLI::App app{"Spectral-Galerkin optimal control benchmarks; writes CSV"};
    app.option_defaults()->always_capture_default();

    std::string         study_name;
    std::string         case_name;
    int                 dim = 2;
    std::vector<int>    orders;
    std::vector<double> rhos{1e-2};
    double              tol      = 1e-10;
    int                 max_iter = 100;
    std::string         out_path;

    app.add_option("study,--study", study_name, "solve | convergence | iterations | spectrum")
        ->required()
        ->check(CLI::IsMember({"solve", "convergence", "iterations", "spectrum"}));
    app.add_option("--case", case_name, "case1 | c1 | c2 | const")
        ->required()
        ->check(CLI::IsMember({"case1", "c1", "c2", "const"}));
    app.add_option("--dim", dim, "spatial dimension")->check(CLI::IsMember({1, 2, 3}));
    app.add_option("--n", orders, "comma-separated list of N (modes per direction)")->required()->delimiter(',');
    app.add_option("--rho", rhos, "comma-separated list of Tikhonov parameters")->delimiter(',');
    app.add_option("--tol", tol, "GMRES relative tolerance (preconditioned residual)");
    app.add_option("--max-iter", max_iter, "GMRES iteration cap");
    app.add_option("--out", out_path, "output CSV path (default: stdout)");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e)
    {
        out << app.help();
        return exit_ok;
    }
    catch (const CLI::ParseError& e)
    {
        err << "error: " << e.what() << "\n" << app.help();
        return exit_usage;
    }

    StudyConfig cfg;
    try
    {
        cfg.study       = parse_study(study_name);
        cfg.case_id     = parse_case_study(case_name);
        cfg.dim         = dim;
        cfg.orders      = orders;
        cfg.rhos        = rhos;
        cfg.tol         = tol;
        cfg.max_iter    = max_iter;
        cfg.output_path = out_path;
        validate(cfg);
    }
    catch (const Error& e)
    {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }

    apply_thread_limit();

    CsvReport report;
    try
    {
        report = run_study(cfg);
    }
    catch (const Error& e)
    {
        err << "error: " << e.what() << "\n";
        return exit_not_converged;
    }

    if (out_path.empty())
        report.write(out);
    else
    {
        std::ofstream file(out_path, std::ios::binary);
        if (!file)
        {
            err << "error: cannot open '" << out_path << "' for writing\n";
            return exit_usage;
        }
        report.write(file);
    }
    if (!report.all_converged)
    {
        err << "warning: at least one solve did not reach the tolerance\n";
        return exit_not_converged;
    }
    return exit_ok;
}

} // namespace specgal::cli

#endif // SPECGAL_TOOLS_CLI_HPP
