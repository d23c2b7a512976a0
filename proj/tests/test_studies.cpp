#include "specgal/studies.hpp"

#include "cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace specgal;

namespace
{
StudyConfig config(Study s, CaseStudy id, int dim, std::vector<int> orders, std::vector<double> rhos = {1e-2})
{
    StudyConfig c;
    c.study   = s;
    c.case_id = id;
    c.dim     = dim;
    c.orders  = std::move(orders);
    c.rhos    = std::move(rhos);
    return c;
}

// CSV without the timing column, for determinism checks.
std::string without_column(const CsvReport& r, const std::string& name)
{
    const auto         skip = r.column(name);
    std::ostringstream os;
    for (const auto& row : r.rows)
    {
        for (std::size_t i = 0; i < row.size(); ++i)
            if (i != skip)
                os << row[i] << ',';
        os << '\n';
    }
    return os.str();
}

int run_cli(std::vector<std::string> args, std::string& out, std::string& err)
{
    args.insert(args.begin(), "specgal_bench");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream o, e;
    const int          code = cli::cli_main(static_cast<int>(argv.size()), argv.data(), o, e);
    out                     = o.str();
    err                     = e.str();
    return code;
}
} // namespace

TEST(StudyConfig, Validation)
{
    EXPECT_NO_THROW(validate(config(Study::solve, CaseStudy::c1, 2, {8, 12})));
    EXPECT_THROW(validate(config(Study::solve, CaseStudy::c1, 2, {})), InvalidArgument);
    EXPECT_THROW(validate(config(Study::solve, CaseStudy::c1, 2, {12, 8})), InvalidArgument);
    EXPECT_THROW(validate(config(Study::solve, CaseStudy::c1, 2, {8, 8})), InvalidArgument);
    EXPECT_THROW(validate(config(Study::solve, CaseStudy::c1, 2, {3})), InvalidArgument);
    EXPECT_THROW(validate(config(Study::solve, CaseStudy::c1, 2, {8}, {-1.0})), InvalidArgument);
    EXPECT_THROW(validate(config(Study::solve, CaseStudy::c1, 5, {8})), InvalidArgument);
    EXPECT_THROW(validate(config(Study::spectrum, CaseStudy::c1, 2, {8, 10})), InvalidArgument);
    EXPECT_THROW(validate(config(Study::spectrum, CaseStudy::c1, 3, {18})), SizeError);
    EXPECT_NO_THROW(validate(config(Study::spectrum, CaseStudy::c1, 3, {17})));
    EXPECT_THROW(parse_study("plot"), InvalidArgument);
}

TEST(Csv, FormatAndRowGuard)
{
    EXPECT_EQ(format_real(0.1), "0.10000000000000001");
    EXPECT_EQ(std::stod(format_real(1.0 / 3.0)), 1.0 / 3.0);
    CsvReport r;
    r.header = {"a", "b"};
    r.add_row({"1", "2"});
    EXPECT_THROW(r.add_row({"1"}), InvalidArgument);
    EXPECT_EQ(r.str(), "a,b\n1,2\n");
}

TEST(Studies, ConvergenceRowsAndDeterminism)
{
    const auto cfg = config(Study::convergence, CaseStudy::case_i, 3, {6, 8, 10});
    const auto a   = run_study(cfg);
    const auto b   = run_study(cfg);
    EXPECT_EQ((std::vector<std::string>{"case", "dim", "N", "dof", "err_y_l2", "err_u_l2", "iters", "converged",
                                        "seconds"}),
              a.header);
    ASSERT_EQ(a.rows.size(), 3u);
    EXPECT_TRUE(a.all_converged);
    EXPECT_EQ(a.rows[2][a.column("dof")], std::to_string(2 * 9 * 9 * 9));
    EXPECT_LE(std::stod(a.rows[2][a.column("err_y_l2")]), 1e-4);
    for (std::size_t i = 1; i < a.rows.size(); ++i)
        EXPECT_LT(std::stod(a.rows[i][a.column("err_y_l2")]), std::stod(a.rows[i - 1][a.column("err_y_l2")]));
    EXPECT_EQ(without_column(a, "seconds"), without_column(b, "seconds"));
}

TEST(Studies, IterationGrid)
{
    const auto r = run_study(config(Study::iterations, CaseStudy::c1, 2, {8, 12}, {1e-1, 1e-4, 1e-8}));
    ASSERT_EQ(r.rows.size(), 6u);
    for (const auto& row : r.rows)
        EXPECT_LT(std::stoi(row[r.column("iters")]), 16);
    const auto c = run_study(config(Study::iterations, CaseStudy::constant, 3, {8}));
    EXPECT_EQ(c.rows[0][c.column("iters")], "1");
}

TEST(Studies, SolveColumns)
{
    const auto r = run_study(config(Study::solve, CaseStudy::c2, 2, {10}));
    EXPECT_EQ(r.header.size(), 12u);
    EXPECT_EQ(r.rows[0][r.column("converged")], "true");
    EXPECT_LE(std::stod(r.rows[0][r.column("final_residual")]), 1e-10);
}

TEST(Studies, Spectrum)
{
    const auto c = run_study(config(Study::spectrum, CaseStudy::constant, 2, {8}));
    ASSERT_EQ(c.rows.size(), 2u * 49);
    for (const auto& row : c.rows)
    {
        EXPECT_NEAR(std::stod(row[0]), 1.0, 1e-11);
        EXPECT_NEAR(std::stod(row[1]), 0.0, 1e-11);
    }
    const auto v = run_study(config(Study::spectrum, CaseStudy::c1, 2, {8}));
    ASSERT_EQ(v.rows.size(), 2u * 49);
    for (std::size_t i = 1; i < v.rows.size(); ++i)
        EXPECT_LE(std::stod(v.rows[i - 1][0]), std::stod(v.rows[i][0]));
}

TEST(Cli, HelpAndUsageErrors)
{
    std::string out, err;
    EXPECT_EQ(run_cli({"--help"}, out, err), 0);
    EXPECT_NE(out.find("--case"), std::string::npos);
    EXPECT_EQ(run_cli({"solve", "--n", "8"}, out, err), 2);
    EXPECT_FALSE(err.empty());
    EXPECT_EQ(run_cli({"solve", "--case", "c1", "--n", "8", "--bogus"}, out, err), 2);
    EXPECT_EQ(run_cli({"solve", "--case", "c9", "--n", "8"}, out, err), 2);
    EXPECT_EQ(run_cli({"solve", "--case", "c1", "--n", "8,6"}, out, err), 2);
    EXPECT_EQ(run_cli({"spectrum", "--case", "c1", "--dim", "3", "--n", "20"}, out, err), 2);
}

TEST(Cli, WritesCsvFile)
{
    const auto  path = std::filesystem::temp_directory_path() / "specgal_cli_test.csv";
    std::string out, err;
    ASSERT_EQ(run_cli({"iterations", "--case", "case1", "--dim", "2", "--n", "8,12", "--rho", "1e-2,1e-6", "--out",
                       path.string()},
                      out, err),
              0)
        << err;
    std::ifstream file(path);
    std::string   line;
    std::getline(file, line);
    EXPECT_EQ(line, "case,dim,N,rho,iters,converged,final_residual,seconds");
    int rows = 0;
    while (std::getline(file, line))
        ++rows;
    EXPECT_EQ(rows, 4);
    std::filesystem::remove(path);
}

TEST(Cli, StdoutAndNonConvergence)
{
    std::string out, err;
    ASSERT_EQ(run_cli({"solve", "--case", "const", "--n", "6"}, out, err), 0);
    EXPECT_EQ(out.rfind("case,dim,N,rho", 0), 0u);
    EXPECT_EQ(run_cli({"solve", "--case", "c2", "--dim", "2", "--n", "10", "--max-iter", "2"}, out, err), 1);
    EXPECT_NE(err.find("warning"), std::string::npos);
    EXPECT_NE(out.find("false"), std::string::npos);
}
