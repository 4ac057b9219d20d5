#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sys/wait.h>
#include <sstream>
#include <string>
#include <vector>

#include "fastbf/cli.hpp"

using namespace fastbf;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "fastbf");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("fastbf_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
        input_ = path("in.pgm");
        save_pgm_file(input_, synthetic_image(40, 32, 12));
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
    std::string input_;
};

std::string slurp(const std::string& p) {
    const auto bytes = read_file(p);
    return std::string(bytes.begin(), bytes.end());
}

std::size_t count_lines(const std::string& s) {
    std::size_t n = 0;
    for (char c : s) n += c == '\n';
    return n;
}

}  // namespace

TEST_F(CliTest, MissingInputIsUsageError) {
    const std::string missing = path("nope.pgm");
    const auto r = run_cli({"filter", missing, path("out.pgm")});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find(missing), std::string::npos);
}

TEST_F(CliTest, BadFlagsAreUsageErrors) {
    EXPECT_EQ(run_cli({"filter", "--method", "median", input_, path("o.pgm")}).code, 2);
    EXPECT_EQ(run_cli({"filter", "--sigma-s", "-1", input_, path("o.pgm")}).code, 2);
    EXPECT_EQ(run_cli({}).code, 2);
    EXPECT_EQ(run_cli({"approx-report", "--kernel", "constant"}).code, 2);
}

TEST_F(CliTest, CorruptInputIsRuntimeFailure) {
    const std::string bad = "P5\n2 2\n255\n\x01";
    write_file(path("bad.pgm"), std::vector<std::uint8_t>(bad.begin(), bad.end()));
    const auto r = run_cli({"filter", path("bad.pgm"), path("o.pgm")});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("byte offset"), std::string::npos);
}

TEST_F(CliTest, BruteFilterWritesOracleOutput) {
    const auto r = run_cli({"filter", "--method", "brute", "--sigma-s", "2", "--sigma-r", "30", input_, path("out.pgm")});
    ASSERT_EQ(r.code, 0) << r.err;
    FilterConfig c;
    c.sigma_s = 2.0;
    c.sigma_r = 30.0;
    const auto p = make_filter_params(c);
    const Image img = load_pgm_file(input_);
    const Image expected = brute_force_bf(img, p.spatial.base, p.range.base, p.radius);
    EXPECT_EQ(read_file(path("out.pgm")), save_pgm(expected));
}

TEST_F(CliTest, FastFilterReportsAgainstOracle) {
    const auto r = run_cli({"filter", "--method", "fast", "--range-terms", "5", "--compare-oracle", input_, path("out.pgm")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("diagnostics: degenerate=0"), std::string::npos);
    const auto pos = r.out.find("vs oracle: psnr=");
    ASSERT_NE(pos, std::string::npos);
    double db = 0.0, s = 0.0;
    ASSERT_EQ(std::sscanf(r.out.c_str() + pos, "vs oracle: psnr=%lf dB ssim=%lf", &db, &s), 2);
    const Image img = load_pgm_file(input_);
    const auto p = make_filter_params({});
    const Image fast = load_pgm_file(path("out.pgm"));
    const Image ref = brute_force_bf(img, p.spatial.base, p.range.base, p.radius);
    // the printed metric is measured before 8-bit quantization of the written file
    EXPECT_NEAR(db, psnr(fast_bf(img, p), ref), 1e-4);
    EXPECT_GT(s, 0.9);
}

TEST_F(CliTest, BenchCsvShape) {
    const auto r = run_cli({"bench", "--size", "24", "--radii", "2,4", "--sigma-r-list", "20,40", "--repeats", "1",
                            "--methods", "brute,fast,cached"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')),
              "method,radius,sigma_s,sigma_r,image_px,wall_ms,psnr_vs_oracle,ssim_vs_oracle");
    EXPECT_EQ(count_lines(r.out), 1u + 2 * 2 * 3);
    EXPECT_NE(r.out.find("\nbrute,2,"), std::string::npos);
    EXPECT_NE(r.out.find(",576,"), std::string::npos);
}

TEST_F(CliTest, EmptySweepListIsAnError) {
    cli::RunConfig c;
    c.bench_radii.clear();
    EXPECT_THROW(cli::bench_csv(c), cli::UsageError);
    c = {};
    c.bench_methods = {"gpu"};
    EXPECT_THROW(cli::bench_csv(c), cli::UsageError);
}

TEST_F(CliTest, RangeReportSummary) {
    const auto r = run_cli({"approx-report", "--role", "range", "--sigma", "40", "--output", path("r.csv")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "N->M: (1,2) (2,2) (3,3) (4,4) (5,5) (6,6) (7,7) (8,8)\n");
    const std::string csv = slurp(path("r.csv"));
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "basis,index,coefficient,selected");
    EXPECT_EQ(count_lines(csv), 161u);
}

TEST_F(CliTest, SpatialReportAgreesWithLibrary) {
    const auto r = run_cli({"approx-report", "--role", "spatial", "--sigma", "5"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rep = spatial_report(truncate_kernel(KernelSpec::gaussian(5.0, KernelRole::spatial), 0.01), 4, 5);
    EXPECT_EQ(r.out, report_csv(rep));
    EXPECT_EQ(r.err, report_summary(rep));
}

TEST_F(CliTest, ConstantKernelHasSingleNonzero) {
    for (const std::string role : {"spatial", "range"}) {
        const auto r = run_cli({"approx-report", "--role", role, "--kernel", "constant", "--truncation", "8", "--j-max",
                                "2", "--count", "20", "--terms", "1"});
        ASSERT_EQ(r.code, 0) << r.err;
        std::istringstream in(r.out);
        std::string line;
        std::getline(in, line);
        int nonzero = 0;
        while (std::getline(in, line)) {
            const auto a = line.find(','), b = line.find(',', a + 1), c = line.find(',', b + 1);
            nonzero += std::stod(line.substr(b + 1, c - b - 1)) != 0.0;
        }
        EXPECT_EQ(nonzero, 1) << role;
    }
}

TEST_F(CliTest, OutputsAreByteIdenticalAcrossRuns) {
    for (int i = 0; i < 2; ++i) {
        const std::string n = std::to_string(i);
        ASSERT_EQ(run_cli({"synth", "--width", "33", "--height", "20", "--seed", "5", path("s" + n + ".pgm")}).code, 0);
        ASSERT_EQ(run_cli({"filter", "--threads", i == 0 ? "1" : "3", path("s" + n + ".pgm"), path("f" + n + ".pgm")}).code, 0);
        ASSERT_EQ(run_cli({"approx-report", "--role", "spatial", "--sigma", "2", "--output", path("a" + n + ".csv")}).code, 0);
    }
    EXPECT_EQ(slurp(path("s0.pgm")), slurp(path("s1.pgm")));
    EXPECT_EQ(slurp(path("f0.pgm")), slurp(path("f1.pgm")));
    EXPECT_EQ(slurp(path("a0.csv")), slurp(path("a1.csv")));
}

TEST_F(CliTest, PrecomputeSelectsCoveringRadius) {
    const auto r = run_cli({"precompute", "--radii", "120,60,90", "--sigma-r", "25", input_, path("c.pgm")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("selected T_ri=90.0000"), std::string::npos);
    const auto fail = run_cli({"precompute", "--radii", "30,40", "--sigma-r", "25", input_, path("c.pgm")});
    EXPECT_EQ(fail.code, 1);
    EXPECT_NE(fail.err.find("no cached radius covers T_r"), std::string::npos);
}

TEST_F(CliTest, ExecutableEndToEnd) {
    const std::string cmd = std::string("\"") + FASTBF_CLI_PATH + "\" filter \"" + path("missing.pgm") + "\" \"" +
                            path("o.pgm") + "\" 2> \"" + path("err.txt") + "\"";
    const int status = std::system(cmd.c_str());
    ASSERT_NE(status, -1);
    EXPECT_EQ(WEXITSTATUS(status), 2);
    EXPECT_NE(slurp(path("err.txt")).find("input file not found"), std::string::npos);
    const std::string ok = std::string("\"") + FASTBF_CLI_PATH + "\" filter \"" + input_ + "\" \"" + path("o.pgm") +
                           "\" > /dev/null";
    EXPECT_EQ(WEXITSTATUS(std::system(ok.c_str())), 0);
    EXPECT_EQ(load_pgm_file(path("o.pgm")).width(), 40);
}
