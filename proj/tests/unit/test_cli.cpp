#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "aucpower/api/requests.hpp"
#include "aucpower/ingest.hpp"
#include "aucpower/pilot.hpp"
#include "cli.hpp"

namespace aucpower::cli {
namespace {

using api::json;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "aucpower");
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

const std::string kExample = std::string(AUCPOWER_DATA_DIR) + "/pilot_example.csv";

TEST(Cli, SingleCaseStudy) {
    const auto r = run_cli({"single", "--auroc", "0.81", "--prevalence", "0.2", "--ci-width", "0.1", "--json"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const json doc = json::parse(r.out);
    EXPECT_EQ(doc.at("results").at("n_total"), 451);
    EXPECT_EQ(doc.at("notes").size(), 0u);
    EXPECT_EQ(doc.at("command"), "single");
}

TEST(Cli, TextOutputByDefault) {
    const auto r = run_cli({"single", "--auroc", "0.81", "--prevalence", "0.2", "--ci-width", "0.1"});
    ASSERT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find("451"), std::string::npos);
    EXPECT_FALSE(json::accept(r.out));
}

TEST(Cli, WideIntervalAdvisory) {
    const auto r = run_cli({"single", "--auroc", "0.81", "--prevalence", "0.2", "--ci-width", "0.2", "--json"});
    ASSERT_EQ(r.code, kExitOk);
    const json doc = json::parse(r.out);
    ASSERT_EQ(doc.at("notes").size(), 1u);
    EXPECT_NE(doc.at("notes")[0].get<std::string>().find("0.1"), std::string::npos);
}

TEST(Cli, UsageErrorsExitTwo) {
    EXPECT_EQ(run_cli({"single", "--auroc", "0.81", "--prevalence", "0.2"}).code, kExitUsage);
    EXPECT_EQ(run_cli({}).code, kExitUsage);
    EXPECT_EQ(run_cli({"frobnicate"}).code, kExitUsage);
    EXPECT_EQ(run_cli({"single", "--auroc", "1.0", "--prevalence", "0.2", "--ci-width", "0.1"}).code, kExitUsage);
    EXPECT_EQ(run_cli({"single", "--auroc", "abc", "--prevalence", "0.2", "--ci-width", "0.1"}).code, kExitUsage);
    const auto missing = run_cli({"single", "--auroc", "0.81"});
    EXPECT_NE(missing.err.find("Usage"), std::string::npos);
}

TEST(Cli, HelpExitsZero) {
    const auto r = run_cli({"--help"});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find("binormal"), std::string::npos);
}

TEST(Cli, BinormalOpenInterval) {
    const auto r = run_cli({"binormal", "--mu-case-a", "0.44", "--mu-case-b", "0.41", "--mu-ctrl-a", "0.17",
                            "--mu-ctrl-b", "0.17", "--prevalence", "0.2", "--r-case", "1.0", "--n", "100"});
    EXPECT_EQ(r.code, kExitUsage);
    EXPECT_NE(r.err.find("r_case"), std::string::npos);
}

TEST(Cli, BinormalEchoesAnticipatedAurocs) {
    const auto r = run_cli({"binormal", "--mu-case-a", "0.44", "--mu-case-b", "0.41", "--mu-ctrl-a", "0.17",
                            "--mu-ctrl-b", "0.17", "--prevalence", "0.2", "--n", "100", "--iters", "50",
                            "--seed", "3"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto auroc_pos = r.out.find("anticipated AUROC");
    const auto power_pos = r.out.find("power");
    ASSERT_NE(auroc_pos, std::string::npos);
    EXPECT_LT(auroc_pos, r.out.find("n ", power_pos));
}

TEST(Cli, PilotRunTwiceIsByteIdentical) {
    const std::vector<std::string> args{"pilot", "--file", kExample, "--n", "400", "--seed", "7", "--iters", "300"};
    const auto a = run_cli(args);
    const auto b = run_cli(args);
    ASSERT_EQ(a.code, kExitOk) << a.err;
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, PilotTargetMatchesLibrary) {
    const auto r = run_cli({"pilot", "--file", kExample, "--target-power", "0.8", "--seed", "5", "--iters", "300",
                            "--json", "--threads", "2"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const json doc = json::parse(r.out);

    const auto parsed = parse_pilot_file(kExample);
    McConfig cfg;
    cfg.seed = 5;
    cfg.iterations = 300;
    MinNOptions opts;
    opts.n_max = 5000;
    const auto lib = min_n_for_power(parsed.dataset, 0.8, std::nullopt, cfg, opts);
    EXPECT_EQ(doc.at("results").at("min_n").at("n").get<std::size_t>(), lib.n);
}

TEST(Cli, PilotPrevalenceReweights) {
    const std::vector<std::string> base{"pilot", "--file", kExample, "--n", "300", "--seed", "9", "--iters", "400",
                                        "--json"};
    auto weighted = base;
    weighted.insert(weighted.end(), {"--prevalence", "0.2"});
    const json plain = json::parse(run_cli(base).out);
    const json rw = json::parse(run_cli(weighted).out);
    EXPECT_NE(plain.at("results").at("estimate"), rw.at("results").at("estimate"));
    const auto& w = rw.at("results").at("reweighting");
    EXPECT_NEAR(w.at("sum_weights").get<double>(), 1.0, 1e-12);
    EXPECT_NEAR(w.at("weighted_prevalence").get<double>(), 0.2, 1e-12);
}

TEST(Cli, PilotParseErrorsCarryRow) {
    const auto path = std::filesystem::temp_directory_path() / "aucpower_cli_bad.csv";
    {
        std::ofstream f(path);
        f << "label,pred_a,pred_b\n1,0.9,0.8\n0,0.2,0.3\n0,zero,0.3\n";
    }
    const auto r = run_cli({"pilot", "--file", path.string(), "--n", "50"});
    EXPECT_EQ(r.code, kExitUsage);
    EXPECT_NE(r.err.find("line 4"), std::string::npos);
    std::filesystem::remove(path);
}

TEST(Cli, ExportCsv) {
    const auto path = std::filesystem::temp_directory_path() / "aucpower_cli_curve.csv";
    const auto r = run_cli({"pilot", "--file", kExample, "--n-grid", "50,100,200", "--seed", "1", "--iters", "100",
                            "--export-csv", path.string()});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    std::ifstream f(path);
    std::string header, line;
    std::getline(f, header);
    EXPECT_EQ(header, "n,power,mc_se");
    int rows = 0;
    while (std::getline(f, line)) ++rows;
    EXPECT_EQ(rows, 3);
    std::filesystem::remove(path);
}

TEST(Cli, NullSpecPowerNearAlpha) {
    const auto r = run_cli({"binormal", "--mu-case-a", "0.6", "--mu-case-b", "0.6", "--mu-ctrl-a", "0.3",
                            "--mu-ctrl-b", "0.3", "--prevalence", "0.3", "--n", "200", "--iters", "2000",
                            "--seed", "4", "--json"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto est = json::parse(r.out).at("results").at("estimate");
    const double p = est.at("power"), se = est.at("mc_se");
    EXPECT_LE(std::abs(p - 0.05), 3 * se);
}

}  // namespace
}  // namespace aucpower::cli
