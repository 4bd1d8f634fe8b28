#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "aucpower/ingest.hpp"
#include "fixtures.hpp"

namespace aucpower {
namespace {

ParsedPilot parse(const std::string& text, PilotFileSpec spec = {}) {
    std::istringstream in(text);
    return parse_pilot(in, spec);
}

Error error_of(const std::string& text, PilotFileSpec spec = {}) {
    try {
        parse(text, spec);
    } catch (const Error& e) {
        return e;
    }
    ADD_FAILURE() << "parse succeeded";
    return Error(ErrorCode::kIoError, "");
}

TEST(ParsePilot, TwoRowExample) {
    const auto p = parse("label,pred_a,pred_b\n1,0.9,0.8\n0,0.2,0.3\n");
    EXPECT_EQ(p.dataset.labels, (std::vector<Label>{1, 0}));
    EXPECT_EQ(p.dataset.scores_a, (std::vector<double>{0.9, 0.2}));
    EXPECT_EQ(p.dataset.scores_b, (std::vector<double>{0.8, 0.3}));
    EXPECT_EQ(p.summary.n_rows, 2u);
    EXPECT_EQ(p.summary.n_cases + p.summary.n_controls, p.summary.n_rows);
    EXPECT_DOUBLE_EQ(p.summary.prevalence, 0.5);
    // Perfect separation leaves no interval.
    EXPECT_FALSE(p.summary.auroc_a.has_value());
    EXPECT_TRUE(p.summary.warnings.empty());
}

TEST(ParsePilot, BadLabelReportsRow) {
    const auto e = error_of("label,pred_a,pred_b\n1,0.9,0.8\n2,0.2,0.3\n");
    EXPECT_EQ(e.code(), ErrorCode::kBadLabel);
    EXPECT_EQ(e.row, 3u);
    EXPECT_EQ(e.column, "label");
}

TEST(ParsePilot, SingleClass) {
    EXPECT_EQ(error_of("label,pred_a,pred_b\n1,0.9,0.8\n1,0.2,0.3\n").code(), ErrorCode::kSingleClass);
}

TEST(ParsePilot, BadNumberReportsRowAndColumn) {
    const auto e = error_of("label,pred_a,pred_b\n1,0.9,0.8\n0,0.2,\n");
    EXPECT_EQ(e.code(), ErrorCode::kBadNumber);
    EXPECT_EQ(e.row, 3u);
    EXPECT_EQ(e.column, "pred_b");
    for (const char* bad : {"nan", "inf", "0.2x", "1e999", "abc", "+0.5", "0x1p-2"}) {
        EXPECT_EQ(error_of(std::string("label,pred_a,pred_b\n1,0.9,0.8\n0,") + bad + ",0.1\n").code(),
                  ErrorCode::kBadNumber)
            << bad;
    }
}

TEST(ParsePilot, CommaDecimalsRejected) {
    const auto e = error_of("label;pred_a;pred_b\n1;0,9;0,8\n0;0,2;0,3\n", {.delimiter = ';'});
    EXPECT_EQ(e.code(), ErrorCode::kBadNumber);
    EXPECT_EQ(e.row, 2u);
}

TEST(ParsePilot, MissingColumnAndEmptyFile) {
    const auto e = error_of("label,pred_a\n1,0.9\n");
    EXPECT_EQ(e.code(), ErrorCode::kMissingColumn);
    EXPECT_EQ(e.column, "pred_b");
    EXPECT_EQ(error_of("").code(), ErrorCode::kEmptyAfterParsing);
    EXPECT_EQ(error_of("label,pred_a,pred_b\n\n").code(), ErrorCode::kEmptyAfterParsing);
}

TEST(ParsePilot, ColumnNamesMustBeDistinct) {
    EXPECT_EQ(error_of("a,b\n", {.label_column = "a", .pred_a_column = "a"}).code(), ErrorCode::kDomainError);
}

TEST(ParsePilot, AcceptedSyntax) {
    const std::string text =
        "\xEF\xBB\xBFid\t\"pred b\"\tscore\tlab\r\n"
        "x\t0.8\t 0.9 \tTRUE\r\n"
        "\r\n"
        "\"y\tz\"\t.5\t-1e-1\tfalse\r\n"
        "w\t3\t0.4\t1\r\n";
    const auto p = parse(text, {.label_column = "lab", .pred_a_column = "score", .pred_b_column = "pred b",
                                .delimiter = '\t'});
    EXPECT_EQ(p.dataset.labels, (std::vector<Label>{1, 0, 1}));
    EXPECT_EQ(p.dataset.scores_a, (std::vector<double>{0.9, -0.1, 0.4}));
    EXPECT_EQ(p.dataset.scores_b, (std::vector<double>{0.8, 0.5, 3.0}));
    // Both columns have a value outside [0,1]; that is a warning only.
    EXPECT_EQ(p.summary.warnings.size(), 2u);
}

TEST(ParsePilot, LenientModeDropsAndRecordsRows) {
    const std::string text = "label,pred_a,pred_b\n1,0.9,0.8\nmaybe,0.5,0.5\n0,0.2,0.3\n0,0.4,\n1,0.3,0.7\n";
    EXPECT_EQ(error_of(text).code(), ErrorCode::kBadLabel);
    const auto p = parse(text, {.lenient = true});
    EXPECT_EQ(p.dataset.size(), 3u);
    ASSERT_EQ(p.summary.rows_dropped(), 2u);
    EXPECT_EQ(p.summary.dropped[0].row, 3u);
    EXPECT_EQ(p.summary.dropped[1].row, 5u);
    EXPECT_NE(p.summary.dropped[1].reason.find("pred_b"), std::string::npos);
}

TEST(ParsePilot, RoundTrip) {
    const auto pilot = fixtures::binormal_pilot(fixtures::separated_spec(), 500, 1);
    for (char delim : {',', ';', '\t'}) {
        PilotFileSpec spec{.label_column = "y", .pred_a_column = "m1", .pred_b_column = "m2", .delimiter = delim};
        std::ostringstream out;
        write_pilot_csv(out, pilot, spec);
        const auto again = parse(out.str(), spec);
        EXPECT_EQ(again.dataset, pilot);
        std::ostringstream out2;
        write_pilot_csv(out2, again.dataset, spec);
        EXPECT_EQ(out2.str(), out.str());
    }
}

TEST(ParsePilot, SummaryMatchesEstimator) {
    const auto pilot = fixtures::binormal_pilot(fixtures::separated_spec(), 300, 2);
    std::ostringstream out;
    write_pilot_csv(out, pilot);
    const auto p = parse(out.str());
    ASSERT_TRUE(p.summary.auroc_a.has_value());
    EXPECT_EQ(p.summary.auroc_a->theta_hat, estimate_auroc(pilot.labels, pilot.scores_a));
    EXPECT_EQ(p.summary.auroc_b->theta_hat, estimate_auroc(pilot.labels, pilot.scores_b));
}

TEST(ParsePilotFile, MissingFileIsIoError) {
    try {
        parse_pilot_file("/nonexistent/pilot.csv");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::kIoError);
    }
}

TEST(ParsePilotFile, ReadsFromDisk) {
    const auto path = std::filesystem::temp_directory_path() / "aucpower_ingest_test.csv";
    {
        std::ofstream f(path);
        f << "label,pred_a,pred_b\n1,0.9,0.1\n0,0.2,0.3\n0,0.4,0.6\n";
    }
    const auto p = parse_pilot_file(path);
    EXPECT_EQ(p.dataset.size(), 3u);
    std::filesystem::remove(path);
}

}  // namespace
}  // namespace aucpower
