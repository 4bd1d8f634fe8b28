#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "aucpower/pilot.hpp"
#include "aucpower/roc.hpp"

namespace aucpower {

struct PilotFileSpec {
    std::string label_column = "label";
    std::string pred_a_column = "pred_a";
    std::string pred_b_column = "pred_b";
    char delimiter = ',';
    // Drop unparseable rows (recorded in PilotSummary::dropped) instead of
    // failing on the first one.
    bool lenient = false;
};

struct DroppedRow {
    std::size_t row = 0;  // file line number
    std::string reason;
};

struct PilotSummary {
    std::size_t n_rows = 0;
    std::size_t n_cases = 0;
    std::size_t n_controls = 0;
    double prevalence = 0.0;
    // Empty when the estimate is exactly 0 or 1 and no interval exists.
    std::optional<AurocEstimate> auroc_a;
    std::optional<AurocEstimate> auroc_b;
    std::vector<DroppedRow> dropped;
    std::vector<std::string> warnings;

    std::size_t rows_dropped() const { return dropped.size(); }
};

struct ParsedPilot {
    PilotDataset dataset;
    PilotSummary summary;
};

// Reads a delimited pilot file with a header row. Labels accept 0/1 and
// true/false (any case); predictions must be finite decimal numbers with a
// '.' decimal point. See docs/pilot-csv.md for the full grammar.
ParsedPilot parse_pilot(std::istream& in, const PilotFileSpec& spec = {});
ParsedPilot parse_pilot_file(const std::filesystem::path& path, const PilotFileSpec& spec = {});

// Class counts, prevalence and per-model AUROC intervals of a validated dataset.
PilotSummary summarize_pilot(const PilotDataset& dataset);

// Writes the dataset with the spec's header and delimiter, using shortest
// round-trip formatting for the scores.
void write_pilot_csv(std::ostream& out, const PilotDataset& dataset, const PilotFileSpec& spec = {});

}  // namespace aucpower
