#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "aucpower/binormal.hpp"
#include "aucpower/ingest.hpp"
#include "aucpower/monte_carlo.hpp"
#include "aucpower/pilot.hpp"
#include "aucpower/sample_size.hpp"
#include "json.hpp"

namespace aucpower::api {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Caps applied to every request, from the CLI or the HTTP service.
struct Limits {
    std::size_t max_iterations = 20000;
    std::size_t max_grid_points = 200;
    std::size_t max_n = 1'000'000;
    std::size_t max_redraws = 10000;
    std::size_t max_grid_resolution = 256;
    std::size_t max_pilot_rows = 1'000'000;
};

struct FieldError {
    std::string field;
    std::string message;
};

// Input validation failure with one entry per offending field.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<FieldError> errors);
    const std::vector<FieldError>& errors() const noexcept { return errors_; }

private:
    std::vector<FieldError> errors_;
};

enum class RuleKind { kOpenUnit, kUnitLowerClosed, kCount, kSeed, kCountList, kChoice };

// One accepted request field. The same table drives server-side validation
// and the /api/v1/constraints document consumed by the web client.
struct FieldRule {
    std::string name;
    RuleKind kind = RuleKind::kOpenUnit;
    bool required = false;
    std::optional<double> default_value;
    double min = 0.0;  // kCount / kCountList bounds, inclusive
    double max = 0.0;
    std::vector<std::string> choices;  // kChoice
    std::string default_choice;
    std::string description;
};

enum class Endpoint { kSingle, kPilot, kBinormal, kPreview };

std::vector<FieldRule> field_rules(Endpoint endpoint, const Limits& limits);

// Constraint tables for all endpoints, keyed by endpoint name.
json constraints_document(const Limits& limits);

struct SingleInputs {
    SingleSizeRequest request;
};

enum class PowerMode { kSingleN, kGrid, kTargetPower };

struct PowerQuery {
    PowerMode mode = PowerMode::kSingleN;
    std::size_t n = 0;
    std::vector<std::size_t> n_grid;
    double target_power = 0.0;
    MinNOptions search;
};

struct PilotInputs {
    PilotDataset data;
    std::optional<double> prevalence;
    McConfig mc;
    PowerQuery query;
};

struct BinormalInputs {
    BinormalSpec spec;
    Orientation orientation = Orientation::kCasesHigher;
    McConfig mc;
    PowerQuery query;
};

struct PreviewInputs {
    BinormalSpec spec;
    Orientation orientation = Orientation::kCasesHigher;
    std::size_t grid_resolution = 64;
};

// Parsers. Missing optional fields take their table defaults; a missing seed
// is replaced by a fresh random one so every result can be replayed. `threads`
// only controls parallelism and is never echoed.
SingleInputs parse_single(const json& body, const Limits& limits);
// `data` holds {"label": [...], "pred_a": [...], "pred_b": [...]} unless
// `preloaded` is given (CSV upload or CLI file), in which case the body must
// not carry data.
PilotInputs parse_pilot(const json& body, const Limits& limits, unsigned threads,
                        std::optional<PilotDataset> preloaded = std::nullopt);
BinormalInputs parse_binormal(const json& body, const Limits& limits, unsigned threads);
PreviewInputs parse_preview(const json& body, const Limits& limits);

// Body keys that select request handling rather than computation inputs.
bool is_control_key(std::string_view key);

}  // namespace aucpower::api
