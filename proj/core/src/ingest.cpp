#include "aucpower/ingest.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

#include "aucpower/error.hpp"

namespace aucpower {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

// Splits one record. Quoted fields may contain the delimiter and "" escapes;
// unquoted fields are trimmed of spaces and tabs.
std::vector<std::string> split_record(std::string_view line, char delim) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    bool was_quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"' && trim(field).empty()) {
            field.clear();
            quoted = true;
            was_quoted = true;
        } else if (c == delim) {
            fields.push_back(was_quoted ? field : std::string(trim(field)));
            field.clear();
            was_quoted = false;
        } else {
            field += c;
        }
    }
    fields.push_back(was_quoted ? field : std::string(trim(field)));
    return fields;
}

bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() &&
           std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x)) ==
                      std::tolower(static_cast<unsigned char>(y));
           });
}

std::optional<Label> parse_label(std::string_view s) {
    if (s == "1" || iequals(s, "true")) return kCase;
    if (s == "0" || iequals(s, "false")) return kControl;
    return std::nullopt;
}

// Locale-independent: from_chars only understands '.' as the decimal point.
std::optional<double> parse_number(std::string_view s) {
    if (s.empty()) return std::nullopt;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

Error row_error(ErrorCode code, std::size_t row, const std::string& column, const std::string& msg) {
    Error e(code, "line " + std::to_string(row) + ", column '" + column + "': " + msg);
    e.row = row;
    e.column = column;
    return e;
}

}  // namespace

PilotSummary summarize_pilot(const PilotDataset& dataset) {
    const ClassCounts counts = dataset.validate();
    PilotSummary s;
    s.n_rows = dataset.size();
    s.n_cases = counts.cases;
    s.n_controls = counts.controls;
    s.prevalence = static_cast<double>(counts.cases) / static_cast<double>(s.n_rows);
    auto interval = [&](const std::vector<double>& scores) -> std::optional<AurocEstimate> {
        try {
            return auroc_with_ci(dataset.labels, scores);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::kDegenerateAuroc) throw;
            return std::nullopt;
        }
    };
    s.auroc_a = interval(dataset.scores_a);
    s.auroc_b = interval(dataset.scores_b);
    return s;
}

ParsedPilot parse_pilot(std::istream& in, const PilotFileSpec& spec) {
    const std::array<const std::string*, 3> names{&spec.label_column, &spec.pred_a_column,
                                                  &spec.pred_b_column};
    if (spec.label_column == spec.pred_a_column || spec.label_column == spec.pred_b_column ||
        spec.pred_a_column == spec.pred_b_column) {
        fail(ErrorCode::kDomainError, "label and prediction column names must be distinct");
    }

    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
        if (trim(line).empty()) continue;
        header = split_record(line, spec.delimiter);
        break;
    }
    if (header.empty()) fail(ErrorCode::kEmptyAfterParsing, "file has no header row");

    std::array<std::size_t, 3> col{};
    for (std::size_t k = 0; k < names.size(); ++k) {
        const auto it = std::find(header.begin(), header.end(), *names[k]);
        if (it == header.end()) {
            Error e(ErrorCode::kMissingColumn, "header has no column '" + *names[k] + "'");
            e.column = *names[k];
            throw e;
        }
        col[k] = static_cast<std::size_t>(it - header.begin());
    }

    ParsedPilot out;
    PilotDataset& data = out.dataset;
    std::array<std::size_t, 2> out_of_range{};
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        const auto fields = split_record(line, spec.delimiter);
        auto cell = [&](std::size_t k) -> std::string_view {
            return col[k] < fields.size() ? std::string_view(fields[col[k]]) : std::string_view{};
        };
        try {
            const auto label = parse_label(cell(0));
            if (!label) {
                throw row_error(ErrorCode::kBadLabel, line_no, spec.label_column,
                                "label '" + std::string(cell(0)) + "' is not 0, 1, true or false");
            }
            std::array<double, 2> preds{};
            for (std::size_t k = 1; k < 3; ++k) {
                const auto v = parse_number(cell(k));
                if (!v) {
                    throw row_error(ErrorCode::kBadNumber, line_no, *names[k],
                                    "'" + std::string(cell(k)) + "' is not a finite number");
                }
                preds[k - 1] = *v;
            }
            data.labels.push_back(*label);
            data.scores_a.push_back(preds[0]);
            data.scores_b.push_back(preds[1]);
            for (std::size_t k = 0; k < 2; ++k) {
                out_of_range[k] += (preds[k] < 0.0 || preds[k] > 1.0);
            }
        } catch (const Error& e) {
            if (!spec.lenient) throw;
            out.summary.dropped.push_back({line_no, e.what()});
        }
    }

    if (data.labels.empty()) fail(ErrorCode::kEmptyAfterParsing, "no data rows after parsing");
    const auto cases = static_cast<std::size_t>(std::count(data.labels.begin(), data.labels.end(), kCase));
    if (cases == 0 || cases == data.labels.size()) {
        fail(ErrorCode::kSingleClass, "pilot contains only " +
                                          std::string(cases == 0 ? "controls" : "cases") +
                                          "; both classes are required");
    }

    auto dropped = std::move(out.summary.dropped);
    out.summary = summarize_pilot(data);
    out.summary.dropped = std::move(dropped);
    for (std::size_t k = 0; k < 2; ++k) {
        if (out_of_range[k] > 0) {
            out.summary.warnings.push_back(std::to_string(out_of_range[k]) + " value(s) in '" +
                                           *names[k + 1] +
                                           "' lie outside [0,1]; accepted since the AUROC is rank-based");
        }
    }
    return out;
}

ParsedPilot parse_pilot_file(const std::filesystem::path& path, const PilotFileSpec& spec) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::kIoError, "cannot open '" + path.string() + "'");
    return parse_pilot(in, spec);
}

void write_pilot_csv(std::ostream& out, const PilotDataset& dataset, const PilotFileSpec& spec) {
    const char d = spec.delimiter;
    out << spec.label_column << d << spec.pred_a_column << d << spec.pred_b_column << '\n';
    std::array<char, 64> buf{};
    auto put = [&](double v) {
        const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
        out.write(buf.data(), res.ptr - buf.data());
    };
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        out << (dataset.labels[i] == kCase ? '1' : '0') << d;
        put(dataset.scores_a[i]);
        out << d;
        put(dataset.scores_b[i]);
        out << '\n';
    }
}

}  // namespace aucpower
