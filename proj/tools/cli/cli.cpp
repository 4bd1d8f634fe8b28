#include "cli.hpp"

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "aucpower/api/documents.hpp"
#include "aucpower/error.hpp"
#include "aucpower/ingest.hpp"

namespace aucpower::cli {

namespace {

using api::json;

struct McFlags {
    std::optional<double> alpha;
    std::optional<std::size_t> iterations;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> max_redraws;
    std::optional<std::size_t> n;
    std::vector<std::size_t> n_grid;
    std::optional<double> target_power;
    std::optional<std::size_t> n_min;
    std::optional<std::size_t> n_max;
    std::optional<std::size_t> refine_step;
    std::optional<unsigned> threads;
    std::string export_csv;
};

struct SpecFlags {
    std::optional<double> values[11];
    std::string orientation;
};

const char* const kSpecFields[11] = {"mu_case_a", "mu_case_b", "mu_ctrl_a", "mu_ctrl_b",
                                     "v_case_a",  "v_case_b",  "v_ctrl_a",  "v_ctrl_b",
                                     "r_case",    "r_ctrl",    "prevalence"};

std::string flag_name(const char* field) {
    std::string s = "--";
    for (const char* c = field; *c; ++c) s += (*c == '_' ? '-' : *c);
    return s;
}

void add_mc_flags(CLI::App* cmd, McFlags& f) {
    cmd->add_option("--n", f.n, "Sample size to evaluate");
    cmd->add_option("--n-grid", f.n_grid, "Comma-separated increasing sample sizes")->delimiter(',');
    cmd->add_option("--target-power", f.target_power, "Find the smallest N reaching this power");
    cmd->add_option("--n-min", f.n_min, "Lower end of the N search (default 10)");
    cmd->add_option("--n-max", f.n_max, "Upper end of the N search (default 5000)");
    cmd->add_option("--refine-step", f.refine_step, "Step of the refinement scan (default 10)");
    cmd->add_option("--alpha", f.alpha, "Significance threshold (default 0.05)");
    cmd->add_option("--iters", f.iterations, "Monte Carlo iterations (default 2000)");
    cmd->add_option("--seed", f.seed, "Master seed (random and echoed when omitted)");
    cmd->add_option("--max-redraws", f.max_redraws, "Redraw budget per iteration (default 100)");
    cmd->add_option("--threads", f.threads,
                    std::string("Worker threads (default: $") + kThreadsEnv + " or all cores)");
    cmd->add_option("--export-csv", f.export_csv, "Write the power table (n,power,mc_se) to a file");
}

void put_mc_flags(const McFlags& f, json& body) {
    if (f.alpha) body["alpha"] = *f.alpha;
    if (f.iterations) body["iterations"] = *f.iterations;
    if (f.seed) body["seed"] = *f.seed;
    if (f.max_redraws) body["max_redraws"] = *f.max_redraws;
    if (f.n) body["n"] = *f.n;
    if (!f.n_grid.empty()) body["n_grid"] = f.n_grid;
    if (f.target_power) body["target_power"] = *f.target_power;
    if (f.n_min) body["n_min"] = *f.n_min;
    if (f.n_max) body["n_max"] = *f.n_max;
    if (f.refine_step) body["refine_step"] = *f.refine_step;
}

unsigned resolve_threads(const McFlags& f) {
    if (f.threads) return *f.threads;
    if (const char* env = std::getenv(kThreadsEnv)) {
        unsigned v = 0;
        const std::string_view s(env);
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec == std::errc{} && ptr == s.data() + s.size()) return v;
    }
    return 0;
}

std::string num(const json& v, int digits = 4) {
    if (v.is_null()) return "n/a";
    if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v.get<double>());
    return buf;
}

void render_power_rows(const json& results, std::ostream& out) {
    std::vector<const json*> rows;
    if (results.contains("estimate")) rows.push_back(&results.at("estimate"));
    for (const char* key : {"curve", "evaluated"}) {
        if (results.contains(key)) {
            for (const auto& p : results.at(key)) rows.push_back(&p);
        }
    }
    char line[128];
    std::snprintf(line, sizeof line, "  %10s  %8s  %8s  %10s\n", "n", "power", "mc_se", "redraws");
    out << line;
    for (const json* p : rows) {
        std::snprintf(line, sizeof line, "  %10zu  %8.4f  %8.4f  %10zu\n",
                      p->at("n").get<std::size_t>(), p->at("power").get<double>(),
                      p->at("mc_se").get<double>(), p->at("degenerate_draws").get<std::size_t>());
        out << line;
    }
}

void render_mc_header(const json& inputs, std::ostream& out) {
    const json& mc = inputs.at("mc");
    out << "  seed " << mc.at("seed").dump() << ", iterations " << mc.at("iterations").dump()
        << ", alpha " << num(mc.at("alpha")) << "\n";
}

void render_text(const json& doc, std::ostream& out) {
    const std::string command = doc.at("command");
    const json& in = doc.at("inputs");
    const json& res = doc.at("results");
    if (command == "single") {
        out << "Sample size to estimate a single model's AUROC\n"
            << "  anticipated AUROC  " << num(in.at("auroc")) << "\n"
            << "  prevalence         " << num(in.at("prevalence")) << "\n"
            << "  target CI width    " << num(in.at("ci_width")) << "\n"
            << "  sample size        " << res.at("n_total").dump() << " (" << res.at("n_events").dump()
            << " events)\n"
            << "  standard error     " << num(res.at("se_achieved"), 5) << " (target "
            << num(res.at("target_se"), 5) << ")\n";
    } else if (command == "pilot") {
        const json& p = res.at("pilot");
        out << "Power to compare two AUROCs, resampling a pilot set\n"
            << "  pilot rows " << p.at("rows").dump() << " (" << p.at("cases").dump() << " cases, "
            << p.at("controls").dump() << " controls), prevalence " << num(p.at("prevalence")) << "\n";
        for (const char* m : {"auroc_a", "auroc_b"}) {
            const json& a = p.at(m);
            out << "  pilot " << m << " ";
            if (a.is_null()) {
                out << "n/a\n";
            } else {
                out << num(a.at("estimate")) << " [" << num(a.at("ci_low")) << ", "
                    << num(a.at("ci_high")) << "]\n";
            }
        }
        if (res.contains("reweighting")) {
            const json& w = res.at("reweighting");
            out << "  reweighted to prevalence " << num(w.at("prevalence")) << " (case weight "
                << num(w.at("case_weight"), 6) << ", control weight " << num(w.at("control_weight"), 6)
                << ", weights sum " << num(w.at("sum_weights"), 15) << ")\n";
        }
        render_mc_header(in, out);
        render_power_rows(res, out);
    } else if (command == "binormal") {
        const json& a = res.at("anticipated_auroc");
        out << "Power to compare two AUROCs under a binormal model\n"
            << "  anticipated AUROC A " << num(a.at("a")) << ", B " << num(a.at("b")) << " ("
            << a.at("orientation").get<std::string>() << "; "
            << a.at("alternative").at("orientation").get<std::string>() << " gives A "
            << num(a.at("alternative").at("a")) << ", B " << num(a.at("alternative").at("b"))
            << ")\n";
        render_mc_header(in, out);
        render_power_rows(res, out);
    }
    if (res.contains("min_n")) {
        const json& m = res.at("min_n");
        out << "  minimum N " << m.at("n").dump() << " (" << m.at("expected_events").dump()
            << " expected events)\n";
    }
    if (res.contains("interpretation")) out << res.at("interpretation").get<std::string>() << "\n";
    for (const auto& note : doc.at("notes")) out << "note: " << note.get<std::string>() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Sample size and power for AUROC-based external validation"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "Print the machine-readable result document");

    // single
    auto* single = app.add_subcommand("single", "Sample size to estimate one model's AUROC");
    double auroc = 0, prevalence = 0, ci_width = 0;
    single->add_option("--auroc", auroc, "Anticipated AUROC")->required();
    single->add_option("--prevalence", prevalence, "Outcome prevalence")->required();
    single->add_option("--ci-width", ci_width, "Target 95% CI width")->required();
    single->add_flag("--json", as_json, "Print the machine-readable result document");

    // pilot
    auto* pilot = app.add_subcommand("pilot", "Power to compare two AUROCs from a pilot CSV");
    std::string file;
    PilotFileSpec file_spec;
    std::string delimiter = ",";
    std::optional<double> pilot_prevalence;
    McFlags pilot_mc;
    pilot->add_option("--file", file, "Pilot CSV with a header row")->required();
    pilot->add_option("--label-col", file_spec.label_column, "Label column (default label)");
    pilot->add_option("--pred-a-col", file_spec.pred_a_column, "Model A column (default pred_a)");
    pilot->add_option("--pred-b-col", file_spec.pred_b_column, "Model B column (default pred_b)");
    pilot->add_option("--delimiter", delimiter, "Field delimiter (default ,)");
    pilot->add_flag("--lenient", file_spec.lenient, "Drop unparseable rows instead of failing");
    pilot->add_option("--prevalence", pilot_prevalence, "Resample with this prevalence");
    pilot->add_flag("--json", as_json, "Print the machine-readable result document");
    add_mc_flags(pilot, pilot_mc);

    // binormal
    auto* binormal = app.add_subcommand("binormal", "Power to compare two AUROCs under a binormal model");
    SpecFlags spec_flags;
    McFlags binormal_mc;
    for (std::size_t i = 0; i < 11; ++i) {
        binormal->add_option(flag_name(kSpecFields[i]), spec_flags.values[i]);
    }
    binormal->add_option("--orientation", spec_flags.orientation,
                         "cases_higher (default) or literal");
    binormal->add_flag("--json", as_json, "Print the machine-readable result document");
    add_mc_flags(binormal, binormal_mc);

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        const CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        err << sub->help();
        return kExitUsage;
    }

    const api::Limits limits;
    try {
        json doc;
        const McFlags* mc = nullptr;
        if (*single) {
            const json body = {{"auroc", auroc}, {"prevalence", prevalence}, {"ci_width", ci_width}};
            doc = api::single_document(api::parse_single(body, limits));
        } else if (*pilot) {
            if (delimiter.size() != 1) {
                err << "error: --delimiter must be a single character\n";
                return kExitUsage;
            }
            file_spec.delimiter = delimiter.front();
            ParsedPilot parsed = parse_pilot_file(file, file_spec);
            for (const auto& w : parsed.summary.warnings) err << "warning: " << w << "\n";
            for (const auto& d : parsed.summary.dropped) err << "dropped: " << d.reason << "\n";
            json body = json::object();
            if (pilot_prevalence) body["prevalence"] = *pilot_prevalence;
            put_mc_flags(pilot_mc, body);
            mc = &pilot_mc;
            doc = api::pilot_document(
                api::parse_pilot(body, limits, resolve_threads(pilot_mc), std::move(parsed.dataset)));
        } else {
            json body = json::object();
            for (std::size_t i = 0; i < 11; ++i) {
                if (spec_flags.values[i]) body[kSpecFields[i]] = *spec_flags.values[i];
            }
            if (!spec_flags.orientation.empty()) body["orientation"] = spec_flags.orientation;
            put_mc_flags(binormal_mc, body);
            mc = &binormal_mc;
            doc = api::binormal_document(api::parse_binormal(body, limits, resolve_threads(binormal_mc)));
        }

        if (mc && !mc->export_csv.empty()) {
            std::ofstream csv(mc->export_csv, std::ios::binary);
            if (!csv) {
                err << "error: cannot write '" << mc->export_csv << "'\n";
                return kExitUsage;
            }
            csv << api::curve_csv(doc);
        }
        if (as_json) {
            out << api::dump_document(doc);
        } else {
            render_text(doc, out);
        }
        return kExitOk;
    } catch (const api::ValidationError& e) {
        for (const auto& f : e.errors()) {
            err << "error: " << (f.field.empty() ? "" : f.field + ": ") << f.message << "\n";
        }
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}

}  // namespace aucpower::cli
