#include "aucpower/api/documents.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <sstream>

#include "aucpower/version.hpp"

namespace aucpower::api {

namespace {

json envelope(const char* command) {
    return {{"schema_version", kSchemaVersion},
            {"tool", {{"name", "aucpower"}, {"version", kVersion}}},
            {"command", command}};
}

std::string percent(double p) {
    std::array<char, 32> buf{};
    std::snprintf(buf.data(), buf.size(), "%.1f%%", 100.0 * p);
    return buf.data();
}

std::string fixed(double v, int digits) {
    std::array<char, 32> buf{};
    std::snprintf(buf.data(), buf.size(), "%.*f", digits, v);
    return buf.data();
}

std::size_t expected_events(double phi, std::size_t n) {
    return static_cast<std::size_t>(std::ceil(phi * static_cast<double>(n) - 1e-9));
}

json mc_json(const McConfig& mc) {
    return {{"alpha", mc.alpha},
            {"iterations", mc.iterations},
            {"seed", mc.seed},
            {"max_redraws", mc.max_redraws_per_iteration}};
}

json query_json(const PowerQuery& q) {
    switch (q.mode) {
        case PowerMode::kSingleN: return {{"mode", "n"}, {"n", q.n}};
        case PowerMode::kGrid: return {{"mode", "n_grid"}, {"n_grid", q.n_grid}};
        case PowerMode::kTargetPower:
            return {{"mode", "target_power"},
                    {"target_power", q.target_power},
                    {"n_min", q.search.n_min},
                    {"n_max", q.search.n_max},
                    {"refine_step", q.search.refine_step}};
    }
    return {};
}

json auroc_json(const std::optional<AurocEstimate>& e) {
    if (!e) return nullptr;
    return {{"estimate", e->theta_hat},
            {"se", e->se},
            {"ci_low", e->ci_low},
            {"ci_high", e->ci_high},
            {"ci_low_raw", e->ci_low_raw},
            {"ci_high_raw", e->ci_high_raw}};
}

json spec_json(const BinormalSpec& s, Orientation o) {
    return {{"mu_case_a", s.mu_case_a}, {"mu_case_b", s.mu_case_b}, {"mu_ctrl_a", s.mu_ctrl_a},
            {"mu_ctrl_b", s.mu_ctrl_b}, {"v_case_a", s.v_case_a},   {"v_case_b", s.v_case_b},
            {"v_ctrl_a", s.v_ctrl_a},   {"v_ctrl_b", s.v_ctrl_b},   {"r_case", s.r_case},
            {"r_ctrl", s.r_ctrl},       {"prevalence", s.phi},      {"orientation", to_string(o)}};
}

json anticipated_json(const BinormalSpec& s, Orientation o) {
    const Orientation other = o == Orientation::kCasesHigher ? Orientation::kLiteral
                                                             : Orientation::kCasesHigher;
    return {{"orientation", to_string(o)},
            {"a", anticipated_auroc(s, Model::kA, o)},
            {"b", anticipated_auroc(s, Model::kB, o)},
            {"alternative",
             {{"orientation", to_string(other)},
              {"a", anticipated_auroc(s, Model::kA, other)},
              {"b", anticipated_auroc(s, Model::kB, other)}}}};
}

json reparameterized_json(const ReparameterizedSpec& r) {
    return {{"mean_case", {r.mean_case_a, r.mean_case_b}},
            {"mean_ctrl", {r.mean_ctrl_a, r.mean_ctrl_b}},
            {"var_case", {r.var_case_a, r.var_case_b}},
            {"var_ctrl", {r.var_ctrl_a, r.var_ctrl_b}},
            {"cov_case", r.cov_case},
            {"cov_ctrl", r.cov_ctrl}};
}

std::string estimate_sentence(const PowerEstimate& e, double alpha) {
    return "With N = " + std::to_string(e.n) + ", the paired DeLong test at alpha = " +
           fixed(alpha, 3) + " detects the AUROC difference in " + percent(e.power) +
           " of simulated studies (Monte Carlo s.e. " + percent(e.mc_se) + ").";
}

// Fills results for whichever query mode was requested. `power_at` evaluates
// one sample size; `curve` evaluates a grid; `search` runs the min-N search.
template <typename PowerAt, typename Curve, typename Search>
void add_power_results(json& results, const PowerQuery& q, const McConfig& mc, double phi,
                       PowerAt&& power_at, Curve&& curve, Search&& search) {
    switch (q.mode) {
        case PowerMode::kSingleN: {
            const PowerEstimate e = power_at(q.n);
            results["estimate"] = power_estimate_json(e);
            results["expected_events"] = expected_events(phi, e.n);
            results["interpretation"] = estimate_sentence(e, mc.alpha);
            break;
        }
        case PowerMode::kGrid: {
            const PowerCurve c = curve(q.n_grid);
            json pts = json::array();
            for (const auto& p : c.points) pts.push_back(power_estimate_json(p));
            results["curve"] = std::move(pts);
            const PowerEstimate* best = nullptr;
            for (const auto& p : c.points) {
                if (p.power >= 0.8) {
                    best = &p;
                    break;
                }
            }
            results["interpretation"] =
                best ? "The smallest grid size reaching 80% power is N = " + std::to_string(best->n) +
                           " (" + std::to_string(expected_events(phi, best->n)) +
                           " expected events), with estimated power " + percent(best->power) + "."
                     : std::string("No grid size reaches 80% power; the largest, N = ") +
                           std::to_string(c.points.back().n) + ", gives " +
                           percent(c.points.back().power) + ".";
            break;
        }
        case PowerMode::kTargetPower: {
            const MinNResult r = search(q.target_power, q.search);
            json pts = json::array();
            for (const auto& p : r.evaluated) pts.push_back(power_estimate_json(p));
            results["min_n"] = {{"n", r.n},
                                {"expected_events", expected_events(phi, r.n)},
                                {"estimate", power_estimate_json(r.estimate)},
                                {"bracket", {r.bracket_low, r.bracket_high}}};
            results["evaluated"] = std::move(pts);
            results["interpretation"] =
                "A validation set of N = " + std::to_string(r.n) + " (" +
                std::to_string(expected_events(phi, r.n)) + " expected events) reaches " +
                percent(r.estimate.power) + " power against the " + percent(q.target_power) +
                " target at alpha = " + fixed(mc.alpha, 3) + " (Monte Carlo s.e. " +
                percent(r.estimate.mc_se) + "; coarse bracket " + std::to_string(r.bracket_low) +
                "-" + std::to_string(r.bracket_high) + ").";
            break;
        }
    }
}

}  // namespace

json power_estimate_json(const PowerEstimate& e) {
    return {{"n", e.n}, {"power", e.power}, {"mc_se", e.mc_se}, {"degenerate_draws", e.degenerate_draws}};
}

std::string dataset_fingerprint(const PilotDataset& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&h](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xFF;
            h *= 0x100000001b3ULL;
        }
    };
    for (std::size_t i = 0; i < data.size(); ++i) {
        feed(data.labels[i]);
        feed(std::bit_cast<std::uint64_t>(data.scores_a[i]));
        feed(std::bit_cast<std::uint64_t>(data.scores_b[i]));
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

json single_document(const SingleInputs& in) {
    const SingleSizeResult r = sample_size_single(in.request);
    json doc = envelope("single");
    doc["inputs"] = {{"auroc", in.request.theta},
                     {"prevalence", in.request.phi},
                     {"ci_width", in.request.ci_width}};
    doc["results"] = {{"n_total", r.n_total},
                      {"n_events", r.n_events},
                      {"se_achieved", r.se_achieved},
                      {"target_se", r.target_se},
                      {"interpretation", "A validation set of N = " + std::to_string(r.n_total) +
                                             " (" + std::to_string(r.n_events) +
                                             " events) gives a 95% CI for the AUROC no wider than " +
                                             fixed(in.request.ci_width, 3) + "."}};
    json notes = json::array();
    if (r.wide_ci_advisory) {
        notes.push_back("A target 95% CI width of at most 0.1 is recommended; " +
                        fixed(in.request.ci_width, 3) + " gives an imprecise AUROC estimate.");
    }
    doc["notes"] = std::move(notes);
    return doc;
}

json pilot_document(const PilotInputs& in) {
    const PilotSummary summary = summarize_pilot(in.data);
    json doc = envelope("pilot");
    doc["inputs"] = {{"data",
                      {{"rows", summary.n_rows},
                       {"cases", summary.n_cases},
                       {"controls", summary.n_controls},
                       {"fingerprint", dataset_fingerprint(in.data)}}},
                     {"prevalence", in.prevalence ? json(*in.prevalence) : json(nullptr)},
                     {"mc", mc_json(in.mc)},
                     {"query", query_json(in.query)}};

    json results;
    results["pilot"] = {{"rows", summary.n_rows},
                        {"cases", summary.n_cases},
                        {"controls", summary.n_controls},
                        {"prevalence", summary.prevalence},
                        {"auroc_a", auroc_json(summary.auroc_a)},
                        {"auroc_b", auroc_json(summary.auroc_b)}};
    json notes = json::array();
    if (in.prevalence) {
        const std::vector<double> w = prevalence_weights(in.data.labels, *in.prevalence);
        double sum = 0.0, weighted_prev = 0.0, case_w = 0.0, ctrl_w = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            sum += w[i];
            if (in.data.labels[i] == kCase) {
                weighted_prev += w[i];
                case_w = w[i];
            } else {
                ctrl_w = w[i];
            }
        }
        results["reweighting"] = {{"prevalence", *in.prevalence},
                                  {"case_weight", case_w},
                                  {"control_weight", ctrl_w},
                                  {"sum_weights", sum},
                                  {"weighted_prevalence", weighted_prev}};
    }
    if (!summary.auroc_a || !summary.auroc_b) {
        notes.push_back("At least one model separates the pilot perfectly; its AUROC interval is unavailable.");
    }
    const double phi = in.prevalence.value_or(summary.prevalence);
    add_power_results(
        results, in.query, in.mc, phi,
        [&](std::size_t n) {
            return in.prevalence ? power_pilot_reweighted(in.data, n, *in.prevalence, in.mc)
                                 : power_pilot(in.data, n, in.mc);
        },
        [&](const std::vector<std::size_t>& grid) {
            return power_curve_pilot(in.data, grid, in.prevalence, in.mc);
        },
        [&](double target, const MinNOptions& opts) {
            return min_n_for_power(in.data, target, in.prevalence, in.mc, opts);
        });
    doc["results"] = std::move(results);
    doc["notes"] = std::move(notes);
    return doc;
}

json binormal_document(const BinormalInputs& in) {
    json doc = envelope("binormal");
    doc["inputs"] = {{"spec", spec_json(in.spec, in.orientation)},
                     {"mc", mc_json(in.mc)},
                     {"query", query_json(in.query)}};
    json results;
    results["anticipated_auroc"] = anticipated_json(in.spec, in.orientation);
    results["reparameterized"] = reparameterized_json(reparameterize(in.spec));
    add_power_results(
        results, in.query, in.mc, in.spec.phi,
        [&](std::size_t n) { return power_binormal(in.spec, n, in.mc, in.orientation); },
        [&](const std::vector<std::size_t>& grid) {
            return power_curve_binormal(in.spec, grid, in.mc, in.orientation);
        },
        [&](double target, const MinNOptions& opts) {
            return min_n_for_power_binormal(in.spec, target, in.mc, opts, in.orientation);
        });
    doc["results"] = std::move(results);
    doc["notes"] = json::array(
        {"Check the anticipated AUROCs against what you intend to model before relying on the power "
         "figures. Control scores are centred at logit(1 - mu) and, under the default cases_higher "
         "orientation, negated so that higher case risk means higher AUROC."});
    return doc;
}

json preview_document(const PreviewInputs& in) {
    json doc = envelope("binormal_preview");
    doc["inputs"] = {{"spec", spec_json(in.spec, in.orientation)},
                     {"grid_resolution", in.grid_resolution}};
    auto contour = [&](Label cls) {
        const ContourGrid g = density_contours(in.spec, cls, in.grid_resolution, in.orientation);
        const BivariateNormal& d = g.distribution;
        return json{{"resolution", g.resolution},
                    {"x", g.x},
                    {"y", g.y},
                    {"values", g.values},
                    {"peak_density", g.peak_density},
                    {"mean", {d.mean_a, d.mean_b}},
                    {"covariance", {{d.var_a, d.cov}, {d.cov, d.var_b}}}};
    };
    doc["results"] = {{"anticipated_auroc", anticipated_json(in.spec, in.orientation)},
                      {"reparameterized", reparameterized_json(reparameterize(in.spec))},
                      {"contours", {{"case", contour(kCase)}, {"control", contour(kControl)}}}};
    doc["notes"] = json::array();
    return doc;
}

std::string dump_document(const json& doc) { return doc.dump(2) + "\n"; }

std::string curve_csv(const json& doc) {
    std::string out = "n,power,mc_se\n";
    const json& results = doc.at("results");
    std::vector<const json*> points;
    if (results.contains("estimate")) points.push_back(&results.at("estimate"));
    for (const char* key : {"curve", "evaluated"}) {
        if (results.contains(key)) {
            for (const auto& p : results.at(key)) points.push_back(&p);
        }
    }
    std::array<char, 64> buf{};
    auto num = [&](double v) {
        const auto r = std::to_chars(buf.data(), buf.data() + buf.size(), v);
        return std::string(buf.data(), r.ptr);
    };
    for (const json* p : points) {
        out += std::to_string(p->at("n").get<std::size_t>()) + "," + num(p->at("power").get<double>()) +
               "," + num(p->at("mc_se").get<double>()) + "\n";
    }
    return out;
}

}  // namespace aucpower::api
