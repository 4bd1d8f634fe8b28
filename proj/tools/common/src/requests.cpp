#include "aucpower/api/requests.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>

#include "aucpower/random.hpp"

namespace aucpower::api {

namespace {

std::string join_messages(const std::vector<FieldError>& errors) {
    std::string msg = "invalid input";
    for (const auto& e : errors) msg += "; " + e.field + ": " + e.message;
    return msg;
}

FieldRule open_unit(std::string name, bool required, std::optional<double> def, std::string desc) {
    FieldRule r;
    r.name = std::move(name);
    r.kind = RuleKind::kOpenUnit;
    r.required = required;
    r.default_value = def;
    r.min = 0.0;
    r.max = 1.0;
    r.description = std::move(desc);
    return r;
}

FieldRule count(std::string name, double min, double max, std::optional<double> def, std::string desc) {
    FieldRule r;
    r.name = std::move(name);
    r.kind = RuleKind::kCount;
    r.default_value = def;
    r.min = min;
    r.max = max;
    r.description = std::move(desc);
    return r;
}

void add_mc_rules(std::vector<FieldRule>& rules, const Limits& limits) {
    const auto max_n = static_cast<double>(limits.max_n);
    rules.push_back(open_unit("alpha", false, 0.05, "significance threshold"));
    rules.push_back(count("iterations", 1, static_cast<double>(limits.max_iterations), 2000,
                          "number of Monte Carlo iterations M"));
    FieldRule seed;
    seed.name = "seed";
    seed.kind = RuleKind::kSeed;
    seed.description = "64-bit master seed; generated and echoed when omitted";
    rules.push_back(seed);
    rules.push_back(count("max_redraws", 0, static_cast<double>(limits.max_redraws), 100,
                          "redraw budget per iteration for untestable samples"));
    rules.push_back(count("n", 2, max_n, std::nullopt, "sample size to evaluate"));
    FieldRule grid;
    grid.name = "n_grid";
    grid.kind = RuleKind::kCountList;
    grid.min = 2;
    grid.max = max_n;
    grid.description = "strictly increasing sample sizes, at most " +
                       std::to_string(limits.max_grid_points) + " points";
    rules.push_back(grid);
    FieldRule target;
    target.name = "target_power";
    target.kind = RuleKind::kUnitLowerClosed;
    target.min = 0.0;
    target.max = 1.0;
    target.description = "smallest acceptable power; triggers a minimum sample size search";
    rules.push_back(target);
    rules.push_back(count("n_min", 2, max_n, 10, "lower end of the sample size search"));
    rules.push_back(count("n_max", 3, max_n, 5000, "upper end of the sample size search"));
    rules.push_back(count("refine_step", 1, max_n, 10, "step of the refinement scan"));
}

void add_spec_rules(std::vector<FieldRule>& rules) {
    const char* means[] = {"mu_case_a", "mu_case_b", "mu_ctrl_a", "mu_ctrl_b"};
    for (const char* m : means) {
        rules.push_back(open_unit(m, true, std::nullopt, "mean predicted risk parameter"));
    }
    const char* vars[] = {"v_case_a", "v_case_b", "v_ctrl_a", "v_ctrl_b"};
    for (const char* v : vars) rules.push_back(open_unit(v, false, 0.9, "variance parameter"));
    rules.push_back(open_unit("r_case", false, 0.9, "between-model correlation among cases"));
    rules.push_back(open_unit("r_ctrl", false, 0.9, "between-model correlation among controls"));
    rules.push_back(open_unit("prevalence", true, std::nullopt, "outcome prevalence"));
    FieldRule orient;
    orient.name = "orientation";
    orient.kind = RuleKind::kChoice;
    orient.choices = {"cases_higher", "literal"};
    orient.default_choice = "cases_higher";
    orient.description = "placement of control scores relative to case scores";
    rules.push_back(orient);
}

// Reads fields of one request body against its rule table, collecting every
// problem before failing.
class FieldReader {
public:
    FieldReader(const json& body, std::vector<FieldRule> rules)
        : body_(body), rules_(std::move(rules)) {
        if (!body_.is_object()) {
            errors_.push_back({"", "request body must be a JSON object"});
            return;
        }
        for (const auto& [key, value] : body_.items()) {
            if (is_control_key(key) || key == "data") continue;
            if (!find(key)) errors_.push_back({key, "unknown field"});
        }
    }

    bool has(const std::string& name) const {
        return body_.is_object() && body_.contains(name) && !body_.at(name).is_null();
    }

    std::optional<double> real(const std::string& name) {
        const FieldRule* rule = find(name);
        if (!has(name)) {
            if (rule->required) errors_.push_back({name, "required"});
            return rule->default_value;
        }
        const json& v = body_.at(name);
        if (!v.is_number()) {
            errors_.push_back({name, "must be a number"});
            return std::nullopt;
        }
        const double x = v.get<double>();
        const bool ok = rule->kind == RuleKind::kUnitLowerClosed ? (x >= 0.0 && x < 1.0)
                                                                  : (x > 0.0 && x < 1.0);
        if (!ok) {
            errors_.push_back({name, rule->kind == RuleKind::kUnitLowerClosed
                                         ? "must lie in [0,1)"
                                         : "must lie in the open interval (0,1)"});
            return std::nullopt;
        }
        return x;
    }

    std::optional<std::size_t> count(const std::string& name) {
        const FieldRule* rule = find(name);
        if (!has(name)) {
            if (rule->required) errors_.push_back({name, "required"});
            if (rule->default_value) return static_cast<std::size_t>(*rule->default_value);
            return std::nullopt;
        }
        return count_value(name, body_.at(name), *rule);
    }

    std::vector<std::size_t> count_list(const std::string& name, std::size_t max_len) {
        const FieldRule* rule = find(name);
        std::vector<std::size_t> out;
        if (!has(name)) return out;
        const json& v = body_.at(name);
        if (!v.is_array() || v.empty()) {
            errors_.push_back({name, "must be a non-empty array of integers"});
            return out;
        }
        if (v.size() > max_len) {
            errors_.push_back({name, "at most " + std::to_string(max_len) + " points allowed"});
            return out;
        }
        for (std::size_t i = 0; i < v.size(); ++i) {
            const auto c = count_value(name + "[" + std::to_string(i) + "]", v[i], *rule);
            if (!c) return {};
            if (!out.empty() && *c <= out.back()) {
                errors_.push_back({name, "must be strictly increasing"});
                return {};
            }
            out.push_back(*c);
        }
        return out;
    }

    std::optional<std::uint64_t> seed(const std::string& name) {
        if (!has(name)) return std::nullopt;
        const json& v = body_.at(name);
        if (v.is_number_unsigned()) return v.get<std::uint64_t>();
        if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
            return static_cast<std::uint64_t>(v.get<std::int64_t>());
        }
        if (v.is_string()) {
            const auto& s = v.get_ref<const std::string&>();
            std::uint64_t out = 0;
            const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
            if (ec == std::errc{} && ptr == s.data() + s.size() && !s.empty()) return out;
        }
        errors_.push_back({name, "must be an unsigned 64-bit integer"});
        return std::nullopt;
    }

    std::string choice(const std::string& name) {
        const FieldRule* rule = find(name);
        if (!has(name)) return rule->default_choice;
        const json& v = body_.at(name);
        if (v.is_string()) {
            const auto& s = v.get_ref<const std::string&>();
            if (std::find(rule->choices.begin(), rule->choices.end(), s) != rule->choices.end()) {
                return s;
            }
        }
        std::string allowed;
        for (const auto& c : rule->choices) allowed += (allowed.empty() ? "" : ", ") + c;
        errors_.push_back({name, "must be one of: " + allowed});
        return rule->default_choice;
    }

    void error(std::string field, std::string message) {
        errors_.push_back({std::move(field), std::move(message)});
    }

    void throw_if_failed() const {
        if (!errors_.empty()) throw ValidationError(errors_);
    }

private:
    const FieldRule* find(const std::string& name) const {
        for (const auto& r : rules_) {
            if (r.name == name) return &r;
        }
        return nullptr;
    }

    std::optional<std::size_t> count_value(const std::string& field, const json& v,
                                           const FieldRule& rule) {
        double x = 0.0;
        if (v.is_number_integer() || v.is_number_unsigned()) {
            x = v.get<double>();
        } else if (v.is_number_float() && std::floor(v.get<double>()) == v.get<double>()) {
            x = v.get<double>();
        } else {
            errors_.push_back({field, "must be an integer"});
            return std::nullopt;
        }
        if (x < rule.min || x > rule.max) {
            errors_.push_back({field, "must lie in [" + std::to_string(static_cast<long long>(rule.min)) +
                                          ", " + std::to_string(static_cast<long long>(rule.max)) + "]"});
            return std::nullopt;
        }
        return static_cast<std::size_t>(x);
    }

    const json& body_;
    std::vector<FieldRule> rules_;
    std::vector<FieldError> errors_;
};

McConfig read_mc(FieldReader& r, unsigned threads) {
    McConfig cfg;
    cfg.alpha = r.real("alpha").value_or(0.05);
    cfg.iterations = r.count("iterations").value_or(2000);
    cfg.max_redraws_per_iteration = r.count("max_redraws").value_or(100);
    cfg.seed = r.seed("seed").value_or(0);
    if (!r.has("seed")) cfg.seed = random_seed();
    cfg.threads = threads;
    return cfg;
}

PowerQuery read_query(FieldReader& r, const Limits& limits) {
    PowerQuery q;
    const int selected = int{r.has("n")} + int{r.has("n_grid")} + int{r.has("target_power")};
    if (selected != 1) {
        r.error("n", "exactly one of n, n_grid or target_power is required");
    }
    if (r.has("n")) {
        q.mode = PowerMode::kSingleN;
        q.n = r.count("n").value_or(0);
    } else if (r.has("n_grid")) {
        q.mode = PowerMode::kGrid;
        q.n_grid = r.count_list("n_grid", limits.max_grid_points);
    } else if (r.has("target_power")) {
        q.mode = PowerMode::kTargetPower;
        q.target_power = r.real("target_power").value_or(0.0);
    }
    q.search.n_min = r.count("n_min").value_or(10);
    q.search.n_max = r.count("n_max").value_or(5000);
    q.search.refine_step = r.count("refine_step").value_or(10);
    if (q.mode == PowerMode::kTargetPower && q.search.n_min >= q.search.n_max) {
        r.error("n_min", "must be below n_max");
    }
    return q;
}

BinormalSpec read_spec(FieldReader& r, Orientation& orientation) {
    BinormalSpec s;
    s.mu_case_a = r.real("mu_case_a").value_or(0.5);
    s.mu_case_b = r.real("mu_case_b").value_or(0.5);
    s.mu_ctrl_a = r.real("mu_ctrl_a").value_or(0.5);
    s.mu_ctrl_b = r.real("mu_ctrl_b").value_or(0.5);
    s.v_case_a = r.real("v_case_a").value_or(0.9);
    s.v_case_b = r.real("v_case_b").value_or(0.9);
    s.v_ctrl_a = r.real("v_ctrl_a").value_or(0.9);
    s.v_ctrl_b = r.real("v_ctrl_b").value_or(0.9);
    s.r_case = r.real("r_case").value_or(0.9);
    s.r_ctrl = r.real("r_ctrl").value_or(0.9);
    s.phi = r.real("prevalence").value_or(0.5);
    orientation = r.choice("orientation") == "literal" ? Orientation::kLiteral
                                                       : Orientation::kCasesHigher;
    return s;
}

std::optional<PilotDataset> read_inline_data(const json& body, FieldReader& r, const Limits& limits) {
    if (!body.is_object() || !body.contains("data")) {
        r.error("data", "required: object with arrays label, pred_a, pred_b");
        return std::nullopt;
    }
    const json& d = body.at("data");
    if (!d.is_object()) {
        r.error("data", "must be an object with arrays label, pred_a, pred_b");
        return std::nullopt;
    }
    for (const auto& [key, value] : d.items()) {
        if (key != "label" && key != "pred_a" && key != "pred_b") r.error("data." + key, "unknown field");
    }
    PilotDataset out;
    bool ok = true;
    auto column = [&](const char* name) -> const json* {
        if (!d.contains(name) || !d.at(name).is_array()) {
            r.error(std::string("data.") + name, "required array");
            ok = false;
            return nullptr;
        }
        if (d.at(name).size() > limits.max_pilot_rows) {
            r.error(std::string("data.") + name, "more than " + std::to_string(limits.max_pilot_rows) + " rows");
            ok = false;
            return nullptr;
        }
        return &d.at(name);
    };
    const json* labels = column("label");
    const json* pred_a = column("pred_a");
    const json* pred_b = column("pred_b");
    if (!ok) return std::nullopt;
    if (labels->size() != pred_a->size() || labels->size() != pred_b->size()) {
        r.error("data", "label, pred_a and pred_b must have equal lengths");
        return std::nullopt;
    }
    for (std::size_t i = 0; i < labels->size() && ok; ++i) {
        const json& y = (*labels)[i];
        if (y.is_boolean()) {
            out.labels.push_back(y.get<bool>() ? kCase : kControl);
        } else if (y.is_number_integer() && (y.get<std::int64_t>() == 0 || y.get<std::int64_t>() == 1)) {
            out.labels.push_back(y.get<std::int64_t>() == 1 ? kCase : kControl);
        } else {
            r.error("data.label[" + std::to_string(i) + "]", "must be 0, 1, true or false");
            ok = false;
        }
        const std::pair<const json*, std::vector<double>*> cols[] = {{pred_a, &out.scores_a},
                                                                     {pred_b, &out.scores_b}};
        for (const auto& [src, dst] : cols) {
            const json& v = (*src)[i];
            if (!v.is_number() || !std::isfinite(v.get<double>())) {
                r.error(std::string("data.") + (src == pred_a ? "pred_a" : "pred_b") + "[" +
                            std::to_string(i) + "]",
                        "must be a finite number");
                ok = false;
                break;
            }
            dst->push_back(v.get<double>());
        }
    }
    if (!ok) return std::nullopt;
    return out;
}

void check_dataset(const PilotDataset& data, FieldReader& r) {
    if (data.size() < 2) {
        r.error("data", "at least 2 rows required");
        return;
    }
    const auto cases = static_cast<std::size_t>(std::count(data.labels.begin(), data.labels.end(), kCase));
    if (cases == 0 || cases == data.size()) {
        r.error("data.label", "both cases and controls are required");
    }
}

}  // namespace

ValidationError::ValidationError(std::vector<FieldError> errors)
    : std::runtime_error(join_messages(errors)), errors_(std::move(errors)) {}

bool is_control_key(std::string_view key) { return key == "async"; }

std::vector<FieldRule> field_rules(Endpoint endpoint, const Limits& limits) {
    std::vector<FieldRule> rules;
    switch (endpoint) {
        case Endpoint::kSingle:
            rules.push_back(open_unit("auroc", true, std::nullopt, "anticipated AUROC"));
            rules.push_back(open_unit("prevalence", true, std::nullopt, "outcome prevalence"));
            rules.push_back(open_unit("ci_width", true, std::nullopt,
                                      "target width of the 95% confidence interval (0.1 or less recommended)"));
            break;
        case Endpoint::kPilot:
            rules.push_back(open_unit("prevalence", false, std::nullopt,
                                      "anticipated prevalence; enables reweighted resampling"));
            add_mc_rules(rules, limits);
            break;
        case Endpoint::kBinormal:
            add_spec_rules(rules);
            add_mc_rules(rules, limits);
            break;
        case Endpoint::kPreview:
            add_spec_rules(rules);
            rules.push_back(count("grid_resolution", 16, static_cast<double>(limits.max_grid_resolution),
                                  64, "contour grid points per axis"));
            break;
    }
    return rules;
}

json constraints_document(const Limits& limits) {
    auto kind_name = [](RuleKind k) {
        switch (k) {
            case RuleKind::kOpenUnit: return "open_unit";
            case RuleKind::kUnitLowerClosed: return "unit_lower_closed";
            case RuleKind::kCount: return "count";
            case RuleKind::kSeed: return "seed";
            case RuleKind::kCountList: return "count_list";
            case RuleKind::kChoice: return "choice";
        }
        return "unknown";
    };
    const std::pair<const char*, Endpoint> endpoints[] = {{"single", Endpoint::kSingle},
                                                          {"pilot", Endpoint::kPilot},
                                                          {"binormal", Endpoint::kBinormal},
                                                          {"preview", Endpoint::kPreview}};
    json doc = {{"schema_version", kSchemaVersion}};
    for (const auto& [name, ep] : endpoints) {
        json fields = json::array();
        for (const auto& r : field_rules(ep, limits)) {
            json f = {{"name", r.name}, {"kind", kind_name(r.kind)}, {"required", r.required},
                      {"description", r.description}};
            if (r.default_value) f["default"] = *r.default_value;
            if (r.kind == RuleKind::kCount || r.kind == RuleKind::kCountList) {
                f["min"] = r.min;
                f["max"] = r.max;
            }
            if (r.kind == RuleKind::kChoice) {
                f["choices"] = r.choices;
                f["default"] = r.default_choice;
            }
            fields.push_back(std::move(f));
        }
        doc["endpoints"][name] = std::move(fields);
    }
    doc["limits"] = {{"max_iterations", limits.max_iterations},
                     {"max_grid_points", limits.max_grid_points},
                     {"max_n", limits.max_n}};
    return doc;
}

SingleInputs parse_single(const json& body, const Limits& limits) {
    FieldReader r(body, field_rules(Endpoint::kSingle, limits));
    SingleInputs in;
    in.request.theta = r.real("auroc").value_or(0.5);
    in.request.phi = r.real("prevalence").value_or(0.5);
    in.request.ci_width = r.real("ci_width").value_or(0.1);
    r.throw_if_failed();
    return in;
}

PilotInputs parse_pilot(const json& body, const Limits& limits, unsigned threads,
                        std::optional<PilotDataset> preloaded) {
    FieldReader r(body, field_rules(Endpoint::kPilot, limits));
    PilotInputs in;
    if (preloaded) {
        if (body.is_object() && body.contains("data")) {
            r.error("data", "inline data cannot be combined with an uploaded file");
        }
        in.data = std::move(*preloaded);
    } else if (auto d = read_inline_data(body, r, limits)) {
        in.data = std::move(*d);
    }
    if (!in.data.labels.empty()) check_dataset(in.data, r);
    in.prevalence = r.real("prevalence");
    in.mc = read_mc(r, threads);
    in.query = read_query(r, limits);
    r.throw_if_failed();
    return in;
}

BinormalInputs parse_binormal(const json& body, const Limits& limits, unsigned threads) {
    FieldReader r(body, field_rules(Endpoint::kBinormal, limits));
    BinormalInputs in;
    in.spec = read_spec(r, in.orientation);
    in.mc = read_mc(r, threads);
    in.query = read_query(r, limits);
    r.throw_if_failed();
    return in;
}

PreviewInputs parse_preview(const json& body, const Limits& limits) {
    FieldReader r(body, field_rules(Endpoint::kPreview, limits));
    PreviewInputs in;
    in.spec = read_spec(r, in.orientation);
    in.grid_resolution = r.count("grid_resolution").value_or(64);
    r.throw_if_failed();
    return in;
}

}  // namespace aucpower::api
