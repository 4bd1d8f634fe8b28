#include "aucpower/pilot.hpp"

#include <random>

#include "aucpower/error.hpp"

namespace aucpower {

ClassCounts PilotDataset::validate() const {
    if (scores_a.size() != labels.size() || scores_b.size() != labels.size()) {
        fail(ErrorCode::kLengthMismatch, "pilot columns differ in length");
    }
    if (labels.size() < 2) fail(ErrorCode::kDomainError, "pilot needs at least 2 rows");
    validate_scored_sample(labels, scores_b);
    return validate_scored_sample(labels, scores_a);
}

std::vector<double> prevalence_weights(std::span<const Label> labels, double phi) {
    if (!(phi > 0.0 && phi < 1.0)) fail(ErrorCode::kDomainError, "prevalence must lie in (0,1)");
    double cases = 0.0;
    for (Label y : labels) cases += (y == kCase);
    const double controls = static_cast<double>(labels.size()) - cases;
    if (cases == 0.0 || controls == 0.0) {
        fail(ErrorCode::kEmptyClass, "reweighting needs at least one case and one control");
    }
    std::vector<double> w(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const double y = labels[i] == kCase ? 1.0 : 0.0;
        w[i] = phi * y / cases + (1.0 - phi) * (1.0 - y) / controls;
    }
    return w;
}

SampleFn pilot_sampler(const PilotDataset& pilot, std::optional<double> phi) {
    const PilotDataset* data = &pilot;
    auto copy_rows = [data](std::size_t k, std::size_t row, PairedSample& out) {
        out.labels[k] = data->labels[row];
        out.scores_a[k] = data->scores_a[row];
        out.scores_b[k] = data->scores_b[row];
    };
    if (!phi) {
        return [data, copy_rows](Rng& rng, std::size_t n, PairedSample& out) {
            std::uniform_int_distribution<std::size_t> pick(0, data->size() - 1);
            for (std::size_t k = 0; k < n; ++k) copy_rows(k, pick(rng), out);
        };
    }
    const std::vector<double> w = prevalence_weights(pilot.labels, *phi);
    using Dist = std::discrete_distribution<std::size_t>;
    Dist::param_type param(w.begin(), w.end());
    return [copy_rows, param](Rng& rng, std::size_t n, PairedSample& out) {
        Dist pick;
        for (std::size_t k = 0; k < n; ++k) copy_rows(k, pick(rng, param), out);
    };
}

PowerEstimate power_pilot(const PilotDataset& pilot, std::size_t n_eval, const McConfig& cfg) {
    pilot.validate();
    return simulate_power(pilot_sampler(pilot, std::nullopt), n_eval, cfg,
                          ErrorCode::kPilotTooDegenerate);
}

PowerEstimate power_pilot_reweighted(const PilotDataset& pilot, std::size_t n_eval, double phi,
                                     const McConfig& cfg) {
    pilot.validate();
    return simulate_power(pilot_sampler(pilot, phi), n_eval, cfg, ErrorCode::kPilotTooDegenerate);
}

PowerCurve power_curve_pilot(const PilotDataset& pilot, std::span<const std::size_t> n_grid,
                             std::optional<double> phi, const McConfig& cfg) {
    pilot.validate();
    cfg.validate();
    const SampleFn sampler = pilot_sampler(pilot, phi);
    PowerCurve curve;
    curve.config = cfg;
    curve.prevalence_override = phi;
    curve.points = sweep_power(
        [&](std::size_t n) {
            return simulate_power(sampler, n, cfg, ErrorCode::kPilotTooDegenerate);
        },
        n_grid);
    return curve;
}

MinNResult min_n_for_power(const PilotDataset& pilot, double target_power,
                           std::optional<double> phi, const McConfig& cfg,
                           const MinNOptions& opts) {
    pilot.validate();
    cfg.validate();
    const SampleFn sampler = pilot_sampler(pilot, phi);
    return search_min_n(
        [&](std::size_t n) {
            return simulate_power(sampler, n, cfg, ErrorCode::kPilotTooDegenerate);
        },
        target_power, opts);
}

}  // namespace aucpower
