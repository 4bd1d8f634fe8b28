#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "aucpower/monte_carlo.hpp"
#include "aucpower/roc.hpp"

namespace aucpower {

// Labels and both models' scores for the same individuals.
struct PilotDataset {
    std::vector<Label> labels;
    std::vector<double> scores_a;
    std::vector<double> scores_b;

    std::size_t size() const { return labels.size(); }
    ClassCounts validate() const;

    bool operator==(const PilotDataset&) const = default;
};

// Sampling weights that move the expected case fraction of a resample to phi:
// w_i = phi Y_i / sum(Y) + (1 - phi)(1 - Y_i) / sum(1 - Y).
std::vector<double> prevalence_weights(std::span<const Label> labels, double phi);

// Power of the paired DeLong test at n_eval rows drawn uniformly with
// replacement from the pilot. n_eval may exceed the pilot size.
PowerEstimate power_pilot(const PilotDataset& pilot, std::size_t n_eval, const McConfig& cfg);

// As power_pilot, with rows drawn according to prevalence_weights(labels, phi).
PowerEstimate power_pilot_reweighted(const PilotDataset& pilot, std::size_t n_eval, double phi,
                                     const McConfig& cfg);

PowerCurve power_curve_pilot(const PilotDataset& pilot, std::span<const std::size_t> n_grid,
                             std::optional<double> phi, const McConfig& cfg);

MinNResult min_n_for_power(const PilotDataset& pilot, double target_power,
                           std::optional<double> phi, const McConfig& cfg,
                           const MinNOptions& opts);

// Sampler used by the pilot power routines; exposed for diagnostics such as
// checking the realised prevalence of resamples.
SampleFn pilot_sampler(const PilotDataset& pilot, std::optional<double> phi);

}  // namespace aucpower
