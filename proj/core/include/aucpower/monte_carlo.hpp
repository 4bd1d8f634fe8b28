#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "aucpower/error.hpp"
#include "aucpower/random.hpp"
#include "aucpower/roc.hpp"

namespace aucpower {

struct McConfig {
    double alpha = 0.05;
    std::size_t iterations = 2000;
    std::uint64_t seed = 0;
    std::size_t max_redraws_per_iteration = 100;
    unsigned threads = 0;  // 0: hardware concurrency; never affects results

    void validate() const;
};

struct PowerEstimate {
    std::size_t n = 0;
    double power = 0.0;
    double mc_se = 0.0;  // sqrt(power (1 - power) / M)
    std::size_t degenerate_draws = 0;

    bool operator==(const PowerEstimate&) const = default;
};

struct PowerCurve {
    std::vector<PowerEstimate> points;  // strictly increasing in n
    McConfig config;
    std::optional<double> prevalence_override;
};

// One simulated validation set.
struct PairedSample {
    std::vector<Label> labels;
    std::vector<double> scores_a;
    std::vector<double> scores_b;

    void resize(std::size_t n) {
        labels.resize(n);
        scores_a.resize(n);
        scores_b.resize(n);
    }
};

// Fills `out` with a dataset of n rows using only `rng` for randomness.
using SampleFn = std::function<void(Rng& rng, std::size_t n, PairedSample& out)>;

// Monte Carlo power of the two-sided DeLong test: the fraction of M simulated
// datasets with p < alpha. Iteration m draws from substream(seed, m); samples
// with a single class or a degenerate comparison are redrawn from the same
// stream, up to max_redraws_per_iteration times, after which `exhausted` is
// raised.
PowerEstimate simulate_power(const SampleFn& sample, std::size_t n, const McConfig& cfg,
                             ErrorCode exhausted);

using PowerAtFn = std::function<PowerEstimate(std::size_t n)>;

void validate_grid(std::span<const std::size_t> n_grid);

// Evaluates `power_at` on every grid point; an Error raised at a point is
// rethrown with its `n` field set.
std::vector<PowerEstimate> sweep_power(const PowerAtFn& power_at, std::span<const std::size_t> n_grid);

struct MinNOptions {
    std::size_t n_min = 10;
    std::size_t n_max = 10000;
    std::size_t refine_step = 10;
    double growth = 2.0;  // ratio between consecutive coarse grid points
};

struct MinNResult {
    std::size_t n = 0;
    PowerEstimate estimate;        // at n
    std::size_t bracket_low = 0;   // last coarse point below target (== n if n == n_min)
    std::size_t bracket_high = 0;  // first coarse point reaching target
    std::vector<PowerEstimate> evaluated;  // every point visited, sorted by n
};

// Geometric coarse scan from n_min to n_max, then a linear scan with
// refine_step inside the bracketing interval. Returns the smallest evaluated n
// whose power estimate reaches target_power; throws TargetUnreachable when the
// estimate at n_max stays below it.
MinNResult search_min_n(const PowerAtFn& power_at, double target_power, const MinNOptions& opts);

}  // namespace aucpower
