#include "aucpower/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "aucpower/delong.hpp"
#include "aucpower/parallel.hpp"

namespace aucpower {

void McConfig::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) fail(ErrorCode::kDomainError, "alpha must lie in (0,1)");
    if (iterations < 1) fail(ErrorCode::kDomainError, "iterations must be at least 1");
}

namespace {

struct WorkerState {
    PairedSample sample;
    DelongWorkspace delong;
};

struct IterationResult {
    bool rejected = false;
    std::uint32_t degenerate = 0;
};

}  // namespace

PowerEstimate simulate_power(const SampleFn& sample, std::size_t n, const McConfig& cfg,
                             ErrorCode exhausted) {
    cfg.validate();
    if (n < 2) fail(ErrorCode::kDomainError, "sample size to evaluate must be at least 2");

    std::vector<IterationResult> results(cfg.iterations);
    parallel_for<WorkerState>(cfg.iterations, cfg.threads, [&](std::size_t m, WorkerState& ws) {
        Rng rng = substream(cfg.seed, m);
        IterationResult& r = results[m];
        for (;;) {
            ws.sample.resize(n);
            sample(rng, n, ws.sample);
            const auto outcome = ws.delong.compare(ws.sample.labels, ws.sample.scores_a,
                                                   ws.sample.scores_b);
            if (outcome.status == DelongWorkspace::Status::kOk) {
                r.rejected = outcome.comparison.p_value < cfg.alpha;
                return;
            }
            if (++r.degenerate > cfg.max_redraws_per_iteration) {
                Error e(exhausted, "no testable dataset of size " + std::to_string(n) + " after " +
                                       std::to_string(cfg.max_redraws_per_iteration) +
                                       " redraws");
                e.n = n;
                throw e;
            }
        }
    });

    PowerEstimate est;
    est.n = n;
    std::size_t rejections = 0;
    for (const auto& r : results) {
        rejections += r.rejected;
        est.degenerate_draws += r.degenerate;
    }
    const auto m = static_cast<double>(cfg.iterations);
    est.power = static_cast<double>(rejections) / m;
    est.mc_se = std::sqrt(est.power * (1.0 - est.power) / m);
    return est;
}

void validate_grid(std::span<const std::size_t> n_grid) {
    if (n_grid.empty()) fail(ErrorCode::kDomainError, "sample size grid is empty");
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
        if (n_grid[i] < 2) fail(ErrorCode::kDomainError, "grid sample sizes must be at least 2");
        if (i > 0 && n_grid[i] <= n_grid[i - 1]) {
            fail(ErrorCode::kDomainError, "sample size grid must be strictly increasing");
        }
    }
}

std::vector<PowerEstimate> sweep_power(const PowerAtFn& power_at,
                                       std::span<const std::size_t> n_grid) {
    validate_grid(n_grid);
    std::vector<PowerEstimate> points;
    points.reserve(n_grid.size());
    for (std::size_t n : n_grid) {
        try {
            points.push_back(power_at(n));
        } catch (Error& e) {
            e.n = n;
            throw;
        }
    }
    return points;
}

MinNResult search_min_n(const PowerAtFn& power_at, double target_power, const MinNOptions& opts) {
    if (!(target_power >= 0.0 && target_power < 1.0)) {
        fail(ErrorCode::kDomainError, "target power must lie in [0,1)");
    }
    if (opts.n_min < 2) fail(ErrorCode::kDomainError, "n_min must be at least 2");
    if (opts.n_min >= opts.n_max) fail(ErrorCode::kDomainError, "n_min must be below n_max");
    if (opts.refine_step < 1) fail(ErrorCode::kDomainError, "refine_step must be at least 1");
    if (!(opts.growth > 1.0)) fail(ErrorCode::kDomainError, "growth must exceed 1");

    MinNResult res;
    auto evaluate = [&](std::size_t n) {
        try {
            res.evaluated.push_back(power_at(n));
        } catch (Error& e) {
            e.n = n;
            throw;
        }
        return res.evaluated.back();
    };
    auto finish = [&](const PowerEstimate& hit) {
        res.n = hit.n;
        res.estimate = hit;
        std::sort(res.evaluated.begin(), res.evaluated.end(),
                  [](const PowerEstimate& a, const PowerEstimate& b) { return a.n < b.n; });
        return res;
    };

    std::size_t previous = opts.n_min;
    std::size_t n = opts.n_min;
    for (;;) {
        const PowerEstimate est = evaluate(n);
        if (est.power >= target_power) {
            res.bracket_low = previous;
            res.bracket_high = n;
            if (n == opts.n_min) return finish(est);
            for (std::size_t k = previous + opts.refine_step; k < n; k += opts.refine_step) {
                const PowerEstimate fine = evaluate(k);
                if (fine.power >= target_power) return finish(fine);
            }
            return finish(est);
        }
        if (n == opts.n_max) break;
        previous = n;
        const auto grown = static_cast<std::size_t>(std::llround(static_cast<double>(n) * opts.growth));
        n = std::min(opts.n_max, std::max(n + 1, grown));
    }
    Error e(ErrorCode::kTargetUnreachable, "estimated power at n_max = " +
                                               std::to_string(opts.n_max) + " is " +
                                               std::to_string(res.evaluated.back().power) +
                                               ", below the target " + std::to_string(target_power));
    e.n = opts.n_max;
    throw e;
}

}  // namespace aucpower
