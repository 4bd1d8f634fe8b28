#pragma once

#include <cstdint>

namespace aucpower {

// Widest 95% CI we recommend targeting; wider targets are allowed but flagged.
inline constexpr double kRecommendedMaxCiWidth = 0.1;
inline constexpr std::int64_t kMaxSingleSampleSize = 100'000'000;

struct SingleSizeRequest {
    double theta = 0.0;     // anticipated AUROC
    double phi = 0.0;       // prevalence
    double ci_width = 0.0;  // target width of the 95% CI
};

struct SingleSizeResult {
    std::int64_t n_total = 0;
    std::int64_t n_events = 0;  // ceil(phi * n_total)
    double se_achieved = 0.0;
    double target_se = 0.0;
    bool wide_ci_advisory = false;  // ci_width above kRecommendedMaxCiWidth
};

// Smallest N >= 2 whose Newcombe standard error is strictly below
// ci_width / (2 * 1.96), found by a linear scan over N.
SingleSizeResult sample_size_single(const SingleSizeRequest& req);

}  // namespace aucpower
