#include "aucpower/roc.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "aucpower/error.hpp"
#include "midrank.hpp"

namespace aucpower {

ClassCounts validate_scored_sample(std::span<const Label> labels, std::span<const double> scores) {
    if (labels.size() != scores.size()) {
        fail(ErrorCode::kLengthMismatch, "labels and scores differ in length (" +
                                             std::to_string(labels.size()) + " vs " +
                                             std::to_string(scores.size()) + ")");
    }
    ClassCounts counts;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == kCase) {
            ++counts.cases;
        } else if (labels[i] == kControl) {
            ++counts.controls;
        } else {
            fail(ErrorCode::kDomainError, "label at index " + std::to_string(i) + " is not 0 or 1");
        }
        if (!std::isfinite(scores[i])) {
            fail(ErrorCode::kNonFiniteScore, "score at index " + std::to_string(i) + " is not finite");
        }
    }
    if (counts.cases == 0 || counts.controls == 0) {
        fail(ErrorCode::kEmptyClass, "need at least one case and one control");
    }
    return counts;
}

double estimate_auroc(std::span<const Label> labels, std::span<const double> scores) {
    const ClassCounts counts = validate_scored_sample(labels, scores);
    std::vector<std::size_t> order;
    std::vector<double> ranks(scores.size());
    detail::midranks(scores, order, ranks);

    double case_rank_sum = 0.0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == kCase) case_rank_sum += ranks[i];
    }
    const double n = static_cast<double>(counts.cases);
    const double m = static_cast<double>(counts.controls);
    const double u = case_rank_sum - n * (n + 1.0) / 2.0;
    return u / (n * m);
}

double newcombe_variance(double theta, double phi, std::int64_t n_total) {
    if (!(theta > 0.0 && theta < 1.0)) {
        fail(ErrorCode::kDomainError, "theta must lie in (0,1)");
    }
    if (!(phi > 0.0 && phi < 1.0)) {
        fail(ErrorCode::kDomainError, "prevalence must lie in (0,1)");
    }
    if (n_total < 2) {
        fail(ErrorCode::kDomainError, "total sample size must be at least 2");
    }
    const double big_n = static_cast<double>(n_total);
    const double half_minus_one = big_n / 2.0 - 1.0;
    const double bracket = 1.0 + half_minus_one * (1.0 - theta) / (2.0 - theta) +
                           half_minus_one * theta / (1.0 + theta);
    return theta * (1.0 - theta) * bracket / (phi * (1.0 - phi) * big_n * big_n);
}

AurocEstimate auroc_with_ci(std::span<const Label> labels, std::span<const double> scores) {
    const ClassCounts counts = validate_scored_sample(labels, scores);
    const double theta = estimate_auroc(labels, scores);
    if (theta <= 0.0 || theta >= 1.0) {
        fail(ErrorCode::kDegenerateAuroc,
             "AUROC estimate is " + std::to_string(theta) + "; the asymptotic interval is undefined");
    }
    const auto n_total = static_cast<std::int64_t>(labels.size());
    const double phi = static_cast<double>(counts.cases) / static_cast<double>(n_total);

    AurocEstimate est;
    est.theta_hat = theta;
    est.se = std::sqrt(newcombe_variance(theta, phi, n_total));
    est.ci_low_raw = theta - kZ975 * est.se;
    est.ci_high_raw = theta + kZ975 * est.se;
    est.ci_low = std::clamp(est.ci_low_raw, 0.0, 1.0);
    est.ci_high = std::clamp(est.ci_high_raw, 0.0, 1.0);
    est.n_cases = counts.cases;
    est.n_controls = counts.controls;
    return est;
}

}  // namespace aucpower
