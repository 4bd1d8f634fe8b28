#include "aucpower/sample_size.hpp"

#include <cmath>

#include "aucpower/error.hpp"
#include "aucpower/roc.hpp"

namespace aucpower {

namespace {

bool in_open_unit(double x) { return x > 0.0 && x < 1.0; }

}  // namespace

SingleSizeResult sample_size_single(const SingleSizeRequest& req) {
    if (!in_open_unit(req.theta)) fail(ErrorCode::kDomainError, "auroc must lie in (0,1)");
    if (!in_open_unit(req.phi)) fail(ErrorCode::kDomainError, "prevalence must lie in (0,1)");
    if (!in_open_unit(req.ci_width)) fail(ErrorCode::kDomainError, "ci width must lie in (0,1)");

    SingleSizeResult out;
    out.target_se = req.ci_width / (2.0 * kZ975);
    out.wide_ci_advisory = req.ci_width > kRecommendedMaxCiWidth;

    for (std::int64_t n = 2; n <= kMaxSingleSampleSize; ++n) {
        const double se = std::sqrt(newcombe_variance(req.theta, req.phi, n));
        if (se < out.target_se) {
            out.n_total = n;
            // the 1e-9 slack keeps products like 0.2 * 450 from rounding up
            out.n_events =
                static_cast<std::int64_t>(std::ceil(req.phi * static_cast<double>(n) - 1e-9));
            out.se_achieved = se;
            return out;
        }
    }
    fail(ErrorCode::kOverflow, "target precision not reached below N = 1e8");
}

}  // namespace aucpower
