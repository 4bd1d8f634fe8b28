#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

namespace aucpower {

// Outcome labels are stored as bytes: 1 for a case, 0 for a control.
using Label = std::uint8_t;
inline constexpr Label kCase = 1;
inline constexpr Label kControl = 0;

inline constexpr double kZ975 = 1.96;

struct ClassCounts {
    std::size_t cases = 0;
    std::size_t controls = 0;
};

// Checks the shared preconditions of every rank-based estimator: equal
// lengths, labels in {0,1}, finite scores, and at least one member of each
// class. Throws Error on violation and returns the class counts otherwise.
ClassCounts validate_scored_sample(std::span<const Label> labels, std::span<const double> scores);

// Mann-Whitney estimate of the AUROC. A case-control pair with exactly equal
// scores (bitwise equality, no epsilon) contributes 1/2. Runs in O(N log N).
double estimate_auroc(std::span<const Label> labels, std::span<const double> scores);

// Newcombe's asymptotic variance of the AUROC estimator for total sample size
// `n_total` at prevalence `phi`. Both the (N/2 - 1) factors and the
// phi(1 - phi) N^2 denominator are applied as written, for any phi.
double newcombe_variance(double theta, double phi, std::int64_t n_total);

struct AurocEstimate {
    double theta_hat = 0.0;
    double se = 0.0;
    double ci_low = 0.0;   // clamped to [0,1]
    double ci_high = 0.0;  // clamped to [0,1]
    double ci_low_raw = 0.0;
    double ci_high_raw = 0.0;
    std::size_t n_cases = 0;
    std::size_t n_controls = 0;
};

// Point estimate with a 95% Wald interval theta_hat +/- 1.96 se, where se comes
// from newcombe_variance at the observed prevalence. Throws DegenerateAuroc
// when theta_hat is exactly 0 or 1.
AurocEstimate auroc_with_ci(std::span<const Label> labels, std::span<const double> scores);

}  // namespace aucpower
