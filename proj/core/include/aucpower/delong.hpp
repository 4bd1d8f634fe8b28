#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "aucpower/error.hpp"
#include "aucpower/roc.hpp"

namespace aucpower {

// Structural components of the Mann-Whitney statistic. A case's placement is
// the fraction of controls it outranks, a control's placement the fraction of
// cases that outrank it; ties earn half credit. Both means equal the AUROC.
struct Placements {
    std::vector<double> cases;     // in input order of the cases
    std::vector<double> controls;  // in input order of the controls
};

Placements delong_components(std::span<const Label> labels, std::span<const double> scores);

// Paired comparison of two AUROCs measured on the same individuals.
struct DelongComparison {
    double auroc_a = 0.0;
    double auroc_b = 0.0;
    double var_a = 0.0;
    double var_b = 0.0;
    double cov_ab = 0.0;
    double z = 0.0;
    double p_value = 1.0;  // two-sided

    double var_difference() const { return var_a + var_b - 2.0 * cov_ab; }
};

// Thrown when VAR(A - B) vanishes, e.g. when both score vectors induce the same
// ranking. The partially filled comparison (aurocs, variances, covariance) is
// kept; z and p_value are NaN.
class DegenerateComparisonError : public Error {
public:
    explicit DegenerateComparisonError(const DelongComparison& partial);
    const DelongComparison& comparison() const noexcept { return partial_; }

private:
    DelongComparison partial_;
};

// Reference implementation: placements by explicit case x control loops,
// O(n m) time.
DelongComparison delong_test(std::span<const Label> labels, std::span<const double> scores_a,
                             std::span<const double> scores_b);

// Same contract as delong_test; placements come from midranks in O(N log N).
DelongComparison delong_test_fast(std::span<const Label> labels, std::span<const double> scores_a,
                                  std::span<const double> scores_b);

// Reusable scratch buffers for repeated fast comparisons inside Monte Carlo
// loops. Inputs are assumed finite and labels in {0,1}; class emptiness and
// degeneracy are reported through the status instead of exceptions.
class DelongWorkspace {
public:
    enum class Status { kOk, kSingleClass, kDegenerate };

    struct Outcome {
        Status status = Status::kOk;
        DelongComparison comparison;
    };

    Outcome compare(std::span<const Label> labels, std::span<const double> scores_a,
                    std::span<const double> scores_b);

private:
    void placements_for(std::span<const Label> labels, std::span<const double> scores,
                        std::vector<double>& case_out, std::vector<double>& control_out);

    std::vector<double> case_scores_;
    std::vector<double> control_scores_;
    std::vector<double> all_ranks_;
    std::vector<double> case_ranks_;
    std::vector<double> control_ranks_;
    std::vector<std::size_t> order_;
    std::vector<double> case_a_, case_b_, control_a_, control_b_;
};

namespace detail {

// Assembles the comparison from paired placement vectors. Returns false when the
// variance of the difference is non-positive within relative tolerance.
bool finish_comparison(std::span<const double> case_a, std::span<const double> case_b,
                       std::span<const double> control_a, std::span<const double> control_b,
                       DelongComparison& out);

}  // namespace detail

}  // namespace aucpower
