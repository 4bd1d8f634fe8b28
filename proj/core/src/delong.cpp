#include "aucpower/delong.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "midrank.hpp"

namespace aucpower {

namespace {

constexpr double kDegenerateRelTol = 1e-12;

double mean(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

// Sample covariance with divisor (k - 1); a single observation carries no
// within-class variability and contributes 0.
double sample_cov(std::span<const double> x, double mx, std::span<const double> y, double my) {
    if (x.size() < 2) return 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - mx) * (y[i] - my);
    return s / static_cast<double>(x.size() - 1);
}

void check_paired(std::span<const Label> labels, std::span<const double> scores_a,
                  std::span<const double> scores_b) {
    if (scores_a.size() != scores_b.size()) {
        fail(ErrorCode::kLengthMismatch, "score vectors differ in length");
    }
    validate_scored_sample(labels, scores_a);
    validate_scored_sample(labels, scores_b);
}

std::string describe(const DelongComparison& c) {
    return "variance of the AUROC difference is not positive (auroc_a=" + std::to_string(c.auroc_a) +
           ", auroc_b=" + std::to_string(c.auroc_b) + ")";
}

}  // namespace

DegenerateComparisonError::DegenerateComparisonError(const DelongComparison& partial)
    : Error(ErrorCode::kDegenerateComparison, describe(partial)), partial_(partial) {}

namespace detail {

bool finish_comparison(std::span<const double> case_a, std::span<const double> case_b,
                       std::span<const double> control_a, std::span<const double> control_b,
                       DelongComparison& out) {
    const double n = static_cast<double>(case_a.size());
    const double m = static_cast<double>(control_a.size());

    const double mean_case_a = mean(case_a);
    const double mean_case_b = mean(case_b);
    const double mean_ctrl_a = mean(control_a);
    const double mean_ctrl_b = mean(control_b);

    out.auroc_a = mean_case_a;
    out.auroc_b = mean_case_b;
    out.var_a = sample_cov(case_a, mean_case_a, case_a, mean_case_a) / n +
                sample_cov(control_a, mean_ctrl_a, control_a, mean_ctrl_a) / m;
    out.var_b = sample_cov(case_b, mean_case_b, case_b, mean_case_b) / n +
                sample_cov(control_b, mean_ctrl_b, control_b, mean_ctrl_b) / m;
    out.cov_ab = sample_cov(case_a, mean_case_a, case_b, mean_case_b) / n +
                 sample_cov(control_a, mean_ctrl_a, control_b, mean_ctrl_b) / m;

    const double var_diff = out.var_difference();
    if (!(var_diff > kDegenerateRelTol * (out.var_a + out.var_b))) {
        out.z = std::numeric_limits<double>::quiet_NaN();
        out.p_value = std::numeric_limits<double>::quiet_NaN();
        return false;
    }
    out.z = (out.auroc_a - out.auroc_b) / std::sqrt(var_diff);
    out.p_value = std::erfc(std::fabs(out.z) / std::sqrt(2.0));
    return true;
}

}  // namespace detail

Placements delong_components(std::span<const Label> labels, std::span<const double> scores) {
    const ClassCounts counts = validate_scored_sample(labels, scores);
    Placements out;
    out.cases.reserve(counts.cases);
    out.controls.reserve(counts.controls);

    std::vector<double> case_scores, control_scores;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        (labels[i] == kCase ? case_scores : control_scores).push_back(scores[i]);
    }
    std::vector<std::size_t> order;
    std::vector<double> all_ranks(scores.size());
    std::vector<double> case_ranks(case_scores.size());
    std::vector<double> control_ranks(control_scores.size());
    detail::midranks(scores, order, all_ranks);
    detail::midranks(case_scores, order, case_ranks);
    detail::midranks(control_scores, order, control_ranks);

    const double n = static_cast<double>(counts.cases);
    const double m = static_cast<double>(counts.controls);
    std::size_t ci = 0, cj = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == kCase) {
            out.cases.push_back((all_ranks[i] - case_ranks[ci++]) / m);
        } else {
            out.controls.push_back((n - (all_ranks[i] - control_ranks[cj++])) / n);
        }
    }
    return out;
}

DelongComparison delong_test(std::span<const Label> labels, std::span<const double> scores_a,
                             std::span<const double> scores_b) {
    check_paired(labels, scores_a, scores_b);

    std::vector<std::size_t> case_idx, control_idx;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        (labels[i] == kCase ? case_idx : control_idx).push_back(i);
    }
    const double n = static_cast<double>(case_idx.size());
    const double m = static_cast<double>(control_idx.size());

    auto kernel = [](double case_score, double control_score) {
        if (case_score > control_score) return 1.0;
        if (case_score == control_score) return 0.5;
        return 0.0;
    };

    auto placements = [&](std::span<const double> s, std::vector<double>& case_out,
                          std::vector<double>& control_out) {
        case_out.assign(case_idx.size(), 0.0);
        control_out.assign(control_idx.size(), 0.0);
        for (std::size_t i = 0; i < case_idx.size(); ++i) {
            for (std::size_t j = 0; j < control_idx.size(); ++j) {
                const double k = kernel(s[case_idx[i]], s[control_idx[j]]);
                case_out[i] += k;
                control_out[j] += k;
            }
        }
        for (double& v : case_out) v /= m;
        for (double& v : control_out) v /= n;
    };

    std::vector<double> case_a, control_a, case_b, control_b;
    placements(scores_a, case_a, control_a);
    placements(scores_b, case_b, control_b);

    DelongComparison out;
    if (!detail::finish_comparison(case_a, case_b, control_a, control_b, out)) {
        throw DegenerateComparisonError(out);
    }
    return out;
}

DelongComparison delong_test_fast(std::span<const Label> labels, std::span<const double> scores_a,
                                  std::span<const double> scores_b) {
    check_paired(labels, scores_a, scores_b);
    DelongWorkspace ws;
    const auto outcome = ws.compare(labels, scores_a, scores_b);
    if (outcome.status == DelongWorkspace::Status::kDegenerate) {
        throw DegenerateComparisonError(outcome.comparison);
    }
    return outcome.comparison;
}

void DelongWorkspace::placements_for(std::span<const Label> labels, std::span<const double> scores,
                                     std::vector<double>& case_out,
                                     std::vector<double>& control_out) {
    case_scores_.clear();
    control_scores_.clear();
    for (std::size_t i = 0; i < labels.size(); ++i) {
        (labels[i] == kCase ? case_scores_ : control_scores_).push_back(scores[i]);
    }
    all_ranks_.resize(scores.size());
    case_ranks_.resize(case_scores_.size());
    control_ranks_.resize(control_scores_.size());
    detail::midranks(scores, order_, all_ranks_);
    detail::midranks(case_scores_, order_, case_ranks_);
    detail::midranks(control_scores_, order_, control_ranks_);

    const double n = static_cast<double>(case_scores_.size());
    const double m = static_cast<double>(control_scores_.size());
    case_out.clear();
    control_out.clear();
    std::size_t ci = 0, cj = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == kCase) {
            case_out.push_back((all_ranks_[i] - case_ranks_[ci++]) / m);
        } else {
            control_out.push_back((n - (all_ranks_[i] - control_ranks_[cj++])) / n);
        }
    }
}

DelongWorkspace::Outcome DelongWorkspace::compare(std::span<const Label> labels,
                                                  std::span<const double> scores_a,
                                                  std::span<const double> scores_b) {
    Outcome outcome;
    std::size_t cases = 0;
    for (Label y : labels) cases += (y == kCase);
    if (cases == 0 || cases == labels.size()) {
        outcome.status = Status::kSingleClass;
        return outcome;
    }
    placements_for(labels, scores_a, case_a_, control_a_);
    placements_for(labels, scores_b, case_b_, control_b_);
    if (!detail::finish_comparison(case_a_, case_b_, control_a_, control_b_, outcome.comparison)) {
        outcome.status = Status::kDegenerate;
    }
    return outcome;
}

}  // namespace aucpower
