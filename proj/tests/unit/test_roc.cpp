#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "aucpower/error.hpp"
#include "aucpower/roc.hpp"
#include "oracles.hpp"

namespace aucpower {
namespace {

using Labels = std::vector<Label>;
using Scores = std::vector<double>;

ErrorCode code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no aucpower::Error thrown";
    return ErrorCode::kIoError;
}

struct Instance {
    Labels y;
    Scores s;
};

Instance random_instance(std::mt19937_64& rng, std::size_t n, bool ties) {
    Instance in;
    std::bernoulli_distribution coin(0.35);
    std::normal_distribution<double> z;
    std::uniform_int_distribution<int> bucket(0, 6);
    do {
        in.y.assign(n, 0);
        for (auto& v : in.y) v = coin(rng) ? kCase : kControl;
    } while (std::count(in.y.begin(), in.y.end(), kCase) == 0 ||
             std::count(in.y.begin(), in.y.end(), kControl) == 0);
    in.s.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        in.s[i] = ties ? bucket(rng) / 6.0 : z(rng) + (in.y[i] ? 0.8 : 0.0);
    }
    return in;
}

TEST(EstimateAuroc, SpecExamples) {
    EXPECT_DOUBLE_EQ(estimate_auroc(Labels{1, 0}, Scores{0.9, 0.1}), 1.0);
    EXPECT_DOUBLE_EQ(estimate_auroc(Labels{1, 0}, Scores{0.5, 0.5}), 0.5);
    EXPECT_NEAR(estimate_auroc(Labels{1, 1, 0, 0, 0}, Scores{0.8, 0.4, 0.6, 0.3, 0.2}), 5.0 / 6.0, 1e-15);
}

TEST(EstimateAuroc, MatchesPairwiseDefinition) {
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 300; ++rep) {
        const std::size_t n = 2 + rng() % 199;
        const auto in = random_instance(rng, n, rep % 2 == 0);
        EXPECT_NEAR(estimate_auroc(in.y, in.s), oracle::auroc(in.y, in.s), 1e-12) << "n=" << n;
    }
}

TEST(EstimateAuroc, InvariantUnderStrictlyIncreasingTransform) {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 50; ++rep) {
        auto in = random_instance(rng, 150, rep % 3 == 0);
        const double before = estimate_auroc(in.y, in.s);
        Scores t(in.s.size());
        std::transform(in.s.begin(), in.s.end(), t.begin(), [](double x) { return std::exp(3.0 * x) - 2.0; });
        EXPECT_DOUBLE_EQ(estimate_auroc(in.y, t), before);
    }
}

TEST(EstimateAuroc, LabelFlipGivesComplement) {
    std::mt19937_64 rng(13);
    for (int rep = 0; rep < 50; ++rep) {
        auto in = random_instance(rng, 120, rep % 2 == 1);
        const double theta = estimate_auroc(in.y, in.s);
        Labels flipped(in.y.size());
        std::transform(in.y.begin(), in.y.end(), flipped.begin(), [](Label l) -> Label { return 1 - l; });
        EXPECT_NEAR(estimate_auroc(flipped, in.s), 1.0 - theta, 1e-12);
    }
}

TEST(EstimateAuroc, RejectsInvalidInput) {
    EXPECT_EQ(code_of([] { estimate_auroc(Labels{1, 0, 1}, Scores{0.1, 0.2}); }), ErrorCode::kLengthMismatch);
    EXPECT_EQ(code_of([] { estimate_auroc(Labels{1, 1}, Scores{0.1, 0.2}); }), ErrorCode::kEmptyClass);
    EXPECT_EQ(code_of([] { estimate_auroc(Labels{0, 0}, Scores{0.1, 0.2}); }), ErrorCode::kEmptyClass);
    EXPECT_EQ(code_of([] { estimate_auroc(Labels{1, 0}, Scores{NAN, 0.2}); }), ErrorCode::kNonFiniteScore);
    EXPECT_EQ(code_of([] { estimate_auroc(Labels{1, 0}, Scores{INFINITY, 0.2}); }), ErrorCode::kNonFiniteScore);
    EXPECT_EQ(code_of([] { estimate_auroc(Labels{1, 2}, Scores{0.1, 0.2}); }), ErrorCode::kDomainError);
}

TEST(NewcombeVariance, CaseStudyValue) {
    const double v = newcombe_variance(0.81, 0.20, 450);
    EXPECT_NEAR(v, 6.508e-4, 5e-7);
    EXPECT_NEAR(std::sqrt(v), 0.02551, 5e-6);
    EXPECT_NEAR(v, oracle::newcombe_variance(0.81, 0.20, 450), 1e-18);
}

TEST(NewcombeVariance, SymmetricThetaHalf) {
    for (std::int64_t n : {10, 100, 451, 10000}) {
        const double nn = static_cast<double>(n);
        const double expected = 0.25 * (1.0 + (nn / 2 - 1) / 3.0 + (nn / 2 - 1) / 3.0) / (0.25 * nn * nn);
        EXPECT_NEAR(newcombe_variance(0.5, 0.5, n), expected, 1e-15);
    }
}

TEST(NewcombeVariance, AgreesWithOracleAndShrinksWithN) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.01, 0.99);
    for (int rep = 0; rep < 200; ++rep) {
        const double theta = u(rng), phi = u(rng);
        const std::int64_t n = 4 + static_cast<std::int64_t>(rng() % 5000);
        EXPECT_NEAR(newcombe_variance(theta, phi, n) / oracle::newcombe_variance(theta, phi, n), 1.0, 1e-12);
        EXPECT_GT(newcombe_variance(theta, phi, n), 0.0);
        EXPECT_LT(newcombe_variance(theta, phi, 1'000'000), newcombe_variance(theta, phi, 1000));
    }
}

TEST(NewcombeVariance, DomainErrors) {
    EXPECT_EQ(code_of([] { newcombe_variance(0.0, 0.2, 100); }), ErrorCode::kDomainError);
    EXPECT_EQ(code_of([] { newcombe_variance(1.0, 0.2, 100); }), ErrorCode::kDomainError);
    EXPECT_EQ(code_of([] { newcombe_variance(0.8, 0.0, 100); }), ErrorCode::kDomainError);
    EXPECT_EQ(code_of([] { newcombe_variance(0.8, 1.0, 100); }), ErrorCode::kDomainError);
    EXPECT_EQ(code_of([] { newcombe_variance(0.8, 0.2, 0); }), ErrorCode::kDomainError);
}

TEST(AurocWithCi, SymmetricAroundHalf) {
    // 100 cases and 100 controls with identical score multisets.
    Labels y;
    Scores s;
    for (int i = 0; i < 100; ++i) {
        y.push_back(kCase);
        s.push_back(i);
        y.push_back(kControl);
        s.push_back(i);
    }
    const auto est = auroc_with_ci(y, s);
    EXPECT_DOUBLE_EQ(est.theta_hat, 0.5);
    EXPECT_NEAR(est.theta_hat - est.ci_low, est.ci_high - est.theta_hat, 1e-15);
    EXPECT_NEAR(est.se, std::sqrt(newcombe_variance(0.5, 0.5, 200)), 1e-15);
    EXPECT_EQ(est.n_cases, 100u);
    EXPECT_EQ(est.n_controls, 100u);
}

TEST(AurocWithCi, ClampsToUnitInterval) {
    Labels y{1, 1, 1, 0, 0, 0};
    Scores s{0.9, 0.8, 0.3, 0.4, 0.2, 0.1};
    const auto est = auroc_with_ci(y, s);
    EXPECT_NEAR(est.theta_hat, 8.0 / 9.0, 1e-15);
    EXPECT_GT(est.ci_high_raw, 1.0);
    EXPECT_EQ(est.ci_high, 1.0);
    EXPECT_NEAR(est.ci_low_raw, est.theta_hat - kZ975 * est.se, 1e-15);
}

TEST(AurocWithCi, PerfectSeparationIsDegenerate) {
    EXPECT_EQ(code_of([] { auroc_with_ci(Labels{1, 1, 0}, Scores{0.9, 0.8, 0.1}); }), ErrorCode::kDegenerateAuroc);
    EXPECT_EQ(code_of([] { auroc_with_ci(Labels{1, 1, 0}, Scores{0.1, 0.2, 0.9}); }), ErrorCode::kDegenerateAuroc);
}

}  // namespace
}  // namespace aucpower
