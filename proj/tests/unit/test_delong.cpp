#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "aucpower/delong.hpp"
#include "oracles.hpp"

namespace aucpower {
namespace {

using Labels = std::vector<Label>;
using Scores = std::vector<double>;

struct Pair {
    Labels y;
    Scores a, b;
};

// Correlated binormal scores; `levels` > 0 rounds onto a coarse grid to force ties.
Pair random_pair(std::mt19937_64& rng, std::size_t n, double rho, int levels) {
    Pair p;
    std::bernoulli_distribution coin(0.3);
    std::normal_distribution<double> z;
    do {
        p.y.assign(n, 0);
        for (auto& v : p.y) v = coin(rng) ? kCase : kControl;
    } while (std::count(p.y.begin(), p.y.end(), kCase) < 1 || std::count(p.y.begin(), p.y.end(), kControl) < 1);
    for (std::size_t i = 0; i < n; ++i) {
        const double z1 = z(rng), z2 = rho * z1 + std::sqrt(1 - rho * rho) * z(rng);
        double a = z1 + (p.y[i] ? 1.2 : 0.0);
        double b = z2 + (p.y[i] ? 0.7 : 0.0);
        if (levels > 0) {
            a = std::round(a * levels) / levels;
            b = std::round(b * levels) / levels;
        }
        p.a.push_back(a);
        p.b.push_back(b);
    }
    return p;
}

void expect_fields_near(const DelongComparison& x, const DelongComparison& y, double tol) {
    EXPECT_NEAR(x.auroc_a, y.auroc_a, tol);
    EXPECT_NEAR(x.auroc_b, y.auroc_b, tol);
    EXPECT_NEAR(x.var_a, y.var_a, tol);
    EXPECT_NEAR(x.var_b, y.var_b, tol);
    EXPECT_NEAR(x.cov_ab, y.cov_ab, tol);
    EXPECT_NEAR(x.z, y.z, tol);
    EXPECT_NEAR(x.p_value, y.p_value, tol);
}

TEST(DelongComponents, SpecExamples) {
    auto p = delong_components(Labels{1, 0}, Scores{0.9, 0.1});
    EXPECT_EQ(p.cases, (Scores{1.0}));
    EXPECT_EQ(p.controls, (Scores{1.0}));

    p = delong_components(Labels{1, 1, 0, 0, 0}, Scores{0.8, 0.4, 0.6, 0.3, 0.2});
    ASSERT_EQ(p.cases.size(), 2u);
    ASSERT_EQ(p.controls.size(), 3u);
    EXPECT_NEAR(p.cases[0], 1.0, 1e-15);
    EXPECT_NEAR(p.cases[1], 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(p.controls[0], 0.5, 1e-15);
    EXPECT_NEAR(p.controls[1], 1.0, 1e-15);
    EXPECT_NEAR(p.controls[2], 1.0, 1e-15);
}

TEST(DelongComponents, MeansEqualAuroc) {
    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 50; ++rep) {
        const auto p = random_pair(rng, 80, 0.5, rep % 2 ? 4 : 0);
        const auto c = delong_components(p.y, p.a);
        double sc = 0, sk = 0;
        for (double v : c.cases) sc += v;
        for (double v : c.controls) sk += v;
        const double theta = oracle::auroc(p.y, p.a);
        EXPECT_NEAR(sc / c.cases.size(), theta, 1e-12);
        EXPECT_NEAR(sk / c.controls.size(), theta, 1e-12);
    }
}

TEST(DelongTest, MatchesTextbookOracle) {
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 100; ++rep) {
        const auto p = random_pair(rng, 100, 0.6, rep % 3 == 0 ? 3 : 0);
        const auto ref = oracle::delong(p.y, p.a, p.b);
        const auto got = delong_test(p.y, p.a, p.b);
        EXPECT_NEAR(got.auroc_a, ref.auc[0], 1e-12);
        EXPECT_NEAR(got.auroc_b, ref.auc[1], 1e-12);
        EXPECT_NEAR(got.var_a, ref.s[0][0], 1e-12);
        EXPECT_NEAR(got.var_b, ref.s[1][1], 1e-12);
        EXPECT_NEAR(got.cov_ab, ref.s[0][1], 1e-12);
        EXPECT_NEAR(got.z, ref.z, 1e-10);
        EXPECT_NEAR(got.p_value, ref.p, 1e-10);
    }
}

TEST(DelongTestFast, EqualsReferenceWithTies) {
    std::mt19937_64 rng(9);
    for (int rep = 0; rep < 300; ++rep) {
        const std::size_t n = 4 + rng() % 497;
        const auto p = random_pair(rng, n, 0.8, static_cast<int>(rng() % 4) * 2);
        DelongComparison ref, fast;
        try {
            ref = delong_test(p.y, p.a, p.b);
        } catch (const DegenerateComparisonError&) {
            EXPECT_THROW(delong_test_fast(p.y, p.a, p.b), DegenerateComparisonError);
            continue;
        }
        fast = delong_test_fast(p.y, p.a, p.b);
        expect_fields_near(fast, ref, 1e-10);
    }
}

TEST(DelongTestFast, WorkspaceMatchesFreeFunction) {
    std::mt19937_64 rng(10);
    DelongWorkspace ws;
    for (int rep = 0; rep < 100; ++rep) {
        const auto p = random_pair(rng, 20 + rng() % 200, 0.7, rep % 2 ? 5 : 0);
        const auto out = ws.compare(p.y, p.a, p.b);
        ASSERT_EQ(out.status, DelongWorkspace::Status::kOk);
        const auto fast = delong_test_fast(p.y, p.a, p.b);
        EXPECT_EQ(out.comparison.z, fast.z);
        EXPECT_EQ(out.comparison.p_value, fast.p_value);
    }
    EXPECT_EQ(ws.compare(Labels{1, 1}, Scores{0.1, 0.2}, Scores{0.3, 0.4}).status,
              DelongWorkspace::Status::kSingleClass);
    EXPECT_EQ(ws.compare(Labels{1, 0, 0}, Scores{0.1, 0.2, 0.3}, Scores{0.1, 0.2, 0.3}).status,
              DelongWorkspace::Status::kDegenerate);
}

TEST(DelongTest, IdenticalScoresAreDegenerate) {
    std::mt19937_64 rng(12);
    const auto p = random_pair(rng, 60, 0.5, 0);
    EXPECT_THROW(delong_test(p.y, p.a, p.a), DegenerateComparisonError);
    EXPECT_THROW(delong_test_fast(p.y, p.a, p.a), DegenerateComparisonError);
    try {
        delong_test(p.y, p.a, p.a);
    } catch (const DegenerateComparisonError& e) {
        EXPECT_EQ(e.code(), ErrorCode::kDegenerateComparison);
        EXPECT_TRUE(std::isnan(e.comparison().z));
        EXPECT_TRUE(std::isnan(e.comparison().p_value));
        EXPECT_EQ(e.comparison().auroc_a, e.comparison().auroc_b);
    }
}

TEST(DelongTest, MonotoneTransformOfSameScoresIsDegenerate) {
    std::mt19937_64 rng(14);
    const auto p = random_pair(rng, 60, 0.5, 0);
    Scores t(p.a.size());
    std::transform(p.a.begin(), p.a.end(), t.begin(), [](double x) { return 1.0 / (1.0 + std::exp(-x)); });
    EXPECT_THROW(delong_test(p.y, p.a, t), DegenerateComparisonError);
    EXPECT_THROW(delong_test_fast(p.y, p.a, t), DegenerateComparisonError);
}

TEST(DelongTest, ReversalOfSinglePair) {
    // Every placement variance is zero with one case and one control, so the
    // comparison is degenerate; the partial result still carries both AUROCs.
    try {
        delong_test_fast(Labels{1, 0}, Scores{1.0, 0.0}, Scores{0.0, 1.0});
        FAIL() << "expected DegenerateComparisonError";
    } catch (const DegenerateComparisonError& e) {
        EXPECT_EQ(e.comparison().auroc_a, 1.0);
        EXPECT_EQ(e.comparison().auroc_b, 0.0);
    }
}

TEST(DelongTest, PerModelMonotoneTransformsLeaveResultUnchanged) {
    std::mt19937_64 rng(15);
    for (int rep = 0; rep < 20; ++rep) {
        const auto p = random_pair(rng, 150, 0.5, rep % 2 ? 4 : 0);
        Scores ta(p.a.size()), tb(p.b.size());
        std::transform(p.a.begin(), p.a.end(), ta.begin(), [](double x) { return std::exp(x); });
        std::transform(p.b.begin(), p.b.end(), tb.begin(), [](double x) { return 5.0 * x + 1.0; });
        const auto r1 = delong_test_fast(p.y, p.a, p.b);
        const auto r2 = delong_test_fast(p.y, ta, tb);
        expect_fields_near(r1, r2, 1e-12);
    }
}

TEST(DelongTest, CovarianceSignFollowsCorrelation) {
    std::mt19937_64 rng(16);
    const auto pos = random_pair(rng, 400, 0.9, 0);
    const auto neg = random_pair(rng, 400, -0.9, 0);
    EXPECT_GT(delong_test_fast(pos.y, pos.a, pos.b).cov_ab, 0.0);
    EXPECT_LT(delong_test_fast(neg.y, neg.a, neg.b).cov_ab, 0.0);
}

TEST(DelongTest, SwappingModelsNegatesZ) {
    std::mt19937_64 rng(18);
    const auto p = random_pair(rng, 200, 0.5, 0);
    const auto ab = delong_test_fast(p.y, p.a, p.b);
    const auto ba = delong_test_fast(p.y, p.b, p.a);
    EXPECT_NEAR(ab.z, -ba.z, 1e-12);
    EXPECT_NEAR(ab.p_value, ba.p_value, 1e-12);
    EXPECT_GE(ab.p_value, 0.0);
    EXPECT_LE(ab.p_value, 1.0);
}

TEST(DelongTest, InputErrors) {
    EXPECT_THROW(delong_test(Labels{1, 1}, Scores{0.1, 0.2}, Scores{0.2, 0.1}), Error);
    EXPECT_THROW(delong_test_fast(Labels{1, 0}, Scores{0.1, 0.2}, Scores{0.2}), Error);
    EXPECT_THROW(delong_test_fast(Labels{1, 0}, Scores{0.1, NAN}, Scores{0.2, 0.1}), Error);
}

}  // namespace
}  // namespace aucpower
