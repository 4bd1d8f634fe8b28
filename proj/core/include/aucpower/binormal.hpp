#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "aucpower/monte_carlo.hpp"
#include "aucpower/random.hpp"
#include "aucpower/roc.hpp"

namespace aucpower {

// User-facing parameters of the two-class bivariate normal score model. Every
// value must lie strictly inside (0,1). Means are on the predicted-risk scale,
// variances and correlations are the bounded parameters mapped by
// reparameterize().
struct BinormalSpec {
    double mu_case_a = 0.5;
    double mu_case_b = 0.5;
    double mu_ctrl_a = 0.5;
    double mu_ctrl_b = 0.5;
    double v_case_a = 0.9;
    double v_case_b = 0.9;
    double v_ctrl_a = 0.9;
    double v_ctrl_b = 0.9;
    double r_case = 0.9;
    double r_ctrl = 0.9;
    double phi = 0.2;

    void validate() const;
};

// Logit-scale parameters. Control means follow the mapping
// logit(y mu + (1 - y)(1 - mu)) literally, i.e. logit(1 - mu) for controls.
struct ReparameterizedSpec {
    double mean_case_a = 0.0;
    double mean_case_b = 0.0;
    double mean_ctrl_a = 0.0;
    double mean_ctrl_b = 0.0;
    double var_case_a = 0.0;
    double var_case_b = 0.0;
    double var_ctrl_a = 0.0;
    double var_ctrl_b = 0.0;
    double cov_case = 0.0;
    double cov_ctrl = 0.0;
    double phi = 0.0;
};

// How control scores are placed relative to case scores when sampling.
//  kCasesHigher: control draws are negated, which centres them at logit(mu)
//                so higher mean risk for cases means AUROC above 0.5.
//  kLiteral:     control draws are used as generated, centred at logit(1 - mu).
enum class Orientation { kCasesHigher, kLiteral };

std::string_view to_string(Orientation o);

enum class Model { kA, kB };

struct BivariateNormal {
    double mean_a = 0.0;
    double mean_b = 0.0;
    double var_a = 0.0;
    double var_b = 0.0;
    double cov = 0.0;
};

ReparameterizedSpec reparameterize(const BinormalSpec& spec);

// Distribution of (score_a, score_b) within one class as actually sampled.
BivariateNormal class_distribution(const ReparameterizedSpec& rspec, Label cls,
                                   Orientation orientation = Orientation::kCasesHigher);

// Draws n rows: Y ~ Bernoulli(phi), then the score pair from the class's
// bivariate normal.
void sample_dataset(const ReparameterizedSpec& rspec, std::size_t n, Rng& rng, PairedSample& out,
                    Orientation orientation = Orientation::kCasesHigher);

// Closed-form binormal AUROC Phi((m1 - m0) / sqrt(v1 + v0)).
double anticipated_auroc(const BinormalSpec& spec, Model model,
                         Orientation orientation = Orientation::kCasesHigher);

PowerEstimate power_binormal(const BinormalSpec& spec, std::size_t n_eval, const McConfig& cfg,
                             Orientation orientation = Orientation::kCasesHigher);

PowerCurve power_curve_binormal(const BinormalSpec& spec, std::span<const std::size_t> n_grid,
                                const McConfig& cfg,
                                Orientation orientation = Orientation::kCasesHigher);

MinNResult min_n_for_power_binormal(const BinormalSpec& spec, double target_power,
                                    const McConfig& cfg, const MinNOptions& opts,
                                    Orientation orientation = Orientation::kCasesHigher);

// Density of one class's score pair on a resolution x resolution grid spanning
// +/- 4 standard deviations around the class mean, scaled so the density at
// the mean is 1. values are row-major: values[iy * resolution + ix].
struct ContourGrid {
    std::size_t resolution = 0;
    std::vector<double> x;  // model A score axis
    std::vector<double> y;  // model B score axis
    std::vector<double> values;
    double peak_density = 0.0;  // unnormalised density at the mean
    BivariateNormal distribution;
};

ContourGrid density_contours(const BinormalSpec& spec, Label cls, std::size_t grid_resolution,
                             Orientation orientation = Orientation::kCasesHigher);

}  // namespace aucpower
