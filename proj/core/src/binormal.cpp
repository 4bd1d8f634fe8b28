#include "aucpower/binormal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "aucpower/error.hpp"

namespace aucpower {

namespace {

double logit(double p) { return std::log(p / (1.0 - p)); }

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

void require_open_unit(double x, const char* name) {
    if (!(x > 0.0 && x < 1.0)) {
        fail(ErrorCode::kDomainError, std::string(name) + " must lie in the open interval (0,1)");
    }
}

struct Sampler2d {
    double mean_a, mean_b, sd_a, slope_b, sd_b_resid;

    explicit Sampler2d(const BivariateNormal& d)
        : mean_a(d.mean_a),
          mean_b(d.mean_b),
          sd_a(std::sqrt(d.var_a)),
          slope_b(d.cov / std::sqrt(d.var_a)),
          sd_b_resid(std::sqrt(std::max(0.0, d.var_b - d.cov * d.cov / d.var_a))) {}
};

}  // namespace

std::string_view to_string(Orientation o) {
    return o == Orientation::kCasesHigher ? "cases_higher" : "literal";
}

void BinormalSpec::validate() const {
    require_open_unit(mu_case_a, "mu_case_a");
    require_open_unit(mu_case_b, "mu_case_b");
    require_open_unit(mu_ctrl_a, "mu_ctrl_a");
    require_open_unit(mu_ctrl_b, "mu_ctrl_b");
    require_open_unit(v_case_a, "v_case_a");
    require_open_unit(v_case_b, "v_case_b");
    require_open_unit(v_ctrl_a, "v_ctrl_a");
    require_open_unit(v_ctrl_b, "v_ctrl_b");
    require_open_unit(r_case, "r_case");
    require_open_unit(r_ctrl, "r_ctrl");
    require_open_unit(phi, "phi");
}

ReparameterizedSpec reparameterize(const BinormalSpec& spec) {
    spec.validate();
    ReparameterizedSpec r;
    r.mean_case_a = logit(spec.mu_case_a);
    r.mean_case_b = logit(spec.mu_case_b);
    r.mean_ctrl_a = logit(1.0 - spec.mu_ctrl_a);
    r.mean_ctrl_b = logit(1.0 - spec.mu_ctrl_b);
    r.var_case_a = -std::log(1.0 - spec.v_case_a);
    r.var_case_b = -std::log(1.0 - spec.v_case_b);
    r.var_ctrl_a = -std::log(1.0 - spec.v_ctrl_a);
    r.var_ctrl_b = -std::log(1.0 - spec.v_ctrl_b);
    r.cov_case = spec.r_case * std::sqrt(r.var_case_a * r.var_case_b);
    r.cov_ctrl = spec.r_ctrl * std::sqrt(r.var_ctrl_a * r.var_ctrl_b);
    r.phi = spec.phi;
    return r;
}

BivariateNormal class_distribution(const ReparameterizedSpec& rspec, Label cls,
                                   Orientation orientation) {
    BivariateNormal d;
    if (cls == kCase) {
        d = {rspec.mean_case_a, rspec.mean_case_b, rspec.var_case_a, rspec.var_case_b,
             rspec.cov_case};
    } else {
        d = {rspec.mean_ctrl_a, rspec.mean_ctrl_b, rspec.var_ctrl_a, rspec.var_ctrl_b,
             rspec.cov_ctrl};
        if (orientation == Orientation::kCasesHigher) {
            // negating both coordinates flips the means and keeps the covariance
            d.mean_a = -d.mean_a;
            d.mean_b = -d.mean_b;
        }
    }
    return d;
}

void sample_dataset(const ReparameterizedSpec& rspec, std::size_t n, Rng& rng, PairedSample& out,
                    Orientation orientation) {
    if (n < 2) fail(ErrorCode::kDomainError, "sample size must be at least 2");
    const Sampler2d cases(class_distribution(rspec, kCase, orientation));
    const Sampler2d controls(class_distribution(rspec, kControl, orientation));
    std::bernoulli_distribution is_case(rspec.phi);
    std::normal_distribution<double> gauss;
    out.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const bool y = is_case(rng);
        const double z1 = gauss(rng);
        const double z2 = gauss(rng);
        const Sampler2d& s = y ? cases : controls;
        out.labels[i] = y ? kCase : kControl;
        out.scores_a[i] = s.mean_a + s.sd_a * z1;
        out.scores_b[i] = s.mean_b + s.slope_b * z1 + s.sd_b_resid * z2;
    }
}

double anticipated_auroc(const BinormalSpec& spec, Model model, Orientation orientation) {
    const ReparameterizedSpec r = reparameterize(spec);
    const BivariateNormal c1 = class_distribution(r, kCase, orientation);
    const BivariateNormal c0 = class_distribution(r, kControl, orientation);
    if (model == Model::kA) {
        return normal_cdf((c1.mean_a - c0.mean_a) / std::sqrt(c1.var_a + c0.var_a));
    }
    return normal_cdf((c1.mean_b - c0.mean_b) / std::sqrt(c1.var_b + c0.var_b));
}

namespace {

SampleFn binormal_sampler(const ReparameterizedSpec& rspec, Orientation orientation) {
    return [rspec, orientation](Rng& rng, std::size_t n, PairedSample& out) {
        sample_dataset(rspec, n, rng, out, orientation);
    };
}

}  // namespace

PowerEstimate power_binormal(const BinormalSpec& spec, std::size_t n_eval, const McConfig& cfg,
                             Orientation orientation) {
    return simulate_power(binormal_sampler(reparameterize(spec), orientation), n_eval, cfg,
                          ErrorCode::kDegenerateSpec);
}

PowerCurve power_curve_binormal(const BinormalSpec& spec, std::span<const std::size_t> n_grid,
                                const McConfig& cfg, Orientation orientation) {
    cfg.validate();
    const SampleFn sampler = binormal_sampler(reparameterize(spec), orientation);
    PowerCurve curve;
    curve.config = cfg;
    curve.points = sweep_power(
        [&](std::size_t n) { return simulate_power(sampler, n, cfg, ErrorCode::kDegenerateSpec); },
        n_grid);
    return curve;
}

MinNResult min_n_for_power_binormal(const BinormalSpec& spec, double target_power,
                                    const McConfig& cfg, const MinNOptions& opts,
                                    Orientation orientation) {
    cfg.validate();
    const SampleFn sampler = binormal_sampler(reparameterize(spec), orientation);
    return search_min_n(
        [&](std::size_t n) { return simulate_power(sampler, n, cfg, ErrorCode::kDegenerateSpec); },
        target_power, opts);
}

ContourGrid density_contours(const BinormalSpec& spec, Label cls, std::size_t grid_resolution,
                             Orientation orientation) {
    if (grid_resolution < 16) fail(ErrorCode::kDomainError, "grid resolution must be at least 16");
    const ReparameterizedSpec r = reparameterize(spec);
    ContourGrid g;
    g.resolution = grid_resolution;
    g.distribution = class_distribution(r, cls, orientation);
    const BivariateNormal& d = g.distribution;

    const double sd_a = std::sqrt(d.var_a);
    const double sd_b = std::sqrt(d.var_b);
    const double det = d.var_a * d.var_b - d.cov * d.cov;
    g.peak_density = 1.0 / (2.0 * std::numbers::pi * std::sqrt(det));

    const auto steps = static_cast<double>(grid_resolution - 1);
    g.x.resize(grid_resolution);
    g.y.resize(grid_resolution);
    for (std::size_t i = 0; i < grid_resolution; ++i) {
        const double t = -4.0 + 8.0 * static_cast<double>(i) / steps;
        g.x[i] = d.mean_a + t * sd_a;
        g.y[i] = d.mean_b + t * sd_b;
    }
    g.values.resize(grid_resolution * grid_resolution);
    for (std::size_t iy = 0; iy < grid_resolution; ++iy) {
        const double dy = g.y[iy] - d.mean_b;
        for (std::size_t ix = 0; ix < grid_resolution; ++ix) {
            const double dx = g.x[ix] - d.mean_a;
            const double q = (d.var_b * dx * dx - 2.0 * d.cov * dx * dy + d.var_a * dy * dy) / det;
            g.values[iy * grid_resolution + ix] = std::exp(-0.5 * q);
        }
    }
    return g;
}

}  // namespace aucpower
