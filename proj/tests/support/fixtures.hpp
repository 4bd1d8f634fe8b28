#pragma once

#include <cstdint>

#include "aucpower/binormal.hpp"
#include "aucpower/pilot.hpp"
#include "aucpower/random.hpp"

namespace fixtures {

// Pilot drawn from the binormal sampler; scores are on the logit scale.
inline aucpower::PilotDataset binormal_pilot(const aucpower::BinormalSpec& spec, std::size_t n,
                                             std::uint64_t seed) {
    aucpower::Rng rng(seed);
    aucpower::PairedSample s;
    aucpower::sample_dataset(aucpower::reparameterize(spec), n, rng, s);
    return {s.labels, s.scores_a, s.scores_b};
}

// Model A clearly better than B, strongly correlated, prevalence 0.3.
inline aucpower::BinormalSpec separated_spec() {
    aucpower::BinormalSpec spec;
    spec.mu_case_a = 0.6;
    spec.mu_case_b = 0.45;
    spec.mu_ctrl_a = 0.25;
    spec.mu_ctrl_b = 0.25;
    spec.v_case_a = spec.v_case_b = spec.v_ctrl_a = spec.v_ctrl_b = 0.5;
    spec.r_case = spec.r_ctrl = 0.8;
    spec.phi = 0.3;
    return spec;
}

// Both models share every parameter.
inline aucpower::BinormalSpec null_spec(double r) {
    aucpower::BinormalSpec spec;
    spec.mu_case_a = spec.mu_case_b = 0.6;
    spec.mu_ctrl_a = spec.mu_ctrl_b = 0.3;
    spec.r_case = spec.r_ctrl = r;
    spec.phi = 0.3;
    return spec;
}

}  // namespace fixtures
