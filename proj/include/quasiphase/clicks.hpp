#pragma once

#include <cstdint>
#include <vector>

#include "quasiphase/fock.hpp"
#include "quasiphase/types.hpp"

namespace quasiphase {

/// Multiplexed on-off detection layout: N = 2^d detectors behind a t:r beam
/// splitter mixing the signal with a local oscillator, quantum efficiency eta,
/// and generating-function parameter z.
struct DetectionConfig {
    int n_detectors = 2;
    double eta = 1.0;
    double t = 0.0;
    double r = 1.0;
    double z = -1.0;

    /// r is derived from t so that t^2 + r^2 = 1 holds exactly.
    static DetectionConfig balanced(int n_detectors, double eta, double t, double z);
    void validate() const;
};

/// Vacuum generating function [e^{-eta r^2 |a|^2/N} + z(1 - e^{...})]^N.
double g_vac(cplx alpha, const DetectionConfig& cfg);

/// Squared distance of alpha from the (t/r)-scaled complex support of
/// |ket><bra|, with complex-valued squares.
cplx q_shift(cplx alpha, cplx bra, cplx ket, const DetectionConfig& cfg);

/// Detector-agnostic representation of one interference operator:
/// <bra|ket> [z + (1-z) e^{-eta r^2 q/N}]^N.
cplx g_interference(cplx alpha, cplx bra, cplx ket, const DetectionConfig& cfg);

/// Detector-agnostic representation of a coherent superposition; real within
/// 1e-10 by Hermitian pairing, enforced.
double g_state(const CoherentSuperposition& state, cplx alpha, const DetectionConfig& cfg);

/// Independent Fock-basis route: propagate rho through the beam splitter and
/// local oscillator, then assemble the click generating function from
/// binomial no-click operators.
double fock_click_oracle(const DensityMatrix& rho, cplx alpha, const DetectionConfig& cfg);

/// Quadrature route for thermal signals (Gauss-Hermite over the thermal
/// distribution); used to validate the nonnegativity claims.
double thermal_g_quadrature(double nbar, cplx alpha, const DetectionConfig& cfg, int order = 48);

/// Classical signal: mixture of coherent amplitudes and thermal components,
/// i.e. states with a samplable nonnegative phase-space density.
struct ClassicalState {
    struct Component {
        double weight = 1.0;
        bool thermal = false;
        cplx beta;
        double nbar = 0.0;
    };
    std::vector<Component> components;

    static ClassicalState coherent(cplx beta);
    static ClassicalState thermal(double nbar);
    static ClassicalState mixture(std::vector<Component> components);
    void validate() const;
};

struct MonteCarloEstimate {
    double value = 0.0;
    double std_error = 0.0;
    long long shots = 0;
};

/// Stochastic estimate of the generating function: sample an amplitude from
/// the classical density, then independent per-detector clicks. Per-shot
/// substreams are derived from (seed, shot index), so the result depends only
/// on the seed, not on scheduling.
MonteCarloEstimate monte_carlo_g(const ClassicalState& state, cplx alpha,
                                 const DetectionConfig& cfg, long long shots, uint64_t seed);

}  // namespace quasiphase
