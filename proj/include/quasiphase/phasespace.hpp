#pragma once

#include <optional>
#include <vector>

#include "quasiphase/fock.hpp"
#include "quasiphase/types.hpp"

namespace quasiphase {

/// Convolution kernel: either the nonnegative sinc^2 filter of width w or the
/// Gaussian family indexed by the order parameter s < 1 (s = -1 Husimi,
/// s = 0 Wigner).
struct KernelSpec {
    enum class Kind { sinc2, gaussian_s };
    Kind kind = Kind::sinc2;
    double w = 0.0;
    double s = 0.0;

    static KernelSpec sinc2_kernel(double w);
    static KernelSpec gaussian_kernel(double s);

    /// Pointwise kernel value K(offset); normalized to unit mass over the plane.
    double value(cplx offset) const;
    /// Multiplier picked up by the characteristic function under convolution.
    double transform(cplx freq) const;
};

/// Complex-delta representation of a coherent interference operator
/// |ket><bra|: a weight and two complex support coordinates.
struct DeltaTerm {
    cplx ket;
    cplx bra;
    cplx prefactor;   // <bra|ket>
    cplx support_re;  // (ket + bra*)/2
    cplx support_im;  // (ket - bra*)/(2i)
};

DeltaTerm interference_term(cplx ket, cplx bra);

/// Characteristic function of |ket><bra|: <bra|ket> e^{f bra* - f* ket}.
cplx characteristic_fn(cplx ket, cplx bra, cplx freq);

/// Entire-function evaluation of (sin u / u)^2 at complex argument.
cplx sinc2_complex(cplx u);

/// Kernel convolved with one complex-delta term, evaluated at alpha. Complex
/// support coordinates enter the kernel argument directly.
cplx regularized_delta(const DeltaTerm& term, const KernelSpec& kernel, cplx alpha);

/// Phase-space expansion of a state: weighted delta terms plus optional
/// smooth thermal-like components.
struct StateP {
    struct Weighted {
        cplx coeff;
        DeltaTerm term;
    };
    struct Smooth {
        double weight = 1.0;
        double nbar = 0.0;
        bool photon_added = false;  // false: thermal, true: SPATS
    };

    std::vector<Weighted> terms;
    std::vector<Smooth> smooth;

    static StateP from_superposition(const CoherentSuperposition& state);
    static StateP thermal(double nbar);
    static StateP spats(double nbar);

    /// sum coeff * prefactor over delta terms plus smooth weights; 1 for
    /// normalized states.
    cplx trace_mass() const;
    /// Largest |coeff - conj(partner coeff)| over conjugate term pairs; large
    /// values mean the expansion cannot be Hermitian.
    double hermitian_closure_residual() const;
};

/// Raw complex sum of the regularized expansion (diagnostics and tests).
cplx state_p_eval(const StateP& state, const KernelSpec& kernel, cplx alpha);

/// Real part of the regularized expansion; throws tolerance_error if the
/// imaginary residual exceeds 1e-10 (broken Hermitian closure).
double state_p_regularized(const StateP& state, const KernelSpec& kernel, cplx alpha);

/// Single-photon-added thermal state, closed form
/// [(1+nbar)|a|^2 - nbar] e^{-|a|^2/nbar} / (pi nbar^3).
double spats_p(double nbar, cplx alpha);

/// Thermal state, e^{-|a|^2/nbar} / (pi nbar).
double thermal_p(double nbar, cplx alpha);

/// Gaussian-smoothed family for a delta-term state; s = -1 matches the Fock
/// Husimi oracle, s = 0 is the Wigner function.
double s_param_state(const StateP& state, double s, cplx alpha);

// Closed-form Gaussian smoothing of the smooth representatives.
double thermal_p_gauss(double nbar, double s, cplx alpha);
double spats_p_gauss(double nbar, double s, cplx alpha);

// sinc^2 smoothing of the smooth representatives via their band-limited
// transforms (separable 1-D quadratures, accurate to ~1e-12).
double thermal_p_sinc2(double nbar, double w, cplx alpha);
double spats_p_sinc2(double nbar, double w, cplx alpha);

}  // namespace quasiphase
