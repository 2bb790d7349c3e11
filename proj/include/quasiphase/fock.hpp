#pragma once

#include <Eigen/Dense>
#include <vector>

#include "quasiphase/types.hpp"

namespace quasiphase {

/// Cutoff that keeps Poissonian tails below ~1e-10 for states whose mean
/// photon number (including displacements) stays at or below `mean_photons`.
int recommended_cutoff(double mean_photons);

/// Pure state in a photon-number basis truncated at `cutoff`.
struct FockVector {
    Eigen::VectorXcd amplitudes;  // index = photon number, size cutoff+1
    int cutoff = 0;

    double norm() const { return amplitudes.norm(); }
    /// Weight lost to truncation, 1 - sum |c_n|^2, for states that are
    /// normalized before truncation.
    double truncation_loss() const { return 1.0 - amplitudes.squaredNorm(); }
    bool cutoff_adequate(double tol = 1e-10) const { return truncation_loss() < tol; }
};

/// Coherent-state expansion c_n = e^{-|b|^2/2} b^n / sqrt(n!).
FockVector coherent_fock(cplx beta, int cutoff);

/// Closed-form coherent overlap <bra|ket> = exp(-|bra-ket|^2/2 + i Im(bra* ket)).
cplx overlap(cplx bra, cplx ket);

struct DensityMatrix {
    Eigen::MatrixXcd entries;
    int cutoff = 0;
    // set when a channel pushed weight against the truncation boundary
    bool truncation_warning = false;

    static DensityMatrix zero(int cutoff);

    int dim() const { return cutoff + 1; }
    double hermiticity_residual() const;
    double trace_deviation() const { return std::abs(entries.trace() - cplx(1.0)); }
    double min_eigenvalue() const;
    /// Population of the top `levels` photon-number states; a proxy for how
    /// much of the state presses against the cutoff.
    double boundary_population(int levels = 2) const;
};

/// Weighted superposition of pairwise-distinct coherent amplitudes.
struct CoherentSuperposition {
    struct Term {
        cplx weight;
        cplx amplitude;
    };
    std::vector<Term> terms;
    bool normalized = false;

    /// Gram norm sum_{k,l} w_k w_l* <b_l|b_k>; equals 1 for normalized states.
    cplx gram_norm() const;
    /// Largest mean photon number over the branches, |b_k|^2.
    double max_mean_photons() const;
    void validate() const;

    static CoherentSuperposition coherent(cplx beta);
    static CoherentSuperposition even_cat(cplx beta);
    static CoherentSuperposition odd_cat(cplx beta);
    /// Rescales the weights so the state is normalized.
    static CoherentSuperposition normalized_from(std::vector<Term> terms);
};

DensityMatrix superposition_density(const CoherentSuperposition& state, int cutoff);
DensityMatrix thermal_density(double nbar, int cutoff);
/// Single-photon-added thermal state a^dag rho_th a / (1+nbar); vacuum
/// population is exactly zero.
DensityMatrix spats_density(double nbar, int cutoff);

/// Husimi function <a|rho|a>/pi; the exact oracle for analytic smoothing.
double husimi_fock(const DensityMatrix& rho, cplx alpha);

/// D(g) rho D(g)^dag with D from the truncated matrix exponential of
/// g a^dag - g* a. Truncation pressure is surfaced via truncation_warning.
DensityMatrix displace(const DensityMatrix& rho, cplx gamma);

/// Pure-loss channel with transmissivity tau (binomial photon subtraction).
DensityMatrix loss_channel(const DensityMatrix& rho, double tau);

/// a -> -a; maps coherent amplitudes to their negatives.
DensityMatrix phase_flip(const DensityMatrix& rho);

double fidelity(const Eigen::VectorXcd& psi, const Eigen::VectorXcd& phi);
double fidelity(const FockVector& psi, const FockVector& phi);

}  // namespace quasiphase
