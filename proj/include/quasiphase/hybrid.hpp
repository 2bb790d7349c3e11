#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "quasiphase/phasespace.hpp"
#include "quasiphase/types.hpp"

namespace quasiphase {

/// 2x2 matrix of regularized phase-space functions for the hybrid state
/// (|b>|0> + |-b>|1>)/sqrt(2): rows/columns follow the qubit basis, entries
/// are the smoothed distributions of |±b><±b| without the state's 1/2 weight
/// (semidefiniteness verdicts are scale-invariant).
Eigen::Matrix2cd hybrid_matrix(cplx beta, const KernelSpec& kernel, cplx alpha);

struct MinEigResult {
    cplx alpha_star;
    double lambda_min = 0.0;
};

/// Pointwise minimum eigenvalue of the Hermitian 2x2 matrix over the grid.
/// zero_offdiag drops the interference entries (classical-mixture baseline).
MinEigResult min_eig_scan(cplx beta, const KernelSpec& kernel, const Axis& re, const Axis& im,
                          bool zero_offdiag = false);

/// Same scan, but also returns the full eigenvalue grid for plotting.
std::pair<RealGrid, MinEigResult> min_eig_grid(cplx beta, const KernelSpec& kernel, const Axis& re,
                                               const Axis& im, bool zero_offdiag = false);

/// Multimode phase-space expansion: each term is a coefficient times a
/// product of per-mode delta terms.
struct MultimodeStateP {
    struct Term {
        cplx coeff;
        std::vector<DeltaTerm> factors;
    };
    int mode_count = 0;
    std::vector<Term> terms;

    /// Three-mode cat (|b,b,b> - |-b,-b,-b>)/sqrt(2(1-e^{-6|b|^2})) expanded
    /// into its four product terms with signs (+, -, -, +).
    static MultimodeStateP tripartite_cat(cplx beta);

    cplx trace_mass() const;
    double hermitian_closure_residual() const;
    cplx eval(const KernelSpec& kernel, std::span<const cplx> alphas) const;
};

/// Regularized three-mode distribution of the tripartite cat; real within
/// 1e-10 by construction, enforced.
double tripartite_p(cplx beta, const KernelSpec& kernel, cplx a1, cplx a2, cplx a3);

/// Dense multimode photon-number tensor (dim = cutoff+1 per mode).
struct FockTensor {
    int modes = 0;
    int dim = 0;
    std::vector<cplx> amplitudes;

    double norm() const;
    size_t index(int n1, int n2, int n3) const {
        return (static_cast<size_t>(n1) * dim + n2) * dim + n3;
    }
};

/// Balanced three-mode splitting of an odd cat:
/// (|b,b,b> - |-b,-b,-b>)/sqrt(2(1-e^{-6|b|^2})). Rejects beta = 0 (singular
/// normalization); use w_state for that limit.
FockTensor tripartite_state(cplx beta, int cutoff);

/// Single-photon W state (|1,0,0> + |0,1,0> + |0,0,1>)/sqrt(3).
FockTensor w_state(int cutoff);

double fidelity(const FockTensor& a, const FockTensor& b);

struct GhzWLimits {
    double w_fidelity = 0.0;  // overlap with the W state at small amplitude
    double ghz_cross = 0.0;   // |<-b|b>|^3 orthogonality diagnostic at large amplitude
};

GhzWLimits ghz_w_limits(double beta_small, double beta_large, int cutoff);

}  // namespace quasiphase
