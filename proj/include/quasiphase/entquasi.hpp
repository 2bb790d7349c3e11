#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <utility>
#include <vector>

#include "quasiphase/types.hpp"

namespace quasiphase {

/// Labels of the single-qubit Pauli eigenstates, in table order.
inline constexpr std::array<const char*, 6> kPauliLabels{"x+", "x-", "y+", "y-", "z+", "z-"};

/// Validated two-qubit density matrix.
struct TwoQubitState {
    Eigen::Matrix4cd rho;

    void validate() const;  // Hermitian, unit trace, eigenvalues >= -1e-10

    static TwoQubitState singlet();
    static TwoQubitState werner(double p);
    /// |a><a| (x) |b><b| for indices into kPauliLabels.
    static TwoQubitState product(int a, int b);
};

/// All 36 projectors |a><a| (x) |b><b| over Pauli eigenstates, row-major in
/// (a, b).
std::array<Eigen::Matrix4cd, 36> pauli_product_basis();

enum class EntSolveMode { nnls_first, min_norm };

/// Signed weights over the 36 separable projectors plus the Frobenius
/// reconstruction error of sum P(a,b) |ab><ab| against the input state.
struct EntQuasiTable {
    Eigen::Matrix<double, 6, 6> values;
    double residual = 0.0;

    double sum() const { return values.sum(); }
};

/// nnls_first: nonnegative least squares; if the state is not exactly
/// representable with nonnegative weights (residual > 1e-8), fall back to the
/// minimum-Euclidean-norm signed solution of the underdetermined linear
/// system with the sum-to-one constraint appended.
EntQuasiTable ent_quasiprob(const TwoQubitState& state, EntSolveMode mode = EntSolveMode::nnls_first);

struct NegativityReport {
    double total_negativity = 0.0;
    std::vector<std::pair<int, int>> negative_cells;  // (a, b) indices below -1e-10
};

/// Refuses tables whose residual exceeds 1e-8 (they do not represent the
/// state they were solved for).
NegativityReport negativity_report(const EntQuasiTable& table);

/// Lawson-Hanson nonnegative least squares; exposed for direct testing.
Eigen::VectorXd nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, double tol = 1e-12,
                     int max_iterations = 10000);

}  // namespace quasiphase
