#include "quasiphase/entquasi.hpp"

#include <cmath>

namespace quasiphase {

namespace {

std::array<Eigen::Vector2cd, 6> pauli_eigenstates() {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    std::array<Eigen::Vector2cd, 6> kets;
    kets[0] << inv_sqrt2, inv_sqrt2;              // x+
    kets[1] << inv_sqrt2, -inv_sqrt2;             // x-
    kets[2] << inv_sqrt2, cplx(0, inv_sqrt2);     // y+
    kets[3] << inv_sqrt2, cplx(0, -inv_sqrt2);    // y-
    kets[4] << 1, 0;                              // z+
    kets[5] << 0, 1;                              // z-
    return kets;
}

// Real parametrization of a Hermitian 4x4 matrix, scaled so the Euclidean
// norm of the vector equals the Frobenius norm of the matrix.
Eigen::Matrix<double, 16, 1> hermitian_params(const Eigen::Matrix4cd& m) {
    Eigen::Matrix<double, 16, 1> out;
    int idx = 0;
    for (int i = 0; i < 4; ++i) out(idx++) = m(i, i).real();
    const double sqrt2 = std::sqrt(2.0);
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            out(idx++) = sqrt2 * m(i, j).real();
            out(idx++) = sqrt2 * m(i, j).imag();
        }
    }
    return out;
}

Eigen::MatrixXd constraint_matrix() {
    const auto basis = pauli_product_basis();
    Eigen::MatrixXd a(17, 36);
    for (int col = 0; col < 36; ++col) {
        a.block<16, 1>(0, col) = hermitian_params(basis[col]);
        a(16, col) = 1.0;
    }
    return a;
}

Eigen::Matrix4cd reconstruct(const Eigen::VectorXd& weights) {
    const auto basis = pauli_product_basis();
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    for (int i = 0; i < 36; ++i) rho += weights(i) * basis[i];
    return rho;
}

}  // namespace

void TwoQubitState::validate() const {
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("two-qubit state must be Hermitian");
    if (std::abs(rho.trace() - cplx(1.0)) > 1e-10)
        throw std::invalid_argument("two-qubit state must have unit trace");
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(rho);
    if (solver.eigenvalues().minCoeff() < -1e-10)
        throw std::invalid_argument("two-qubit state must be positive semidefinite");
}

TwoQubitState TwoQubitState::singlet() {
    Eigen::Vector4cd psi;
    psi << 0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0;
    TwoQubitState s;
    s.rho = psi * psi.adjoint();
    return s;
}

TwoQubitState TwoQubitState::werner(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("mixing parameter must lie in [0,1]");
    TwoQubitState s;
    s.rho = p * singlet().rho + (1.0 - p) * 0.25 * Eigen::Matrix4cd::Identity();
    return s;
}

TwoQubitState TwoQubitState::product(int a, int b) {
    if (a < 0 || a >= 6 || b < 0 || b >= 6) throw std::invalid_argument("basis index out of range");
    TwoQubitState s;
    s.rho = pauli_product_basis()[a * 6 + b];
    return s;
}

std::array<Eigen::Matrix4cd, 36> pauli_product_basis() {
    const auto kets = pauli_eigenstates();
    std::array<Eigen::Matrix4cd, 36> basis;
    for (int a = 0; a < 6; ++a) {
        const Eigen::Matrix2cd pa = kets[a] * kets[a].adjoint();
        for (int b = 0; b < 6; ++b) {
            const Eigen::Matrix2cd pb = kets[b] * kets[b].adjoint();
            Eigen::Matrix4cd prod;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) prod.block<2, 2>(2 * i, 2 * j) = pa(i, j) * pb;
            basis[a * 6 + b] = prod;
        }
    }
    return basis;
}

Eigen::VectorXd nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, double tol,
                     int max_iterations) {
    const int n = static_cast<int>(a.cols());
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    std::vector<bool> active(n, true);
    Eigen::VectorXd residual = b;

    for (int iter = 0; iter < max_iterations; ++iter) {
        const Eigen::VectorXd gradient = a.transpose() * residual;
        int best = -1;
        double best_grad = tol;
        for (int j = 0; j < n; ++j) {
            if (active[j] && gradient(j) > best_grad) {
                best_grad = gradient(j);
                best = j;
            }
        }
        if (best < 0) break;
        active[best] = false;

        // inner loop: least squares on the passive set, stepping back when a
        // coefficient would cross zero
        while (true) {
            std::vector<int> passive;
            for (int j = 0; j < n; ++j)
                if (!active[j]) passive.push_back(j);
            if (passive.empty()) {
                x.setZero();
                break;
            }
            Eigen::MatrixXd ap(a.rows(), passive.size());
            for (size_t c = 0; c < passive.size(); ++c) ap.col(c) = a.col(passive[c]);
            const Eigen::VectorXd zp = ap.colPivHouseholderQr().solve(b);

            bool feasible = true;
            double step = 1.0;
            for (size_t c = 0; c < passive.size(); ++c) {
                if (zp(c) <= tol) {
                    feasible = false;
                    const double xi = x(passive[c]);
                    if (xi - zp(c) > 0) step = std::min(step, xi / (xi - zp(c)));
                }
            }
            if (feasible) {
                x.setZero();
                for (size_t c = 0; c < passive.size(); ++c) x(passive[c]) = zp(c);
                break;
            }
            for (size_t c = 0; c < passive.size(); ++c) {
                const int j = passive[c];
                x(j) += step * (zp(c) - x(j));
                if (x(j) <= tol) {
                    x(j) = 0.0;
                    active[j] = true;
                }
            }
        }
        residual = b - a * x;
    }
    return x;
}

EntQuasiTable ent_quasiprob(const TwoQubitState& state, EntSolveMode mode) {
    state.validate();
    const Eigen::MatrixXd a = constraint_matrix();
    Eigen::VectorXd b(17);
    b.head<16>() = hermitian_params(state.rho);
    b(16) = 1.0;

    Eigen::VectorXd weights;
    if (mode == EntSolveMode::nnls_first) {
        weights = nnls(a, b);
        const double residual = (reconstruct(weights) - state.rho).norm();
        if (residual > 1e-8) mode = EntSolveMode::min_norm;
        else {
            EntQuasiTable table;
            table.residual = residual;
            for (int i = 0; i < 6; ++i)
                for (int j = 0; j < 6; ++j) table.values(i, j) = weights(i * 6 + j);
            return table;
        }
    }
    // minimum-norm signed solution of the consistent underdetermined system
    weights = a.completeOrthogonalDecomposition().solve(b);
    EntQuasiTable table;
    table.residual = (reconstruct(weights) - state.rho).norm();
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) table.values(i, j) = weights(i * 6 + j);
    return table;
}

NegativityReport negativity_report(const EntQuasiTable& table) {
    if (table.residual > 1e-8)
        throw std::invalid_argument(
            "table residual too large: weights do not represent the state");
    NegativityReport report;
    for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 6; ++j) {
            const double v = table.values(i, j);
            if (v < 0.0) report.total_negativity += -v;
            if (v < -1e-10) report.negative_cells.emplace_back(i, j);
        }
    }
    return report;
}

}  // namespace quasiphase
