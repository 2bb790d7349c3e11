#include "quasiphase/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace quasiphase {

namespace {

// Golub-Welsch: nodes are eigenvalues of the Jacobi matrix, weights come from
// the first component of each eigenvector scaled by the zeroth moment.
QuadRule from_jacobi(const Eigen::VectorXd& offdiag, double moment0) {
    const int n = static_cast<int>(offdiag.size()) + 1;
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i + 1 < n; ++i) {
        jacobi(i, i + 1) = offdiag(i);
        jacobi(i + 1, i) = offdiag(i);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
    QuadRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = solver.eigenvalues()(i);
        double v0 = solver.eigenvectors()(0, i);
        rule.weights[i] = moment0 * v0 * v0;
    }
    return rule;
}

}  // namespace

QuadRule gauss_legendre(int order) {
    if (order < 1) throw std::invalid_argument("quadrature order must be >= 1");
    Eigen::VectorXd off(order - 1);
    for (int k = 1; k < order; ++k) off(k - 1) = k / std::sqrt(4.0 * k * k - 1.0);
    return from_jacobi(off, 2.0);
}

QuadRule gauss_hermite(int order) {
    if (order < 1) throw std::invalid_argument("quadrature order must be >= 1");
    Eigen::VectorXd off(order - 1);
    for (int k = 1; k < order; ++k) off(k - 1) = std::sqrt(k / 2.0);
    return from_jacobi(off, std::sqrt(M_PI));
}

double gl_integrate(double a, double b, int panels, const QuadRule& rule,
                    const std::function<double(double)>& f) {
    if (panels < 1) throw std::invalid_argument("need at least one panel");
    const double width = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * width;
        const double mid = lo + 0.5 * width;
        double part = 0.0;
        for (size_t i = 0; i < rule.nodes.size(); ++i)
            part += rule.weights[i] * f(mid + 0.5 * width * rule.nodes[i]);
        total += 0.5 * width * part;
    }
    return total;
}

}  // namespace quasiphase
