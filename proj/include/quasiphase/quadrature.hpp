#pragma once

#include <functional>
#include <vector>

namespace quasiphase {

struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Legendre rule on [-1, 1].
QuadRule gauss_legendre(int order);

// Gauss-Hermite rule for the weight e^{-x^2} on the real line.
QuadRule gauss_hermite(int order);

// Composite Gauss-Legendre integration of f over [a, b] split into `panels`
// equal panels.
double gl_integrate(double a, double b, int panels, const QuadRule& rule,
                    const std::function<double(double)>& f);

}  // namespace quasiphase
