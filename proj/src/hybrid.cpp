#include "quasiphase/hybrid.hpp"

#include <array>
#include <cmath>

namespace quasiphase {

Eigen::Matrix2cd hybrid_matrix(cplx beta, const KernelSpec& kernel, cplx alpha) {
    const std::array<cplx, 2> amps{beta, -beta};
    Eigen::Matrix2cd m;
    for (int row = 0; row < 2; ++row)
        for (int col = 0; col < 2; ++col)
            m(row, col) = regularized_delta(interference_term(amps[row], amps[col]), kernel, alpha);
    return m;
}

namespace {

double min_eig_2x2(const Eigen::Matrix2cd& m) {
    // closed form for the Hermitian part
    const double a = m(0, 0).real();
    const double d = m(1, 1).real();
    const cplx b = 0.5 * (m(0, 1) + std::conj(m(1, 0)));
    const double tr = a + d;
    const double det = a * d - std::norm(b);
    return 0.5 * (tr - std::sqrt(std::max(0.0, tr * tr - 4.0 * det)));
}

}  // namespace

std::pair<RealGrid, MinEigResult> min_eig_grid(cplx beta, const KernelSpec& kernel, const Axis& re,
                                               const Axis& im, bool zero_offdiag) {
    RealGrid grid = eval_grid(re, im, [&](cplx alpha) {
        Eigen::Matrix2cd m = hybrid_matrix(beta, kernel, alpha);
        if (zero_offdiag) {
            m(0, 1) = 0.0;
            m(1, 0) = 0.0;
        }
        return min_eig_2x2(m);
    });
    MinEigResult best;
    best.lambda_min = std::numeric_limits<double>::infinity();
    for (int iy = 0; iy < im.count; ++iy) {
        for (int ix = 0; ix < re.count; ++ix) {
            if (grid.at(iy, ix) < best.lambda_min) {
                best.lambda_min = grid.at(iy, ix);
                best.alpha_star = grid.point(iy, ix);
            }
        }
    }
    return {std::move(grid), best};
}

MinEigResult min_eig_scan(cplx beta, const KernelSpec& kernel, const Axis& re, const Axis& im,
                          bool zero_offdiag) {
    return min_eig_grid(beta, kernel, re, im, zero_offdiag).second;
}

MultimodeStateP MultimodeStateP::tripartite_cat(cplx beta) {
    if (std::abs(beta) < 1e-12)
        throw std::invalid_argument("tripartite cat undefined at beta = 0; use w_state");
    const double norm = 2.0 * (1.0 - std::exp(-6.0 * std::norm(beta)));
    MultimodeStateP p;
    p.mode_count = 3;
    const std::array<std::pair<cplx, cplx>, 4> pairs{{
        {beta, beta},    // |b><b| per mode
        {-beta, -beta},  // |-b><-b|
        {beta, -beta},   // |b><-b|, sign from expanding the projector
        {-beta, beta},
    }};
    const std::array<double, 4> signs{1.0, 1.0, -1.0, -1.0};
    for (int termidx = 0; termidx < 4; ++termidx) {
        Term t;
        t.coeff = signs[termidx] / norm;
        for (int mode = 0; mode < 3; ++mode)
            t.factors.push_back(interference_term(pairs[termidx].first, pairs[termidx].second));
        p.terms.push_back(std::move(t));
    }
    return p;
}

cplx MultimodeStateP::trace_mass() const {
    cplx mass = 0.0;
    for (const auto& t : terms) {
        cplx prod = t.coeff;
        for (const auto& f : t.factors) prod *= f.prefactor;
        mass += prod;
    }
    return mass;
}

double MultimodeStateP::hermitian_closure_residual() const {
    double residual = 0.0;
    for (const auto& t : terms) {
        cplx partner = 0.0;
        for (const auto& u : terms) {
            bool conjugate = u.factors.size() == t.factors.size();
            for (size_t m = 0; conjugate && m < t.factors.size(); ++m)
                conjugate = std::abs(u.factors[m].ket - t.factors[m].bra) < 1e-12 &&
                            std::abs(u.factors[m].bra - t.factors[m].ket) < 1e-12;
            if (conjugate) partner += u.coeff;
        }
        residual = std::max(residual, std::abs(partner - std::conj(t.coeff)));
    }
    return residual;
}

cplx MultimodeStateP::eval(const KernelSpec& kernel, std::span<const cplx> alphas) const {
    if (static_cast<int>(alphas.size()) != mode_count)
        throw std::invalid_argument("argument count must match mode count");
    cplx total = 0.0;
    for (const auto& t : terms) {
        cplx prod = t.coeff;
        for (size_t m = 0; m < t.factors.size(); ++m)
            prod *= regularized_delta(t.factors[m], kernel, alphas[m]);
        total += prod;
    }
    return total;
}

double tripartite_p(cplx beta, const KernelSpec& kernel, cplx a1, cplx a2, cplx a3) {
    const MultimodeStateP state = MultimodeStateP::tripartite_cat(beta);
    const std::array<cplx, 3> alphas{a1, a2, a3};
    const cplx value = state.eval(kernel, alphas);
    if (std::abs(value.imag()) > 1e-10)
        throw tolerance_error("imaginary residual above 1e-10 in tripartite distribution");
    return value.real();
}

double FockTensor::norm() const {
    double n2 = 0.0;
    for (const cplx& a : amplitudes) n2 += std::norm(a);
    return std::sqrt(n2);
}

FockTensor tripartite_state(cplx beta, int cutoff) {
    if (std::abs(beta) < 1e-12)
        throw std::invalid_argument("normalization singular at beta = 0; use w_state");
    FockTensor t;
    t.modes = 3;
    t.dim = cutoff + 1;
    t.amplitudes.assign(static_cast<size_t>(t.dim) * t.dim * t.dim, cplx(0.0));
    const Eigen::VectorXcd plus = coherent_fock(beta, cutoff).amplitudes;
    const Eigen::VectorXcd minus = coherent_fock(-beta, cutoff).amplitudes;
    const double norm = std::sqrt(2.0 * (1.0 - std::exp(-6.0 * std::norm(beta))));
    for (int n1 = 0; n1 < t.dim; ++n1)
        for (int n2 = 0; n2 < t.dim; ++n2)
            for (int n3 = 0; n3 < t.dim; ++n3)
                t.amplitudes[t.index(n1, n2, n3)] =
                    (plus(n1) * plus(n2) * plus(n3) - minus(n1) * minus(n2) * minus(n3)) / norm;
    return t;
}

FockTensor w_state(int cutoff) {
    if (cutoff < 1) throw std::invalid_argument("W state needs cutoff >= 1");
    FockTensor t;
    t.modes = 3;
    t.dim = cutoff + 1;
    t.amplitudes.assign(static_cast<size_t>(t.dim) * t.dim * t.dim, cplx(0.0));
    const double amp = 1.0 / std::sqrt(3.0);
    t.amplitudes[t.index(1, 0, 0)] = amp;
    t.amplitudes[t.index(0, 1, 0)] = amp;
    t.amplitudes[t.index(0, 0, 1)] = amp;
    return t;
}

double fidelity(const FockTensor& a, const FockTensor& b) {
    if (a.modes != b.modes || a.dim != b.dim)
        throw std::invalid_argument("fidelity needs matching shapes");
    cplx inner = 0.0;
    for (size_t i = 0; i < a.amplitudes.size(); ++i)
        inner += std::conj(a.amplitudes[i]) * b.amplitudes[i];
    return std::norm(inner);
}

GhzWLimits ghz_w_limits(double beta_small, double beta_large, int cutoff) {
    if (!(beta_small > 0.0 && beta_small < beta_large))
        throw std::invalid_argument("need 0 < beta_small < beta_large");
    GhzWLimits out;
    out.w_fidelity = fidelity(tripartite_state(beta_small, cutoff), w_state(cutoff));
    out.ghz_cross = std::exp(-6.0 * beta_large * beta_large);
    return out;
}

}  // namespace quasiphase
