#include "quasiphase/fock.hpp"

#include <cmath>

namespace quasiphase {

int recommended_cutoff(double mean_photons) {
    if (mean_photons < 0) throw std::invalid_argument("mean photon number must be >= 0");
    return static_cast<int>(std::ceil(mean_photons + 8.0 * std::sqrt(mean_photons + 1.0)));
}

FockVector coherent_fock(cplx beta, int cutoff) {
    if (cutoff < 0) throw std::invalid_argument("cutoff must be >= 0");
    if (!std::isfinite(beta.real()) || !std::isfinite(beta.imag()))
        throw std::invalid_argument("coherent amplitude must be finite");
    FockVector v;
    v.cutoff = cutoff;
    v.amplitudes.resize(cutoff + 1);
    cplx c = std::exp(-0.5 * std::norm(beta));
    v.amplitudes(0) = c;
    for (int n = 1; n <= cutoff; ++n) {
        c *= beta / std::sqrt(static_cast<double>(n));
        v.amplitudes(n) = c;
    }
    return v;
}

cplx overlap(cplx bra, cplx ket) {
    if (!std::isfinite(bra.real()) || !std::isfinite(bra.imag()) || !std::isfinite(ket.real()) ||
        !std::isfinite(ket.imag()))
        throw std::invalid_argument("overlap arguments must be finite");
    cplx cross = std::conj(bra) * ket;
    return std::exp(cplx(-0.5 * std::norm(bra - ket), cross.imag()));
}

DensityMatrix DensityMatrix::zero(int cutoff) {
    DensityMatrix m;
    m.cutoff = cutoff;
    m.entries = Eigen::MatrixXcd::Zero(cutoff + 1, cutoff + 1);
    return m;
}

double DensityMatrix::hermiticity_residual() const {
    return (entries - entries.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(0.5 * (entries + entries.adjoint()));
    return solver.eigenvalues().minCoeff();
}

double DensityMatrix::boundary_population(int levels) const {
    double pop = 0.0;
    for (int n = std::max(0, dim() - levels); n < dim(); ++n) pop += entries(n, n).real();
    return pop;
}

cplx CoherentSuperposition::gram_norm() const {
    cplx total = 0.0;
    for (const Term& k : terms)
        for (const Term& l : terms)
            total += k.weight * std::conj(l.weight) * overlap(l.amplitude, k.amplitude);
    return total;
}

double CoherentSuperposition::max_mean_photons() const {
    double mu = 0.0;
    for (const Term& t : terms) mu = std::max(mu, std::norm(t.amplitude));
    return mu;
}

void CoherentSuperposition::validate() const {
    if (terms.empty()) throw std::invalid_argument("superposition needs at least one term");
    for (size_t i = 0; i < terms.size(); ++i) {
        for (size_t j = i + 1; j < terms.size(); ++j) {
            if (std::abs(terms[i].amplitude - terms[j].amplitude) < 1e-12)
                throw std::invalid_argument("coherent amplitudes must be pairwise distinct");
        }
    }
    if (normalized && std::abs(gram_norm() - cplx(1.0)) > 1e-12)
        throw std::invalid_argument("state flagged normalized but gram norm differs from 1");
}

CoherentSuperposition CoherentSuperposition::coherent(cplx beta) {
    CoherentSuperposition s;
    s.terms = {{cplx(1.0), beta}};
    s.normalized = true;
    s.validate();
    return s;
}

CoherentSuperposition CoherentSuperposition::even_cat(cplx beta) {
    double lambda = 1.0 / std::sqrt(2.0 * (1.0 + std::exp(-2.0 * std::norm(beta))));
    CoherentSuperposition s;
    s.terms = {{cplx(lambda), beta}, {cplx(lambda), -beta}};
    s.normalized = true;
    s.validate();
    return s;
}

CoherentSuperposition CoherentSuperposition::odd_cat(cplx beta) {
    double lambda = 1.0 / std::sqrt(2.0 * (1.0 - std::exp(-2.0 * std::norm(beta))));
    CoherentSuperposition s;
    s.terms = {{cplx(lambda), beta}, {cplx(-lambda), -beta}};
    s.normalized = true;
    s.validate();
    return s;
}

CoherentSuperposition CoherentSuperposition::normalized_from(std::vector<Term> terms) {
    CoherentSuperposition s;
    s.terms = std::move(terms);
    s.normalized = false;
    s.validate();
    double scale = std::sqrt(s.gram_norm().real());
    if (!(scale > 0)) throw std::invalid_argument("cannot normalize a null superposition");
    for (Term& t : s.terms) t.weight /= scale;
    s.normalized = true;
    s.validate();
    return s;
}

DensityMatrix superposition_density(const CoherentSuperposition& state, int cutoff) {
    state.validate();
    if (!state.normalized) throw std::invalid_argument("superposition_density needs a normalized state");
    DensityMatrix rho = DensityMatrix::zero(cutoff);
    std::vector<Eigen::VectorXcd> kets;
    kets.reserve(state.terms.size());
    for (const auto& t : state.terms) kets.push_back(coherent_fock(t.amplitude, cutoff).amplitudes);
    for (size_t k = 0; k < state.terms.size(); ++k)
        for (size_t l = 0; l < state.terms.size(); ++l)
            rho.entries +=
                state.terms[k].weight * std::conj(state.terms[l].weight) * kets[k] * kets[l].adjoint();
    return rho;
}

DensityMatrix thermal_density(double nbar, int cutoff) {
    if (!(nbar > 0)) throw std::invalid_argument("thermal mean photon number must be > 0");
    DensityMatrix rho = DensityMatrix::zero(cutoff);
    double p = 1.0 / (1.0 + nbar);
    double ratio = nbar / (1.0 + nbar);
    for (int n = 0; n <= cutoff; ++n) {
        rho.entries(n, n) = p;
        p *= ratio;
    }
    return rho;
}

DensityMatrix spats_density(double nbar, int cutoff) {
    if (!(nbar > 0)) throw std::invalid_argument("mean photon number must be > 0");
    DensityMatrix rho = DensityMatrix::zero(cutoff);
    // a^dag rho_th a lifts the thermal weight t_{n-1} to level n with factor n
    double t_prev = 1.0 / (1.0 + nbar);
    for (int n = 1; n <= cutoff; ++n) {
        rho.entries(n, n) = n * t_prev / (1.0 + nbar);
        t_prev *= nbar / (1.0 + nbar);
    }
    return rho;
}

double husimi_fock(const DensityMatrix& rho, cplx alpha) {
    Eigen::VectorXcd ket = coherent_fock(alpha, rho.cutoff).amplitudes;
    cplx val = ket.adjoint() * rho.entries * ket;
    return val.real() / kPi;
}

DensityMatrix displace(const DensityMatrix& rho, cplx gamma) {
    const int dim = rho.dim();
    // H = -i (g a^dag - g* a) is Hermitian; D = exp(iH)
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) {
        cplx up = gamma * std::sqrt(static_cast<double>(n));  // <n| g a^dag |n-1>
        h(n, n - 1) = cplx(0, -1) * up;
        h(n - 1, n) = std::conj(h(n, n - 1));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
    Eigen::VectorXcd phases(dim);
    for (int i = 0; i < dim; ++i) phases(i) = std::exp(cplx(0, solver.eigenvalues()(i)));
    Eigen::MatrixXcd d =
        solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
    DensityMatrix out;
    out.cutoff = rho.cutoff;
    out.entries = d * rho.entries * d.adjoint();
    out.truncation_warning = out.boundary_population() > 1e-8;
    return out;
}

DensityMatrix loss_channel(const DensityMatrix& rho, double tau) {
    if (!(tau >= 0.0 && tau <= 1.0)) throw std::invalid_argument("transmissivity must lie in [0,1]");
    const int dim = rho.dim();
    DensityMatrix out = DensityMatrix::zero(rho.cutoff);
    out.truncation_warning = rho.truncation_warning;
    if (tau == 1.0) {
        out.entries = rho.entries;
        return out;
    }
    // Kraus K_k = sum_n sqrt(C(n,k) (1-tau)^k tau^(n-k)) |n-k><n|
    std::vector<double> log_fact(dim, 0.0);
    for (int n = 1; n < dim; ++n) log_fact[n] = log_fact[n - 1] + std::log(static_cast<double>(n));
    const double log_loss = std::log1p(-tau);
    const double log_tau = tau > 0 ? std::log(tau) : 0.0;
    Eigen::MatrixXd kraus = Eigen::MatrixXd::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) {
        kraus.setZero();
        for (int n = k; n < dim; ++n) {
            double log_c = log_fact[n] - log_fact[k] - log_fact[n - k];
            double amp2 = log_c + k * log_loss + (tau > 0 ? (n - k) * log_tau : 0.0);
            if (tau == 0.0 && n != k) continue;
            kraus(n - k, n) = std::exp(0.5 * amp2);
        }
        out.entries += kraus * rho.entries * kraus.transpose();
    }
    return out;
}

DensityMatrix phase_flip(const DensityMatrix& rho) {
    DensityMatrix out = rho;
    for (int m = 0; m < rho.dim(); ++m)
        for (int n = 0; n < rho.dim(); ++n)
            if ((m + n) % 2 == 1) out.entries(m, n) = -out.entries(m, n);
    return out;
}

double fidelity(const Eigen::VectorXcd& psi, const Eigen::VectorXcd& phi) {
    if (psi.size() != phi.size()) throw std::invalid_argument("fidelity needs matching shapes");
    return std::norm(cplx(psi.adjoint() * phi));
}

double fidelity(const FockVector& psi, const FockVector& phi) {
    return fidelity(psi.amplitudes, phi.amplitudes);
}

}  // namespace quasiphase
