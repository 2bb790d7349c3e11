#include "quasiphase/phasespace.hpp"

#include <cmath>

#include "quasiphase/quadrature.hpp"

namespace quasiphase {

namespace {

constexpr double kPi2 = kPi * kPi;
// Separation threshold beyond which prefactor and kernel factors are paired
// in log space; each factor alone would under/overflow.
constexpr double kLogSpaceSeparation = 100.0;

cplx log_sin(cplx u) {
    const double y = u.imag();
    const cplx i(0.0, 1.0);
    if (std::abs(y) <= 20.0) return std::log(std::sin(u));
    // sin u = e^{-iu}(e^{2iu} - 1)/(2i) for large positive Im u, and the
    // mirrored form below; any branch of log works since only exp(total) is used.
    if (y > 0.0) return -i * u + std::log(cplx(0.0, 0.5)) + std::log(cplx(1.0) - std::exp(2.0 * i * u));
    return i * u - std::log(cplx(0.0, 2.0)) + std::log(cplx(1.0) - std::exp(-2.0 * i * u));
}

cplx log_sinc2(cplx u) { return 2.0 * (log_sin(u) - std::log(u)); }

cplx log_prefactor(cplx ket, cplx bra) {
    cplx cross = std::conj(bra) * ket;
    return cplx(-0.5 * std::norm(bra - ket), cross.imag());
}

}  // namespace

KernelSpec KernelSpec::sinc2_kernel(double w) {
    if (!(w > 0)) throw std::invalid_argument("sinc^2 width must be > 0");
    KernelSpec k;
    k.kind = Kind::sinc2;
    k.w = w;
    return k;
}

KernelSpec KernelSpec::gaussian_kernel(double s) {
    if (!(s < 1)) throw std::invalid_argument("Gaussian order parameter must satisfy s < 1");
    KernelSpec k;
    k.kind = Kind::gaussian_s;
    k.s = s;
    return k;
}

double KernelSpec::value(cplx offset) const {
    if (kind == Kind::sinc2) {
        cplx v = (w * w / kPi2) * sinc2_complex(cplx(w * offset.real())) *
                 sinc2_complex(cplx(w * offset.imag()));
        return v.real();
    }
    return 2.0 / (kPi * (1.0 - s)) * std::exp(-2.0 * std::norm(offset) / (1.0 - s));
}

double KernelSpec::transform(cplx freq) const {
    const double u = freq.real();
    const double v = freq.imag();
    if (kind == Kind::sinc2) {
        double tu = std::max(0.0, 1.0 - std::abs(u) / w);
        double tv = std::max(0.0, 1.0 - std::abs(v) / w);
        return tu * tv;
    }
    return std::exp(-0.25 * (1.0 - s) * (u * u + v * v));
}

DeltaTerm interference_term(cplx ket, cplx bra) {
    DeltaTerm t;
    t.ket = ket;
    t.bra = bra;
    t.prefactor = overlap(bra, ket);
    t.support_re = 0.5 * (ket + std::conj(bra));
    t.support_im = (ket - std::conj(bra)) / cplx(0.0, 2.0);
    return t;
}

cplx characteristic_fn(cplx ket, cplx bra, cplx freq) {
    return overlap(bra, ket) * std::exp(freq * std::conj(bra) - std::conj(freq) * ket);
}

cplx sinc2_complex(cplx u) {
    const double a2 = std::norm(u);
    if (a2 < 1e-6) {
        // 6-term Taylor series of (sin u / u)^2; direct evaluation cancels
        // near the removable singularity.
        const cplx u2 = u * u;
        cplx acc = cplx(-2.0 / 467775.0);
        acc = acc * u2 + cplx(2.0 / 14175.0);
        acc = acc * u2 + cplx(-1.0 / 315.0);
        acc = acc * u2 + cplx(2.0 / 45.0);
        acc = acc * u2 + cplx(-1.0 / 3.0);
        return acc * u2 + cplx(1.0);
    }
    cplx r = std::sin(u) / u;
    return r * r;
}

cplx regularized_delta(const DeltaTerm& term, const KernelSpec& kernel, cplx alpha) {
    const cplx d_re = cplx(alpha.real()) - term.support_re;
    const cplx d_im = cplx(alpha.imag()) - term.support_im;
    const bool log_space = std::norm(term.ket - term.bra) > kLogSpaceSeparation;

    if (kernel.kind == KernelSpec::Kind::sinc2) {
        const double w = kernel.w;
        if (!log_space)
            return term.prefactor * (w * w / kPi2) * sinc2_complex(w * d_re) * sinc2_complex(w * d_im);
        cplx total = log_prefactor(term.ket, term.bra) + std::log(w * w / kPi2);
        total += log_sinc2(w * d_re) + log_sinc2(w * d_im);
        return std::exp(total);
    }

    const double s = kernel.s;
    const cplx expo = -2.0 * (d_re * d_re + d_im * d_im) / (1.0 - s);
    if (!log_space) return term.prefactor * 2.0 / (kPi * (1.0 - s)) * std::exp(expo);
    return std::exp(log_prefactor(term.ket, term.bra) + std::log(2.0 / (kPi * (1.0 - s))) + expo);
}

StateP StateP::from_superposition(const CoherentSuperposition& state) {
    state.validate();
    StateP p;
    for (const auto& k : state.terms)
        for (const auto& l : state.terms)
            p.terms.push_back({k.weight * std::conj(l.weight),
                               interference_term(k.amplitude, l.amplitude)});
    return p;
}

StateP StateP::thermal(double nbar) {
    if (!(nbar > 0)) throw std::invalid_argument("thermal mean photon number must be > 0");
    StateP p;
    p.smooth.push_back({1.0, nbar, false});
    return p;
}

StateP StateP::spats(double nbar) {
    if (!(nbar > 0)) throw std::invalid_argument("mean photon number must be > 0");
    StateP p;
    p.smooth.push_back({1.0, nbar, true});
    return p;
}

cplx StateP::trace_mass() const {
    cplx mass = 0.0;
    for (const auto& t : terms) mass += t.coeff * t.term.prefactor;
    for (const auto& s : smooth) mass += s.weight;
    return mass;
}

double StateP::hermitian_closure_residual() const {
    double residual = 0.0;
    for (const auto& t : terms) {
        cplx partner = 0.0;
        for (const auto& u : terms) {
            if (std::abs(u.term.ket - t.term.bra) < 1e-12 &&
                std::abs(u.term.bra - t.term.ket) < 1e-12)
                partner += u.coeff;
        }
        residual = std::max(residual, std::abs(partner - std::conj(t.coeff)));
    }
    return residual;
}

cplx state_p_eval(const StateP& state, const KernelSpec& kernel, cplx alpha) {
    cplx total = 0.0;
    for (const auto& t : state.terms) total += t.coeff * regularized_delta(t.term, kernel, alpha);
    for (const auto& s : state.smooth) {
        if (kernel.kind == KernelSpec::Kind::sinc2) {
            total += s.weight * (s.photon_added ? spats_p_sinc2(s.nbar, kernel.w, alpha)
                                                : thermal_p_sinc2(s.nbar, kernel.w, alpha));
        } else {
            total += s.weight * (s.photon_added ? spats_p_gauss(s.nbar, kernel.s, alpha)
                                                : thermal_p_gauss(s.nbar, kernel.s, alpha));
        }
    }
    return total;
}

double state_p_regularized(const StateP& state, const KernelSpec& kernel, cplx alpha) {
    cplx value = state_p_eval(state, kernel, alpha);
    if (std::abs(value.imag()) > 1e-10)
        throw tolerance_error("imaginary residual above 1e-10: state is not Hermitian-closed");
    return value.real();
}

double spats_p(double nbar, cplx alpha) {
    if (!(nbar > 0)) throw std::invalid_argument("mean photon number must be > 0");
    const double a2 = std::norm(alpha);
    return ((1.0 + nbar) * a2 - nbar) * std::exp(-a2 / nbar) / (kPi * nbar * nbar * nbar);
}

double thermal_p(double nbar, cplx alpha) {
    if (!(nbar > 0)) throw std::invalid_argument("thermal mean photon number must be > 0");
    return std::exp(-std::norm(alpha) / nbar) / (kPi * nbar);
}

double s_param_state(const StateP& state, double s, cplx alpha) {
    return state_p_regularized(state, KernelSpec::gaussian_kernel(s), alpha);
}

double thermal_p_gauss(double nbar, double s, cplx alpha) {
    // Gaussian closure: smoothing widens the thermal Gaussian by (1-s)/2
    return thermal_p(nbar + 0.5 * (1.0 - s), alpha);
}

double spats_p_gauss(double nbar, double s, cplx alpha) {
    if (!(nbar > 0)) throw std::invalid_argument("mean photon number must be > 0");
    const double b = 0.5 * (1.0 - s);
    const double total = nbar + b;
    const double mu2 = std::norm(alpha) * nbar * nbar / (total * total);
    const double c = nbar * b / total;
    const double g = std::exp(-std::norm(alpha) / total) / (kPi * total);
    return g * (((1.0 + nbar) / (nbar * nbar)) * (mu2 + c) - 1.0 / nbar);
}

namespace {

// 1-D smoothing of Gaussian-type factors by the sinc^2 kernel, evaluated in
// the frequency domain where the kernel transform is a compactly supported
// triangle. `second_moment` selects the x^2-weighted Gaussian factor.
double sinc2_axis_profile(double x, double nbar, double w, bool second_moment) {
    static thread_local QuadRule rule = gauss_legendre(24);
    const int panels = std::max(8, static_cast<int>(std::ceil(2.0 * w * std::max(1.0, std::abs(x)) / kPi)));
    auto integrand = [&](double k) {
        double tri = 1.0 - k / (2.0 * w);
        double gauss = std::exp(-0.25 * nbar * k * k);
        double weight = second_moment ? (0.5 * nbar - 0.25 * nbar * nbar * k * k) : 1.0;
        return tri * gauss * weight * std::cos(k * x);
    };
    return gl_integrate(0.0, 2.0 * w, panels, rule, integrand) / kPi;
}

}  // namespace

double thermal_p_sinc2(double nbar, double w, cplx alpha) {
    if (!(nbar > 0)) throw std::invalid_argument("thermal mean photon number must be > 0");
    return sinc2_axis_profile(alpha.real(), nbar, w, false) *
           sinc2_axis_profile(alpha.imag(), nbar, w, false);
}

double spats_p_sinc2(double nbar, double w, cplx alpha) {
    if (!(nbar > 0)) throw std::invalid_argument("mean photon number must be > 0");
    const double ix = sinc2_axis_profile(alpha.real(), nbar, w, false);
    const double iy = sinc2_axis_profile(alpha.imag(), nbar, w, false);
    const double jx = sinc2_axis_profile(alpha.real(), nbar, w, true);
    const double jy = sinc2_axis_profile(alpha.imag(), nbar, w, true);
    return ((1.0 + nbar) / (nbar * nbar)) * (jx * iy + ix * jy) - ix * iy / nbar;
}

}  // namespace quasiphase
