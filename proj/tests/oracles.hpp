// Test-side oracles, kept independent of the library's evaluation paths.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "quasiphase/quadrature.hpp"
#include "quasiphase/types.hpp"

namespace oracles {

using quasiphase::cplx;

// (sin u / u)^2 by direct series summation of sin^2 u = sum (-1)^{k+1} 2^{2k-1} u^{2k} / (2k)!
inline cplx sinc2_series(cplx u) {
    cplx sum = 0.0;
    cplx power = 1.0;  // u^{2k-2}
    double factorial = 2.0;  // (2k)!
    double two_pow = 2.0;    // 2^{2k-1}
    double sign = 1.0;
    for (int k = 1; k <= 40; ++k) {
        sum += sign * two_pow / factorial * power;
        power *= u * u;
        two_pow *= 4.0;
        factorial *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
        sign = -sign;
    }
    return sum;
}

// Characteristic-function route for the sinc^2-regularized interference term:
// P^K(a) = (1/pi^2) Int_{[-w,w]^2} du dv e^{g* a - g a*} <bra|ket> e^{g bra* - g* ket}
//          (1-|u|/w)(1-|v|/w),   g = u + iv,
// integrated with composite Gauss-Legendre split at the triangle kink.
inline cplx quad_regularized_sinc2(cplx ket, cplx bra, double w, cplx alpha, int order = 96) {
    const quasiphase::QuadRule rule = quasiphase::gauss_legendre(order);
    const cplx ov = std::exp(cplx(-0.5 * std::norm(bra - ket), std::imag(std::conj(bra) * ket)));
    const double halves[2][2] = {{-w, 0.0}, {0.0, w}};
    cplx total = 0.0;
    for (const auto& hu : halves) {
        for (const auto& hv : halves) {
            for (size_t i = 0; i < rule.nodes.size(); ++i) {
                const double u = 0.5 * (hu[1] - hu[0]) * rule.nodes[i] + 0.5 * (hu[0] + hu[1]);
                const double wu = 0.5 * (hu[1] - hu[0]) * rule.weights[i];
                for (size_t j = 0; j < rule.nodes.size(); ++j) {
                    const double v = 0.5 * (hv[1] - hv[0]) * rule.nodes[j] + 0.5 * (hv[0] + hv[1]);
                    const double wv = 0.5 * (hv[1] - hv[0]) * rule.weights[j];
                    const cplx g(u, v);
                    const cplx phase = std::exp(std::conj(g) * alpha - g * std::conj(alpha) +
                                                g * std::conj(bra) - std::conj(g) * ket);
                    total += wu * wv * phase * (1.0 - std::abs(u) / w) * (1.0 - std::abs(v) / w);
                }
            }
        }
    }
    return ov * total / (quasiphase::kPi * quasiphase::kPi);
}

// Extended-precision direct evaluation of the sinc^2-regularized term; the
// long-double range covers products whose factors overflow in double.
inline cplx longdouble_regularized_sinc2(cplx ket, cplx bra, double w, cplx alpha) {
    using cld = std::complex<long double>;
    const cld ketl(ket.real(), ket.imag());
    const cld bral(bra.real(), bra.imag());
    const cld pref = std::exp(cld(-0.5L * std::norm(bral - ketl), std::imag(std::conj(bral) * ketl)));
    const cld c_re = 0.5L * (ketl + std::conj(bral));
    const cld c_im = (ketl - std::conj(bral)) / cld(0.0L, 2.0L);
    auto sinc2 = [](cld u) {
        if (std::abs(u) < 1e-8L) return cld(1.0L);
        cld r = std::sin(u) / u;
        return r * r;
    };
    const long double wl = w;
    const cld value = pref * (wl * wl / (3.14159265358979323846L * 3.14159265358979323846L)) *
                      sinc2(wl * (cld(alpha.real()) - c_re)) * sinc2(wl * (cld(alpha.imag()) - c_im));
    return {static_cast<double>(value.real()), static_cast<double>(value.imag())};
}

// Small deterministic generator for property tests.
struct Rand {
    uint64_t state;
    explicit Rand(uint64_t seed) : state(seed) {}
    double uniform() {
        state += 0x9E3779B97F4A7C15ULL;
        uint64_t x = state;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        x ^= x >> 31;
        return (x >> 11) * 0x1.0p-53;
    }
    double range(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    cplx complex_in(double radius) { return {range(-radius, radius), range(-radius, radius)}; }
};

// O(n^2 m^2) direct convolution for small grids.
template <typename Kernel>
quasiphase::RealGrid direct_convolve(const quasiphase::RealGrid& f, Kernel kernel) {
    quasiphase::RealGrid out(f.re_axis, f.im_axis);
    for (int iy = 0; iy < f.im_axis.count; ++iy) {
        for (int ix = 0; ix < f.re_axis.count; ++ix) {
            double acc = 0.0;
            for (int jy = 0; jy < f.im_axis.count; ++jy)
                for (int jx = 0; jx < f.re_axis.count; ++jx)
                    acc += f.at(jy, jx) * kernel(f.point(iy, ix) - f.point(jy, jx));
            out.at(iy, ix) = acc * f.cell_area();
        }
    }
    return out;
}

}  // namespace oracles
