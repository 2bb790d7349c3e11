#include "quasiphase/convolution.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>

namespace quasiphase {

namespace {

struct FftBuffer {
    std::vector<cplx> data;
    explicit FftBuffer(size_t n) : data(n) {}
    fftw_complex* raw() { return reinterpret_cast<fftw_complex*>(data.data()); }
};

void fft2(std::vector<cplx>& values, int rows, int cols, int sign) {
    fftw_plan plan = fftw_plan_dft_2d(rows, cols, reinterpret_cast<fftw_complex*>(values.data()),
                                      reinterpret_cast<fftw_complex*>(values.data()), sign,
                                      FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
}

void check_finite(const ComplexGrid& f) {
    for (const cplx& v : f.values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("grid values must be finite");
}

// Kernel sampled on the padded grid in circular layout (offset 0 at index 0,
// negative offsets wrapped), including the cell-area factor so the frequency
// product approximates the continuous transform.
std::vector<cplx> padded_kernel(const ComplexGrid& f, const KernelSpec& kernel, int pad_rows,
                                int pad_cols) {
    const double dx = f.re_axis.spacing();
    const double dy = f.im_axis.spacing();
    std::vector<cplx> k(static_cast<size_t>(pad_rows) * pad_cols, cplx(0.0));
    for (int jy = -f.im_axis.count; jy < f.im_axis.count; ++jy) {
        int row = (jy + pad_rows) % pad_rows;
        for (int jx = -f.re_axis.count; jx < f.re_axis.count; ++jx) {
            int col = (jx + pad_cols) % pad_cols;
            k[static_cast<size_t>(row) * pad_cols + col] =
                kernel.value(cplx(jx * dx, jy * dy)) * dx * dy;
        }
    }
    return k;
}

ComplexGrid transform_with_kernel(const ComplexGrid& f, const KernelSpec& kernel, bool inverse,
                                  double cutoff_eps) {
    check_finite(f);
    const int rows = f.im_axis.count;
    const int cols = f.re_axis.count;
    const int pad_rows = 2 * rows;
    const int pad_cols = 2 * cols;
    const size_t padded = static_cast<size_t>(pad_rows) * pad_cols;

    std::vector<cplx> fpad(padded, cplx(0.0));
    for (int iy = 0; iy < rows; ++iy)
        for (int ix = 0; ix < cols; ++ix)
            fpad[static_cast<size_t>(iy) * pad_cols + ix] = f.at(iy, ix);
    std::vector<cplx> kpad = padded_kernel(f, kernel, pad_rows, pad_cols);

    fft2(fpad, pad_rows, pad_cols, FFTW_FORWARD);
    fft2(kpad, pad_rows, pad_cols, FFTW_FORWARD);
    if (!inverse) {
        for (size_t i = 0; i < padded; ++i) fpad[i] *= kpad[i];
    } else {
        for (size_t i = 0; i < padded; ++i)
            fpad[i] = std::abs(kpad[i]) < cutoff_eps ? cplx(0.0) : fpad[i] / kpad[i];
    }
    fft2(fpad, pad_rows, pad_cols, FFTW_BACKWARD);

    ComplexGrid out(f.re_axis, f.im_axis);
    const double scale = 1.0 / static_cast<double>(padded);
    for (int iy = 0; iy < rows; ++iy)
        for (int ix = 0; ix < cols; ++ix)
            out.at(iy, ix) = fpad[static_cast<size_t>(iy) * pad_cols + ix] * scale;
    return out;
}

RealGrid real_part(const ComplexGrid& g) {
    RealGrid out(g.re_axis, g.im_axis);
    for (size_t i = 0; i < g.values.size(); ++i) out.values[i] = g.values[i].real();
    return out;
}

ComplexGrid complexify(const RealGrid& g) {
    ComplexGrid out(g.re_axis, g.im_axis);
    for (size_t i = 0; i < g.values.size(); ++i) out.values[i] = g.values[i];
    return out;
}

}  // namespace

ComplexGrid convolve(const ComplexGrid& f, const KernelSpec& kernel) {
    return transform_with_kernel(f, kernel, false, 0.0);
}

RealGrid convolve(const RealGrid& f, const KernelSpec& kernel) {
    return real_part(convolve(complexify(f), kernel));
}

ComplexGrid deconvolve(const ComplexGrid& f, const KernelSpec& kernel, double cutoff_eps) {
    if (kernel.kind == KernelSpec::Kind::sinc2)
        throw std::invalid_argument(
            "sinc^2 kernel transform has compact support; exact inversion is impossible");
    if (!(cutoff_eps > 0.0 && cutoff_eps <= 1.0))
        throw std::invalid_argument("cutoff_eps must lie in (0, 1]");
    return transform_with_kernel(f, kernel, true, cutoff_eps);
}

RealGrid deconvolve(const RealGrid& f, const KernelSpec& kernel, double cutoff_eps) {
    return real_part(deconvolve(complexify(f), kernel, cutoff_eps));
}

}  // namespace quasiphase
