#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace quasiphase {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Numerical-tolerance violations are kept distinct from usage errors so the
// CLI can map them to a dedicated exit code.
struct tolerance_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Uniformly spaced, inclusive sampling axis: points min, min+h, ..., max.
struct Axis {
    double min = 0.0;
    double max = 0.0;
    int count = 0;

    Axis() = default;
    Axis(double min_, double max_, int count_);

    double spacing() const { return (max - min) / (count - 1); }
    double at(int i) const { return min + i * spacing(); }
};

// Symmetric axis of given half-width, always containing 0 for odd counts.
Axis symmetric_axis(double radius, int count);

// Rectangular phase-space sampling, row-major with the imaginary axis as the
// outer (row) index.
template <typename T>
struct Grid2D {
    Axis re_axis;
    Axis im_axis;
    std::vector<T> values;

    Grid2D() = default;
    Grid2D(Axis re, Axis im)
        : re_axis(re), im_axis(im),
          values(static_cast<size_t>(re.count) * static_cast<size_t>(im.count)) {}

    T& at(int i_im, int i_re) { return values[static_cast<size_t>(i_im) * re_axis.count + i_re]; }
    const T& at(int i_im, int i_re) const {
        return values[static_cast<size_t>(i_im) * re_axis.count + i_re];
    }

    cplx point(int i_im, int i_re) const { return {re_axis.at(i_re), im_axis.at(i_im)}; }
    double cell_area() const { return re_axis.spacing() * im_axis.spacing(); }
    size_t size() const { return values.size(); }
};

using RealGrid = Grid2D<double>;
using ComplexGrid = Grid2D<cplx>;

// Midpoint-rule mass: fixed row-major summation order, then one multiply by
// the cell area, so results are identical run to run.
template <typename T>
T integrate(const Grid2D<T>& g) {
    T sum{};
    for (const T& v : g.values) sum += v;
    return sum * g.cell_area();
}

// Worker cap for row-parallel scans; honors QUASIPHASE_THREADS.
int max_threads();

// Evaluates f over the grid, rows distributed across threads. Each row is
// written independently, so the result does not depend on scheduling.
RealGrid eval_grid(const Axis& re, const Axis& im, const std::function<double(cplx)>& f);
ComplexGrid eval_grid_complex(const Axis& re, const Axis& im, const std::function<cplx(cplx)>& f);

}  // namespace quasiphase
