#include "quasiphase/types.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>

namespace quasiphase {

Axis::Axis(double min_, double max_, int count_) : min(min_), max(max_), count(count_) {
    if (count < 2) throw std::invalid_argument("axis needs at least 2 points");
    if (!(min < max)) throw std::invalid_argument("axis bounds inverted or degenerate");
    if (!std::isfinite(min) || !std::isfinite(max))
        throw std::invalid_argument("axis bounds must be finite");
}

Axis symmetric_axis(double radius, int count) { return Axis(-radius, radius, count); }

int max_threads() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    if (const char* env = std::getenv("QUASIPHASE_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1) hw = std::min(hw, cap);
    }
    return hw;
}

namespace {

template <typename T, typename F>
Grid2D<T> eval_grid_impl(const Axis& re, const Axis& im, const F& f) {
    Grid2D<T> grid(re, im);
    const int rows = im.count;
    const int threads = std::min(max_threads(), rows);

    auto run_rows = [&](int row_begin, int row_end) {
        for (int iy = row_begin; iy < row_end; ++iy) {
            const double y = im.at(iy);
            for (int ix = 0; ix < re.count; ++ix) grid.at(iy, ix) = f(cplx(re.at(ix), y));
        }
    };

    if (threads <= 1) {
        run_rows(0, rows);
        return grid;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    const int chunk = (rows + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        int begin = t * chunk;
        int end = std::min(rows, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back(run_rows, begin, end);
    }
    for (auto& th : pool) th.join();
    return grid;
}

}  // namespace

RealGrid eval_grid(const Axis& re, const Axis& im, const std::function<double(cplx)>& f) {
    return eval_grid_impl<double>(re, im, f);
}

ComplexGrid eval_grid_complex(const Axis& re, const Axis& im, const std::function<cplx(cplx)>& f) {
    return eval_grid_impl<cplx>(re, im, f);
}

}  // namespace quasiphase
