#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "roughsig/errors.hpp"
#include "roughsig/path.hpp"

namespace roughsig {

// Two-parameter map on a grid with values in R^wdim, stored densely for
// i <= j.
struct TwoParameterMap {
    std::vector<double> times;
    int wdim = 0;
    std::vector<std::vector<double>> vals; // index tri(i,j)

    std::size_t tri(std::size_t i, std::size_t j) const {
        const std::size_t n = times.size();
        if (j < i || j >= n) throw InputError("two-parameter index out of range");
        // row i starts after i rows of lengths n, n-1, ...
        return i * n - i * (i - 1) / 2 + (j - i);
    }

    const std::vector<double>& at(std::size_t i, std::size_t j) const {
        return vals[tri(i, j)];
    }

    static TwoParameterMap from_function(
        std::vector<double> times, int wdim,
        const std::function<std::vector<double>(std::size_t, std::size_t)>& fn) {
        TwoParameterMap m;
        m.times = std::move(times);
        m.wdim = wdim;
        const std::size_t n = m.times.size();
        m.vals.resize(n * (n + 1) / 2);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                auto v = fn(i, j);
                if (static_cast<int>(v.size()) != wdim)
                    throw InputError("two-parameter value has wrong dimension");
                m.vals[m.tri(i, j)] = std::move(v);
            }
        return m;
    }
};

// Riemann summation over the finest partition: the grid sewing map.
// xi(t_j) = sum_{i<j} Xi_{t_i, t_{i+1}}, xi(t_0) = 0.
inline PathSamples sew(const TwoParameterMap& xi) {
    const std::size_t n = xi.times.size();
    if (n < 2) throw InputError("sew needs at least two grid points");
    PathSamples out;
    out.times = xi.times;
    out.values.assign(n, std::vector<double>(static_cast<std::size_t>(xi.wdim), 0.0));
    for (std::size_t j = 1; j < n; ++j) {
        const auto& step = xi.at(j - 1, j);
        for (int c = 0; c < xi.wdim; ++c)
            out.values[j][static_cast<std::size_t>(c)] =
                out.values[j - 1][static_cast<std::size_t>(c)] + step[static_cast<std::size_t>(c)];
    }
    return out;
}

// max over grid triples of |Xi_{s,t} - Xi_{s,u} - Xi_{u,t}|; zero means Xi is
// additive and sew reproduces it exactly.
inline double sew_defect(const TwoParameterMap& xi) {
    const std::size_t n = xi.times.size();
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = i + 1; k < n; ++k)
            for (std::size_t j = k + 1; j < n; ++j) {
                const auto& a = xi.at(i, j);
                const auto& b = xi.at(i, k);
                const auto& c = xi.at(k, j);
                double s = 0.0;
                for (int m = 0; m < xi.wdim; ++m) {
                    double d = a[static_cast<std::size_t>(m)] - b[static_cast<std::size_t>(m)] -
                               c[static_cast<std::size_t>(m)];
                    s += d * d;
                }
                worst = std::max(worst, std::sqrt(s));
            }
    return worst;
}

// Path of linear maps L(R^xdim -> R^rows), one matrix per grid point,
// row-major storage.
struct MatrixPath {
    std::vector<double> times;
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<double>> mats;
};

inline MatrixPath scalar_matrix_path(const PathSamples& y) {
    if (y.dim() != 1) throw InputError("scalar_matrix_path needs a 1-d path");
    MatrixPath m;
    m.times = y.times;
    m.rows = 1;
    m.cols = 1;
    m.mats = y.values;
    return m;
}

// Young integral of Y against X: local model Xi_{s,t} = Y_s X_{s,t}, summed
// over the finest partition of the union grid. Valid when the variation
// exponents satisfy 1/p + 1/q > 1.
inline PathSamples young_integral(const MatrixPath& y, const PathSamples& x) {
    if (x.dim() != y.cols) throw InputError("young_integral: dimension mismatch");
    std::vector<double> grid = union_grid(y.times, x.times);
    const std::size_t n = grid.size();
    PathSamples xx;
    xx.times = x.times;
    xx.values = x.values;
    PathSamples out;
    out.times = grid;
    out.values.assign(n, std::vector<double>(static_cast<std::size_t>(y.rows), 0.0));

    // linear interpolation of the matrix path onto the union grid
    PathSamples ypath;
    ypath.times = y.times;
    ypath.values = y.mats;

    std::vector<double> prev_x = eval_linear(xx, grid[0]);
    std::vector<double> y_here = eval_linear(ypath, grid[0]);
    for (std::size_t j = 1; j < n; ++j) {
        std::vector<double> cur_x = eval_linear(xx, grid[j]);
        for (int r = 0; r < y.rows; ++r) {
            double acc = 0.0;
            for (int c = 0; c < y.cols; ++c)
                acc += y_here[static_cast<std::size_t>(r * y.cols + c)] *
                       (cur_x[static_cast<std::size_t>(c)] - prev_x[static_cast<std::size_t>(c)]);
            out.values[j][static_cast<std::size_t>(r)] =
                out.values[j - 1][static_cast<std::size_t>(r)] + acc;
        }
        prev_x = std::move(cur_x);
        y_here = eval_linear(ypath, grid[j]);
    }
    return out;
}

} // namespace roughsig
