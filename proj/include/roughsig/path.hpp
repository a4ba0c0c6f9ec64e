#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "roughsig/errors.hpp"

namespace roughsig {

// A path sampled on a strictly increasing time grid; values[i] is the point
// in R^dim at times[i].
struct PathSamples {
    std::vector<double> times;
    std::vector<std::vector<double>> values;

    std::size_t size() const { return times.size(); }
    int dim() const { return values.empty() ? 0 : static_cast<int>(values[0].size()); }

    void validate() const {
        if (times.size() != values.size())
            throw InputError("times/values length mismatch");
        if (times.size() < 2) throw InputError("path needs at least two samples");
        const std::size_t d = values[0].size();
        if (d == 0) throw InputError("path values must be nonempty");
        for (std::size_t i = 0; i < times.size(); ++i) {
            if (values[i].size() != d)
                throw InputError("ragged path row", static_cast<long>(i));
            if (i > 0 && !(times[i] > times[i - 1]))
                throw InputError("times not strictly increasing", static_cast<long>(i));
        }
    }
};

inline std::vector<double> uniform_times(std::size_t n_points, double t0 = 0.0,
                                         double t1 = 1.0) {
    std::vector<double> t(n_points);
    for (std::size_t i = 0; i < n_points; ++i)
        t[i] = t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(n_points - 1);
    return t;
}

inline PathSamples linear_path(const std::vector<double>& from,
                               const std::vector<double>& to, std::size_t n_points = 2,
                               double t0 = 0.0, double t1 = 1.0) {
    PathSamples p;
    p.times = uniform_times(n_points, t0, t1);
    p.values.resize(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        double a = static_cast<double>(i) / static_cast<double>(n_points - 1);
        std::vector<double> v(from.size());
        for (std::size_t c = 0; c < from.size(); ++c)
            v[c] = from[c] + a * (to[c] - from[c]);
        p.values[i] = std::move(v);
    }
    return p;
}

// Concatenation in the path sense: y's increments are replayed from x's
// endpoint, with y's grid shifted to start at x's final time.
inline PathSamples concat(const PathSamples& x, const PathSamples& y) {
    if (x.dim() != y.dim()) throw InputError("concat: dimension mismatch");
    PathSamples out = x;
    const auto& xe = x.values.back();
    double t_end = x.times.back();
    for (std::size_t i = 1; i < y.size(); ++i) {
        out.times.push_back(t_end + (y.times[i] - y.times[0]));
        std::vector<double> v(xe.size());
        for (std::size_t c = 0; c < xe.size(); ++c)
            v[c] = xe[c] + (y.values[i][c] - y.values[0][c]);
        out.values.push_back(std::move(v));
    }
    return out;
}

// Time reversal on the same grid span.
inline PathSamples reverse(const PathSamples& x) {
    PathSamples out;
    const std::size_t n = x.size();
    double t0 = x.times.front(), t1 = x.times.back();
    out.times.resize(n);
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.times[i] = t0 + (t1 - x.times[n - 1 - i]);
        out.values[i] = x.values[n - 1 - i];
    }
    return out;
}

// Piecewise-linear evaluation at an arbitrary time inside the grid span.
inline std::vector<double> eval_linear(const PathSamples& x, double t) {
    const auto& ts = x.times;
    if (t <= ts.front()) return x.values.front();
    if (t >= ts.back()) return x.values.back();
    auto it = std::upper_bound(ts.begin(), ts.end(), t);
    std::size_t j = static_cast<std::size_t>(it - ts.begin());
    std::size_t i = j - 1;
    double a = (t - ts[i]) / (ts[j] - ts[i]);
    std::vector<double> v(x.values[i].size());
    for (std::size_t c = 0; c < v.size(); ++c)
        v[c] = x.values[i][c] + a * (x.values[j][c] - x.values[i][c]);
    return v;
}

inline std::vector<double> union_grid(const std::vector<double>& a,
                                      const std::vector<double>& b) {
    std::vector<double> out;
    out.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline PathSamples resample_linear(const PathSamples& x, const std::vector<double>& times) {
    PathSamples out;
    out.times = times;
    out.values.reserve(times.size());
    for (double t : times) out.values.push_back(eval_linear(x, t));
    return out;
}

} // namespace roughsig
