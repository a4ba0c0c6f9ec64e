#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "roughsig/errors.hpp"
#include "roughsig/path.hpp"

namespace roughsig {

// Exact sup over dissections with division points at the sample times:
// dp[j] = max_{i<j} dp[i] + cost(i, j), quadratic time, linear memory.
// cost must already carry the p-th power.
template <typename CostFn>
double dissection_sup(std::size_t n_points, CostFn cost) {
    if (n_points < 2) return 0.0;
    std::vector<double> dp(n_points, 0.0);
    for (std::size_t j = 1; j < n_points; ++j) {
        double best = 0.0;
        for (std::size_t i = 0; i < j; ++i) {
            double cand = dp[i] + cost(i, j);
            if (cand > best) best = cand;
        }
        dp[j] = best;
    }
    return dp[n_points - 1];
}

inline double euclidean_increment(const PathSamples& x, std::size_t i, std::size_t j) {
    double s = 0.0;
    for (std::size_t c = 0; c < x.values[i].size(); ++c) {
        double d = x.values[j][c] - x.values[i][c];
        s += d * d;
    }
    return std::sqrt(s);
}

inline double p_variation(const PathSamples& x, double p) {
    if (p < 1.0) throw InputError("p-variation needs p >= 1");
    x.validate();
    double sup = dissection_sup(x.size(), [&](std::size_t i, std::size_t j) {
        return std::pow(euclidean_increment(x, i, j), p);
    });
    return std::pow(sup, 1.0 / p);
}

// Superadditive interval function on the grid, stored as a dense upper
// triangle: w[i][j - i] = omega(t_i, t_j).
struct GridControl {
    std::vector<double> times;
    std::vector<std::vector<double>> w;

    double operator()(std::size_t i, std::size_t j) const {
        if (j < i) throw InputError("control query needs i <= j");
        return w[i][j - i];
    }
};

// Largest violation of omega(s,u) + omega(u,t) <= omega(s,t) over grid
// triples; <= 0 means superadditive.
inline double superadditivity_defect(const GridControl& c) {
    double worst = 0.0;
    const std::size_t n = c.times.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = i + 1; k < n; ++k)
            for (std::size_t j = k + 1; j < n; ++j)
                worst = std::max(worst, c(i, k) + c(k, j) - c(i, j));
    return worst;
}

// omega(s,t) = p-variation of x restricted to [s,t], raised to the p. One
// forward DP per starting index.
inline GridControl control_from_pvar(const PathSamples& x, double p) {
    if (p < 1.0) throw InputError("p-variation needs p >= 1");
    x.validate();
    const std::size_t n = x.size();
    GridControl c;
    c.times = x.times;
    c.w.resize(n);
    for (std::size_t s = 0; s < n; ++s) {
        c.w[s].assign(n - s, 0.0);
        std::vector<double> dp(n - s, 0.0);
        for (std::size_t j = s + 1; j < n; ++j) {
            double best = 0.0;
            for (std::size_t i = s; i < j; ++i) {
                double cand = dp[i - s] + std::pow(euclidean_increment(x, i, j), p);
                if (cand > best) best = cand;
            }
            dp[j - s] = best;
            c.w[s][j - s] = best;
        }
    }
    return c;
}

} // namespace roughsig
