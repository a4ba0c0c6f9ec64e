#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "roughsig/errors.hpp"
#include "roughsig/path.hpp"
#include "roughsig/pvar.hpp"
#include "roughsig/tensor.hpp"

namespace roughsig {

// Signature of a single linear segment with increment v: exp of the degree-1
// embedding, computed directly as v^{tensor k} / k!.
inline TruncatedTensor exp_segment(const std::vector<double>& v, int level,
                                   int level_cap = kDefaultLevelCap) {
    const int d = static_cast<int>(v.size());
    TruncatedTensor out = TruncatedTensor::unit(d, level, level_cap);
    for (int k = 1; k <= level; ++k) {
        const auto& prev = out.levels[static_cast<std::size_t>(k - 1)];
        auto& cur = out.levels[static_cast<std::size_t>(k)];
        const double inv_k = 1.0 / static_cast<double>(k);
        for (std::size_t i = 0; i < prev.size(); ++i) {
            const double c = prev[i] * inv_k;
            for (int a = 0; a < d; ++a)
                cur[i * static_cast<std::size_t>(d) + static_cast<std::size_t>(a)] =
                    c * v[static_cast<std::size_t>(a)];
        }
    }
    return out;
}

// Rough path stored as the running trajectory g_i = X_{t_0, t_i} of group
// elements. Increments X_{s,t} = g_s^{-1} g_t satisfy Chen's identity by
// construction.
struct RoughPathGrid {
    int dim = 0;
    int level = 0;
    std::vector<double> times;
    std::vector<TruncatedTensor> g;

    std::size_t size() const { return times.size(); }

    TruncatedTensor increment(std::size_t i, std::size_t j) const {
        if (j < i) throw InputError("increment needs i <= j");
        return tensor_mul(group_inverse(g[i]), g[j]);
    }

    // Degree-1 trajectory as plain samples (relative to the start point).
    PathSamples level1_path() const {
        PathSamples p;
        p.times = times;
        p.values.reserve(times.size());
        for (const auto& t : g) p.values.push_back(t.levels.size() > 1 ? t.levels[1]
                                                                       : std::vector<double>{});
        return p;
    }
};

// Canonical lift of a piecewise-linear path: products of segment
// exponentials. Exact iterated integrals of the interpolated path.
inline RoughPathGrid lift_piecewise_linear(const PathSamples& x, int level,
                                           int level_cap = kDefaultLevelCap) {
    x.validate();
    check_tensor_shape(x.dim(), level, level_cap);
    RoughPathGrid rp;
    rp.dim = x.dim();
    rp.level = level;
    rp.times = x.times;
    rp.g.reserve(x.size());
    rp.g.push_back(TruncatedTensor::unit(rp.dim, level, level_cap));
    const std::size_t d = static_cast<std::size_t>(rp.dim);
    for (std::size_t i = 1; i < x.size(); ++i) {
        std::vector<double> delta(d);
        for (std::size_t c = 0; c < d; ++c)
            delta[c] = x.values[i][c] - x.values[i - 1][c];
        rp.g.push_back(tensor_mul(rp.g.back(), exp_segment(delta, level, level_cap)));
    }
    return rp;
}

// max over grid triples of |X_{s,u} X_{u,t} - X_{s,t}|. For trajectory
// storage this measures round-off only; it is the honest check for
// externally supplied increment tables.
inline double chen_defect(const RoughPathGrid& rp) {
    const std::size_t n = rp.size();
    std::vector<TruncatedTensor> inv;
    inv.reserve(n);
    for (const auto& t : rp.g) inv.push_back(group_inverse(t));
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = i + 1; k < n; ++k)
            for (std::size_t j = k + 1; j < n; ++j) {
                TruncatedTensor a = tensor_mul(inv[i], rp.g[k]);
                TruncatedTensor b = tensor_mul(inv[k], rp.g[j]);
                TruncatedTensor c = tensor_mul(inv[i], rp.g[j]);
                worst = std::max(worst, tensor_norm(tensor_mul(a, b) - c));
            }
    return worst;
}

// Read-only table of increments X_{t_i, t_j}, for diagnosing data produced
// elsewhere.
struct IncrementTable {
    std::vector<double> times;
    std::vector<TruncatedTensor> incs; // dense upper triangle, i <= j

    std::size_t tri(std::size_t i, std::size_t j) const {
        const std::size_t n = times.size();
        if (j < i || j >= n) throw InputError("increment index out of range");
        return i * n - i * (i - 1) / 2 + (j - i);
    }
    const TruncatedTensor& at(std::size_t i, std::size_t j) const { return incs[tri(i, j)]; }
};

inline double chen_defect(const IncrementTable& table) {
    const std::size_t n = table.times.size();
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = i + 1; k < n; ++k)
            for (std::size_t j = k + 1; j < n; ++j)
                worst = std::max(worst,
                                 tensor_norm(tensor_mul(table.at(i, k), table.at(k, j)) -
                                             table.at(i, j)));
    return worst;
}

namespace detail {

inline std::vector<TruncatedTensor> all_inverses(const RoughPathGrid& rp) {
    std::vector<TruncatedTensor> inv;
    inv.reserve(rp.size());
    for (const auto& t : rp.g) inv.push_back(group_inverse(t));
    return inv;
}

} // namespace detail

// Grid p-variation of the rough path: sup over dissections of
// sum max_k |X^k_{u,v}|^{p/k}, reported as the 1/p power.
inline double rough_pvar(const RoughPathGrid& rp, double p) {
    if (p < 1.0) throw InputError("rough p-variation needs p >= 1");
    auto inv = detail::all_inverses(rp);
    double sup = dissection_sup(rp.size(), [&](std::size_t i, std::size_t j) {
        TruncatedTensor z = tensor_mul(inv[i], rp.g[j]);
        double worst = 0.0;
        for (int k = 1; k <= rp.level; ++k)
            worst = std::max(worst, std::pow(level_norm(z, k), p / k));
        return worst;
    });
    return std::pow(sup, 1.0 / p);
}

// Control table omega(t_i, t_j) built from the same quantity, one DP per
// starting index.
inline GridControl rough_control(const RoughPathGrid& rp, double p) {
    if (p < 1.0) throw InputError("rough p-variation needs p >= 1");
    auto inv = detail::all_inverses(rp);
    const std::size_t n = rp.size();
    auto cost = [&](std::size_t i, std::size_t j) {
        TruncatedTensor z = tensor_mul(inv[i], rp.g[j]);
        double worst = 0.0;
        for (int k = 1; k <= rp.level; ++k)
            worst = std::max(worst, std::pow(level_norm(z, k), p / k));
        return worst;
    };
    GridControl c;
    c.times = rp.times;
    c.w.resize(n);
    for (std::size_t s = 0; s < n; ++s) {
        c.w[s].assign(n - s, 0.0);
        std::vector<double> dp(n - s, 0.0);
        for (std::size_t j = s + 1; j < n; ++j) {
            double best = 0.0;
            for (std::size_t i = s; i < j; ++i) {
                double cand = dp[i - s] + cost(i, j);
                if (cand > best) best = cand;
            }
            dp[j - s] = best;
            c.w[s][j - s] = best;
        }
    }
    return c;
}

// Inhomogeneous p-variation distance: per level, sup over dissections of
// sum |X^k - Y^k|^{p/k}, then the k/p power, maxed over levels. The sup and
// the max over k commute, so each level gets its own DP.
inline double rough_distance(const RoughPathGrid& X, const RoughPathGrid& Y, double p) {
    if (X.dim != Y.dim || X.level != Y.level)
        throw InputError("rough_distance: shape mismatch");
    if (X.times != Y.times)
        throw InputError("rough_distance: paths must share a grid");
    auto invx = detail::all_inverses(X);
    auto invy = detail::all_inverses(Y);
    double worst = 0.0;
    for (int k = 1; k <= X.level; ++k) {
        double sup = dissection_sup(X.size(), [&](std::size_t i, std::size_t j) {
            TruncatedTensor a = tensor_mul(invx[i], X.g[j]);
            TruncatedTensor b = tensor_mul(invy[i], Y.g[j]);
            double s = 0.0;
            const auto& la = a.levels[static_cast<std::size_t>(k)];
            const auto& lb = b.levels[static_cast<std::size_t>(k)];
            for (std::size_t m = 0; m < la.size(); ++m) {
                double dd = la[m] - lb[m];
                s += dd * dd;
            }
            return std::pow(std::sqrt(s), p / k);
        });
        worst = std::max(worst, std::pow(sup, static_cast<double>(k) / p));
    }
    return worst;
}

enum class BrownianVariant { ito, stratonovich };

// Alias: a level-2 rough path is a RoughPathGrid with level == 2; the
// trajectory storage already encodes (1, X, XX) with exact Chen.
using Level2RoughPath = RoughPathGrid;

// Level-2 lift of sampled Brownian data. Per step, the Ito variant assigns
// zero area (left-point rule at sample resolution) and the Stratonovich
// variant assigns the piecewise-linear area delta x delta / 2.
inline Level2RoughPath brownian_lift(const PathSamples& w, BrownianVariant variant) {
    w.validate();
    const int d = w.dim();
    RoughPathGrid rp;
    rp.dim = d;
    rp.level = 2;
    rp.times = w.times;
    rp.g.reserve(w.size());
    rp.g.push_back(TruncatedTensor::unit(d, 2));
    for (std::size_t i = 1; i < w.size(); ++i) {
        std::vector<double> delta(static_cast<std::size_t>(d));
        for (int c = 0; c < d; ++c)
            delta[static_cast<std::size_t>(c)] =
                w.values[i][static_cast<std::size_t>(c)] - w.values[i - 1][static_cast<std::size_t>(c)];
        TruncatedTensor step = TruncatedTensor::unit(d, 2);
        step.levels[1] = delta;
        if (variant == BrownianVariant::stratonovich) {
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b)
                    step.levels[2][static_cast<std::size_t>(a * d + b)] =
                        0.5 * delta[static_cast<std::size_t>(a)] * delta[static_cast<std::size_t>(b)];
        }
        rp.g.push_back(tensor_mul(rp.g.back(), step));
    }
    return rp;
}

} // namespace roughsig
