#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "roughsig/rough_path.hpp"

namespace roughsig {

// Path controlled by a RoughPathGrid of level N: components l = 0..N-1,
// where comps[l][i] is a state_dim x d^(l+degree_offset) row-major matrix
// representing an element of L(V^{(x)(l+offset)}, W). Plain paths use offset
// 0; integrands of the rough integral use offset 1 so component l maps
// V^{(x)(l+1)} into W with the driver slot last.
struct ControlledPath {
    int dim = 0;
    int state_dim = 0;
    int degree = 0;
    int degree_offset = 0;
    std::vector<double> times;
    std::vector<std::vector<std::vector<double>>> comps;

    std::size_t size() const { return times.size(); }

    std::size_t comp_words(int l) const {
        return num_words(dim, l + degree_offset);
    }

    void validate() const {
        if (dim <= 0 || state_dim <= 0 || degree <= 0)
            throw InputError("controlled path has empty shape");
        if (degree_offset != 0 && degree_offset != 1)
            throw InputError("controlled path degree offset must be 0 or 1");
        if (comps.size() != static_cast<std::size_t>(degree))
            throw InputError("controlled path component count mismatch");
        for (int l = 0; l < degree; ++l) {
            const auto& c = comps[static_cast<std::size_t>(l)];
            if (c.size() != times.size())
                throw InputError("controlled path component grid mismatch");
            const std::size_t want = static_cast<std::size_t>(state_dim) * comp_words(l);
            for (const auto& m : c)
                if (m.size() != want)
                    throw InputError("controlled path component has wrong width");
        }
    }
};

inline ControlledPath zero_controlled(const RoughPathGrid& X, int state_dim,
                                      int degree_offset = 0) {
    ControlledPath y;
    y.dim = X.dim;
    y.state_dim = state_dim;
    y.degree = X.level;
    y.degree_offset = degree_offset;
    y.times = X.times;
    y.comps.resize(static_cast<std::size_t>(y.degree));
    for (int l = 0; l < y.degree; ++l)
        y.comps[static_cast<std::size_t>(l)].assign(
            y.times.size(),
            std::vector<double>(static_cast<std::size_t>(state_dim) * y.comp_words(l), 0.0));
    return y;
}

// An e-dimensional sample path as a degree-N controlled path with zero
// Gubinelli derivatives; in the Young regime N=1 this is the whole story.
inline ControlledPath controlled_from_path(const PathSamples& y, const RoughPathGrid& X) {
    if (y.size() != X.size()) throw InputError("controlled path grid mismatch");
    ControlledPath out = zero_controlled(X, static_cast<int>(y.dim()));
    for (std::size_t i = 0; i < y.size(); ++i) out.comps[0][i] = y.values[i];
    return out;
}

// Components of X itself as a path controlled by X: W = V^{(x)n} with
// Y^k_t = X^{n-k}_{0,t} acting by v -> X^{n-k}_{0,t} (x) v.
inline ControlledPath controlled_from_level(const RoughPathGrid& X, int n) {
    if (n < 1 || n > X.level) throw InputError("controlled_from_level needs 1 <= n <= level");
    const int d = X.dim;
    const std::size_t e = num_words(d, n);
    ControlledPath out = zero_controlled(X, static_cast<int>(e));
    for (int k = 0; k < out.degree && k <= n; ++k) {
        const std::size_t lead = num_words(d, n - k);
        const std::size_t wk = num_words(d, k);
        for (std::size_t i = 0; i < X.size(); ++i) {
            const auto& lvl = X.g[i].levels[static_cast<std::size_t>(n - k)];
            auto& m = out.comps[static_cast<std::size_t>(k)][i];
            for (std::size_t u = 0; u < lead; ++u)
                for (std::size_t w = 0; w < wk; ++w)
                    m[(u * wk + w) * wk + w] = lvl[u];
        }
    }
    return out;
}

namespace detail {

// Contract the leading |u| = lvl letters of each column word with the given
// tensor level: out[o, w] = sum_u mat[o, u.w] T[u].
inline std::vector<double> contract_leading(const std::vector<double>& mat,
                                            const std::vector<double>& tensor_level,
                                            std::size_t out_words) {
    const std::size_t lead = tensor_level.size();
    const std::size_t rows = mat.size() / (lead * out_words);
    std::vector<double> out(rows * out_words, 0.0);
    for (std::size_t o = 0; o < rows; ++o) {
        const std::size_t row = o * lead * out_words;
        for (std::size_t u = 0; u < lead; ++u) {
            const double c = tensor_level[u];
            if (c == 0.0) continue;
            const std::size_t base = row + u * out_words;
            for (std::size_t w = 0; w < out_words; ++w)
                out[o * out_words + w] += c * mat[base + w];
        }
    }
    return out;
}

inline double frob_norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

} // namespace detail

// R^l_{s,t} = Y^l_t - sum_{k=l}^{N-1} Y^k_s (X^{k-l}_{s,t} (x) .), the local
// expansion defect of component l over grid interval (i, j).
inline std::vector<double> controlled_remainder(const ControlledPath& Y,
                                                const TruncatedTensor& increment,
                                                int l, std::size_t i, std::size_t j) {
    const std::size_t ow = Y.comp_words(l);
    std::vector<double> r = Y.comps[static_cast<std::size_t>(l)][j];
    for (int k = l; k < Y.degree; ++k) {
        const auto& mat = Y.comps[static_cast<std::size_t>(k)][i];
        if (k == l) {
            for (std::size_t t = 0; t < r.size(); ++t) r[t] -= mat[t];
            continue;
        }
        auto part = detail::contract_leading(
            mat, increment.levels[static_cast<std::size_t>(k - l)], ow);
        for (std::size_t t = 0; t < r.size(); ++t) r[t] -= part[t];
    }
    return r;
}

inline IncrementTable increment_table(const RoughPathGrid& X) {
    const std::size_t n = X.size();
    auto inv = detail::all_inverses(X);
    IncrementTable incs;
    incs.times = X.times;
    incs.incs.reserve(n * (n + 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            incs.incs.push_back(tensor_mul(inv[i], X.g[j]));
    return incs;
}

// sum_l ( |Y^l_0| + |R^l|_{p/(N-l)-var} ) over the grid; the overload with a
// prebuilt table serves repeated evaluations against the same driver.
inline double controlled_norm(const ControlledPath& Y, const IncrementTable& incs,
                              double p) {
    Y.validate();
    if (Y.size() != incs.times.size())
        throw InputError("controlled_norm: path and increment table grids differ");
    if (p < 1.0) throw InputError("controlled_norm needs p >= 1");
    double total = 0.0;
    for (int l = 0; l < Y.degree; ++l) {
        total += detail::frob_norm(Y.comps[static_cast<std::size_t>(l)][0]);
        const double q = p / static_cast<double>(Y.degree - l);
        double sup = dissection_sup(Y.size(), [&](std::size_t i, std::size_t j) {
            const auto& inc = incs.at(i, j);
            return std::pow(detail::frob_norm(controlled_remainder(Y, inc, l, i, j)), q);
        });
        total += std::pow(sup, 1.0 / q);
    }
    return total;
}

inline double controlled_norm(const ControlledPath& Y, const RoughPathGrid& X, double p) {
    if (Y.dim != X.dim || Y.degree != X.level || Y.size() != X.size())
        throw InputError("controlled_norm: path and driver shapes differ");
    return controlled_norm(Y, increment_table(X), p);
}

// Grid sewing of Xi_{s,t} = sum_{k=0}^{N-1} Y^k_s X^{k+1}_{s,t}; the result
// carries Gubinelli derivatives (Y^0, .., Y^{N-2}).
inline ControlledPath rough_integral(const ControlledPath& Y, const RoughPathGrid& X) {
    Y.validate();
    if (Y.dim != X.dim || Y.degree != X.level || Y.size() != X.size())
        throw InputError("rough_integral: integrand and driver shapes differ");
    if (Y.degree_offset != 1)
        throw InputError("rough_integral needs components in L(V^(k+1), W)");
    const std::size_t e = static_cast<std::size_t>(Y.state_dim);
    ControlledPath out = zero_controlled(X, Y.state_dim);
    std::vector<double> acc(e, 0.0);
    out.comps[0][0] = acc;
    for (std::size_t i = 0; i + 1 < X.size(); ++i) {
        auto inc = X.increment(i, i + 1);
        for (int k = 0; k < Y.degree; ++k) {
            const auto& mat = Y.comps[static_cast<std::size_t>(k)][i];
            const auto& lvl = inc.levels[static_cast<std::size_t>(k + 1)];
            const std::size_t width = lvl.size();
            for (std::size_t o = 0; o < e; ++o) {
                double s = 0.0;
                for (std::size_t u = 0; u < width; ++u) s += mat[o * width + u] * lvl[u];
                acc[o] += s;
            }
        }
        out.comps[0][i + 1] = acc;
    }
    for (int l = 1; l < out.degree; ++l)
        out.comps[static_cast<std::size_t>(l)] = Y.comps[static_cast<std::size_t>(l - 1)];
    return out;
}

} // namespace roughsig
