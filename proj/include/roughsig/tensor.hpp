#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "roughsig/errors.hpp"
#include "roughsig/words.hpp"

namespace roughsig {

// Memory guard: level N costs d^N doubles per tensor. Raise per call if you
// really need deeper truncations.
inline constexpr int kDefaultLevelCap = 10;

inline void check_tensor_shape(int dim, int level, int level_cap = kDefaultLevelCap) {
    if (dim < 1) throw InputError("tensor dimension must be >= 1");
    if (level < 0) throw InputError("tensor level must be >= 0");
    if (dim >= 2 && level > level_cap)
        throw InputError("level " + std::to_string(level) + " exceeds cap " +
                         std::to_string(level_cap) + " for dim >= 2");
}

// Element of the truncated tensor algebra over R^dim. levels[k] holds the
// d^k coefficients of the degree-k component in lexicographic word order.
struct TruncatedTensor {
    int dim = 0;
    int level = 0;
    std::vector<std::vector<double>> levels;

    TruncatedTensor() = default;

    static TruncatedTensor zero(int dim, int level, int level_cap = kDefaultLevelCap) {
        check_tensor_shape(dim, level, level_cap);
        TruncatedTensor t;
        t.dim = dim;
        t.level = level;
        t.levels.resize(static_cast<std::size_t>(level) + 1);
        for (int k = 0; k <= level; ++k)
            t.levels[static_cast<std::size_t>(k)].assign(num_words(dim, k), 0.0);
        return t;
    }

    static TruncatedTensor unit(int dim, int level, int level_cap = kDefaultLevelCap) {
        TruncatedTensor t = zero(dim, level, level_cap);
        t.levels[0][0] = 1.0;
        return t;
    }

    // Degree-1 embedding of a vector.
    static TruncatedTensor from_vector(const std::vector<double>& v, int level,
                                       int level_cap = kDefaultLevelCap) {
        TruncatedTensor t = zero(static_cast<int>(v.size()), level, level_cap);
        if (level >= 1) t.levels[1] = v;
        return t;
    }

    double scalar() const { return levels[0][0]; }

    double coeff(const Word& w) const {
        int k = static_cast<int>(w.size());
        if (k > level) throw InputError("word longer than truncation level");
        return levels[static_cast<std::size_t>(k)][word_index(w, dim)];
    }

    double& coeff(const Word& w) {
        int k = static_cast<int>(w.size());
        if (k > level) throw InputError("word longer than truncation level");
        return levels[static_cast<std::size_t>(k)][word_index(w, dim)];
    }

    // Copy truncated (or zero-padded) to another level.
    TruncatedTensor truncated(int new_level, int level_cap = kDefaultLevelCap) const {
        TruncatedTensor t = zero(dim, new_level, level_cap);
        for (int k = 0; k <= std::min(level, new_level); ++k)
            t.levels[static_cast<std::size_t>(k)] = levels[static_cast<std::size_t>(k)];
        return t;
    }
};

inline void check_same_shape(const TruncatedTensor& a, const TruncatedTensor& b) {
    if (a.dim != b.dim || a.level != b.level)
        throw InputError("tensor shape mismatch: (" + std::to_string(a.dim) + "," +
                         std::to_string(a.level) + ") vs (" + std::to_string(b.dim) +
                         "," + std::to_string(b.level) + ")");
}

inline TruncatedTensor operator+(const TruncatedTensor& a, const TruncatedTensor& b) {
    check_same_shape(a, b);
    TruncatedTensor out = a;
    for (std::size_t k = 0; k < out.levels.size(); ++k)
        for (std::size_t i = 0; i < out.levels[k].size(); ++i)
            out.levels[k][i] += b.levels[k][i];
    return out;
}

inline TruncatedTensor operator-(const TruncatedTensor& a, const TruncatedTensor& b) {
    check_same_shape(a, b);
    TruncatedTensor out = a;
    for (std::size_t k = 0; k < out.levels.size(); ++k)
        for (std::size_t i = 0; i < out.levels[k].size(); ++i)
            out.levels[k][i] -= b.levels[k][i];
    return out;
}

inline TruncatedTensor operator*(double c, const TruncatedTensor& a) {
    TruncatedTensor out = a;
    for (auto& lvl : out.levels)
        for (double& x : lvl) x *= c;
    return out;
}

// Truncated concatenation (tensor) product.
inline TruncatedTensor tensor_mul(const TruncatedTensor& a, const TruncatedTensor& b) {
    check_same_shape(a, b);
    const int d = a.dim;
    TruncatedTensor out = TruncatedTensor::zero(d, a.level);
    for (int m = 0; m <= a.level; ++m) {
        auto& dst = out.levels[static_cast<std::size_t>(m)];
        for (int i = 0; i <= m; ++i) {
            const int j = m - i;
            const auto& la = a.levels[static_cast<std::size_t>(i)];
            const auto& lb = b.levels[static_cast<std::size_t>(j)];
            const std::size_t nb = lb.size();
            for (std::size_t ia = 0; ia < la.size(); ++ia) {
                const double ca = la[ia];
                if (ca == 0.0) continue;
                double* row = dst.data() + ia * nb;
                for (std::size_t ib = 0; ib < nb; ++ib) row[ib] += ca * lb[ib];
            }
        }
    }
    return out;
}

inline double level_norm(const TruncatedTensor& a, int k) {
    double s = 0.0;
    for (double x : a.levels[static_cast<std::size_t>(k)]) s += x * x;
    return std::sqrt(s);
}

inline double tensor_norm(const TruncatedTensor& a) {
    double s = 0.0;
    for (const auto& lvl : a.levels)
        for (double x : lvl) s += x * x;
    return std::sqrt(s);
}

// exp of an element with zero scalar part; the series terminates at the
// truncation level.
inline TruncatedTensor tensor_exp(const TruncatedTensor& x) {
    if (x.scalar() != 0.0) throw InputError("tensor_exp requires zero scalar part");
    TruncatedTensor out = TruncatedTensor::unit(x.dim, x.level);
    TruncatedTensor term = TruncatedTensor::unit(x.dim, x.level);
    for (int k = 1; k <= x.level; ++k) {
        term = (1.0 / k) * tensor_mul(term, x);
        out = out + term;
    }
    return out;
}

// log of an element with unit scalar part.
inline TruncatedTensor tensor_log(const TruncatedTensor& g) {
    if (g.scalar() != 1.0) throw InputError("tensor_log requires unit scalar part");
    TruncatedTensor h = g;
    h.levels[0][0] = 0.0;
    TruncatedTensor out = TruncatedTensor::zero(g.dim, g.level);
    TruncatedTensor pw = TruncatedTensor::unit(g.dim, g.level);
    double sign = 1.0;
    for (int k = 1; k <= g.level; ++k) {
        pw = tensor_mul(pw, h);
        out = out + (sign / k) * pw;
        sign = -sign;
    }
    return out;
}

// Inverse of an element with unit scalar part via the terminating Neumann
// series of (1 + h)^{-1}.
inline TruncatedTensor group_inverse(const TruncatedTensor& g) {
    if (g.scalar() != 1.0) throw InputError("group_inverse requires unit scalar part");
    TruncatedTensor h = g;
    h.levels[0][0] = 0.0;
    TruncatedTensor out = TruncatedTensor::unit(g.dim, g.level);
    TruncatedTensor pw = TruncatedTensor::unit(g.dim, g.level);
    double sign = -1.0;
    for (int k = 1; k <= g.level; ++k) {
        pw = tensor_mul(pw, h);
        out = out + sign * pw;
        sign = -sign;
    }
    return out;
}

inline double pairing(const TruncatedTensor& x, const Word& w) { return x.coeff(w); }

// Grouplike elements are exactly the tensors the lift machinery produces;
// they share the representation.
using GroupElement = TruncatedTensor;

} // namespace roughsig
