#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "roughsig/errors.hpp"
#include "roughsig/forest.hpp"
#include "roughsig/path.hpp"
#include "roughsig/pvar.hpp"
#include "roughsig/tensor.hpp"
#include "roughsig/words.hpp"

namespace roughsig {

// Finite linear combination of forests, keyed by canonical encoding.
struct ForestSum {
    std::map<std::string, double> terms;

    void add(const std::string& key, double c) {
        auto it = terms.find(key);
        if (it == terms.end()) {
            if (c != 0.0) terms.emplace(key, c);
            return;
        }
        it->second += c;
        if (it->second == 0.0) terms.erase(it);
    }
};

// Coproduct output: combination of (pruned branches, trunk) pairs.
struct ForestPairSum {
    std::map<std::pair<std::string, std::string>, double> terms;

    void add(const std::string& left, const std::string& right, double c) {
        auto it = terms.find({left, right});
        if (it == terms.end()) {
            if (c != 0.0) terms.emplace(std::make_pair(left, right), c);
            return;
        }
        it->second += c;
        if (it->second == 0.0) terms.erase(it);
    }
};

inline ForestPairSum ck_coproduct(const ForestSum& x, const ForestTable& table) {
    ForestPairSum out;
    for (const auto& [key, c] : x.terms) {
        int fid = table.forest_id(key);
        for (const auto& term : table.forests()[static_cast<std::size_t>(fid)].coproduct)
            out.add(table.forests()[static_cast<std::size_t>(term.left)].key,
                    table.forests()[static_cast<std::size_t>(term.right)].key,
                    c * static_cast<double>(term.coeff));
    }
    return out;
}

// Element of the truncated Grossman-Larson algebra: one coefficient per
// forest in the table. Group-like elements (characters on the forest
// algebra) are the multiplicative ones; the container itself is linear.
struct Character {
    std::shared_ptr<const ForestTable> table;
    std::vector<double> value;

    double coeff(const std::string& forest_encoding) const {
        return value[static_cast<std::size_t>(table->forest_id(forest_encoding))];
    }
};

inline Character unit_character(std::shared_ptr<const ForestTable> table) {
    Character g;
    g.table = std::move(table);
    g.value.assign(g.table->forests().size(), 0.0);
    g.value[0] = 1.0;
    return g;
}

// Extend given tree coefficients multiplicatively to all forests.
inline Character character_from_trees(std::shared_ptr<const ForestTable> table,
                                      const std::vector<double>& tree_value) {
    if (tree_value.size() != table->trees().size())
        throw InputError("need one coefficient per tree in the table");
    Character g;
    g.table = std::move(table);
    g.value.assign(g.table->forests().size(), 0.0);
    g.value[0] = 1.0;
    const auto& forests = g.table->forests();
    for (std::size_t fid = 1; fid < forests.size(); ++fid) {
        double v = 1.0;
        for (int tid : forests[fid].trees) v *= tree_value[static_cast<std::size_t>(tid)];
        g.value[fid] = v;
    }
    return g;
}

namespace detail {

inline void check_same_table(const Character& a, const Character& b) {
    if (!a.table || !b.table) throw InputError("character has no forest table");
    if (a.table->dim() != b.table->dim() ||
        a.table->max_vertices() != b.table->max_vertices())
        throw InputError("characters live over different forest tables");
}

} // namespace detail

// Worst multiplicativity gap over all forest pairs that fit the truncation.
inline double character_defect(const Character& g) {
    const auto& forests = g.table->forests();
    const int cap = g.table->max_vertices();
    double worst = std::abs(g.value[0] - 1.0);
    for (std::size_t a = 1; a < forests.size(); ++a) {
        if (forests[a].size * 2 > cap) continue;
        for (std::size_t b = a; b < forests.size(); ++b) {
            if (forests[a].size + forests[b].size > cap) continue;
            int ab = g.table->product(static_cast<int>(a), static_cast<int>(b));
            double gap = std::abs(g.value[static_cast<std::size_t>(ab)] -
                                  g.value[a] * g.value[b]);
            if (gap > worst) worst = gap;
        }
    }
    return worst;
}

// Grossman-Larson product, dual to the coproduct: the left factor is paired
// with the pruned branches, the right factor with the trunk.
inline Character gl_product(const Character& a, const Character& b) {
    detail::check_same_table(a, b);
    Character out;
    out.table = a.table;
    out.value.assign(a.value.size(), 0.0);
    const auto& forests = a.table->forests();
    for (std::size_t fid = 0; fid < forests.size(); ++fid) {
        double s = 0.0;
        for (const auto& term : forests[fid].coproduct)
            s += static_cast<double>(term.coeff) * a.value[static_cast<std::size_t>(term.left)] *
                 b.value[static_cast<std::size_t>(term.right)];
        out.value[fid] = s;
    }
    return out;
}

// Group inverse by the Neumann series of g - unit, which is nilpotent in
// the truncation: the k-th power vanishes below k vertices.
inline Character gl_inverse(const Character& g) {
    if (!g.table) throw InputError("character has no forest table");
    if (g.value[0] != 1.0) throw InputError("gl inverse needs unit pairing 1");
    Character x = g;
    x.value[0] = 0.0;
    Character out = unit_character(g.table);
    Character acc = unit_character(g.table);
    double sign = 1.0;
    for (int k = 1; k <= g.table->max_vertices(); ++k) {
        acc = gl_product(acc, x);
        sign = -sign;
        for (std::size_t i = 0; i < out.value.size(); ++i)
            out.value[i] += sign * acc.value[i];
    }
    return out;
}

inline double gl_distance(const Character& a, const Character& b) {
    detail::check_same_table(a, b);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.value.size(); ++i)
        worst = std::max(worst, std::abs(a.value[i] - b.value[i]));
    return worst;
}

// Branched rough path on a grid, stored as the running trajectory
// g_i = X_{t_0, t_i} of characters with g_0 the unit.
struct BranchedRoughPath {
    int dim = 0;
    int level = 0;
    std::vector<double> times;
    std::vector<Character> g;

    std::size_t size() const { return times.size(); }

    Character increment(std::size_t i, std::size_t j) const {
        if (j < i) throw InputError("increment needs i <= j");
        return gl_product(gl_inverse(g[i]), g[j]);
    }
};

inline double branched_chen_defect(const BranchedRoughPath& X) {
    const std::size_t n = X.size();
    std::vector<Character> inv;
    inv.reserve(n);
    for (const auto& c : X.g) inv.push_back(gl_inverse(c));
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = i + 1; k < n; ++k)
            for (std::size_t j = k + 1; j < n; ++j) {
                Character a = gl_product(inv[i], X.g[k]);
                Character b = gl_product(inv[k], X.g[j]);
                Character c = gl_product(inv[i], X.g[j]);
                worst = std::max(worst, gl_distance(gl_product(a, b), c));
            }
    return worst;
}

// Smallest control value at (0, T) compatible with the branched p-variation
// bound; forests follow from trees by multiplicativity, so trees suffice.
inline double branched_pvar(const BranchedRoughPath& X, double p) {
    if (p < 1.0) throw InputError("branched p-variation needs p >= 1");
    const std::size_t n = X.size();
    std::vector<Character> inv;
    inv.reserve(n);
    for (const auto& c : X.g) inv.push_back(gl_inverse(c));
    const auto& trees = X.g[0].table->trees();
    double sup = dissection_sup(n, [&](std::size_t i, std::size_t j) {
        Character z = gl_product(inv[i], X.g[j]);
        double worst = 0.0;
        for (const auto& t : trees) {
            double v = std::abs(z.value[static_cast<std::size_t>(t.as_forest)]);
            worst = std::max(worst, std::pow(v, p / t.size));
        }
        return worst;
    });
    return std::pow(sup, 1.0 / p);
}

// Branched lift of sampled bounded-variation data by left-point sums: each
// tree coefficient integrates the coefficient of its branches against the
// increment of the root coordinate. Exact under grid refinement for
// piecewise-linear data.
inline BranchedRoughPath branched_lift_bv(const PathSamples& x, int max_vertices) {
    x.validate();
    if (max_vertices < 1 || max_vertices > 5)
        throw InputError("branched lift supports 1 to 5 vertices");
    const int d = x.dim();
    auto table = ForestTable::build(d, max_vertices);
    BranchedRoughPath X;
    X.dim = d;
    X.level = max_vertices;
    X.times = x.times;
    X.g.reserve(x.size());
    std::vector<double> tree_vals(table->trees().size(), 0.0);
    X.g.push_back(unit_character(table));
    for (std::size_t step = 0; step + 1 < x.size(); ++step) {
        const Character& cur = X.g.back();
        std::vector<double> next(tree_vals.size());
        for (std::size_t tid = 0; tid < tree_vals.size(); ++tid) {
            const auto& t = table->trees()[tid];
            double dx = x.values[step + 1][static_cast<std::size_t>(t.label - 1)] -
                        x.values[step][static_cast<std::size_t>(t.label - 1)];
            next[tid] = tree_vals[tid] +
                        cur.value[static_cast<std::size_t>(t.children)] * dx;
        }
        tree_vals = std::move(next);
        X.g.push_back(character_from_trees(table, tree_vals));
    }
    return X;
}

// Gap in the vertex-product identity of a left-point (Ito-type) lift at one
// time: <X, ._i><X, ._j> - <X, ladder(i,j)> - <X, ladder(j,i)>. For smooth
// data it vanishes under refinement; for Brownian data its ensemble mean is
// the bracket term of the product formula.
struct ItoBranchedReport {
    double t = 0.0;
    std::vector<std::vector<double>> defect;
};

inline ItoBranchedReport ito_branched_bm(const PathSamples& w, double t) {
    BranchedRoughPath X = branched_lift_bv(w, 2);
    if (t < X.times.front() - 1e-12 || t > X.times.back() + 1e-12)
        throw InputError("report time outside the sampled window");
    std::size_t idx = 0;
    while (idx + 1 < X.times.size() && X.times[idx + 1] <= t + 1e-12) ++idx;
    const Character& g = X.g[idx];
    const auto& table = *g.table;
    const int d = X.dim;
    ItoBranchedReport rep;
    rep.t = X.times[idx];
    rep.defect.assign(static_cast<std::size_t>(d),
                      std::vector<double>(static_cast<std::size_t>(d), 0.0));
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= d; ++j) {
            double vi = g.value[static_cast<std::size_t>(
                table.trees()[static_cast<std::size_t>(table.single_vertex(i))].as_forest)];
            double vj = g.value[static_cast<std::size_t>(
                table.trees()[static_cast<std::size_t>(table.single_vertex(j))].as_forest)];
            double lij = g.value[static_cast<std::size_t>(
                table.trees()[static_cast<std::size_t>(table.ladder({i, j}))].as_forest)];
            double lji = g.value[static_cast<std::size_t>(
                table.trees()[static_cast<std::size_t>(table.ladder({j, i}))].as_forest)];
            rep.defect[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] =
                vi * vj - lij - lji;
        }
    return rep;
}

namespace detail {

inline void embed_words(const TruncatedTensor& x, int len, std::size_t idx_base,
                        const Character& prefix, const std::vector<Character>& primitive,
                        Character& out) {
    const int d = x.dim;
    for (int a = 0; a < d; ++a) {
        Character p = gl_product(prefix, primitive[static_cast<std::size_t>(a)]);
        std::size_t idx = idx_base * static_cast<std::size_t>(d) + static_cast<std::size_t>(a);
        double c = x.levels[static_cast<std::size_t>(len)][idx];
        if (c != 0.0)
            for (std::size_t i = 0; i < out.value.size(); ++i)
                out.value[i] += c * p.value[i];
        if (len < x.level) embed_words(x, len + 1, idx, p, primitive, out);
    }
}

} // namespace detail

// Graded algebra morphism from the truncated tensor algebra: each letter
// becomes the primitive element supported on its single-vertex tree, and a
// word becomes the GL product of its letters.
inline Character embed_tensor_to_gl(const TruncatedTensor& x,
                                    std::shared_ptr<const ForestTable> table) {
    if (x.dim != table->dim()) throw InputError("tensor and table dimensions differ");
    if (x.level > table->max_vertices())
        throw InputError("tensor level exceeds the table vertex cap");
    const int d = x.dim;
    std::vector<Character> primitive;
    primitive.reserve(static_cast<std::size_t>(d));
    for (int a = 1; a <= d; ++a) {
        Character e;
        e.table = table;
        e.value.assign(table->forests().size(), 0.0);
        e.value[static_cast<std::size_t>(
            table->trees()[static_cast<std::size_t>(table->single_vertex(a))].as_forest)] =
            1.0;
        primitive.push_back(std::move(e));
    }
    Character out = unit_character(table);
    for (std::size_t i = 0; i < out.value.size(); ++i) out.value[i] *= x.levels[0][0];
    if (x.level >= 1) {
        Character prefix = unit_character(table);
        detail::embed_words(x, 1, 0, prefix, primitive, out);
    }
    return out;
}

} // namespace roughsig
