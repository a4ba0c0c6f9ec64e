#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "roughsig/errors.hpp"
#include "roughsig/shuffle.hpp"
#include "roughsig/words.hpp"

namespace roughsig {

// All Lyndon words over {1..dim} with length <= maxlen, in lexicographic
// order (Duval's generation).
inline std::vector<Word> lyndon_words(int dim, int maxlen) {
    std::vector<Word> out;
    if (maxlen < 1) return out;
    Word w{1};
    while (!w.empty()) {
        out.push_back(w);
        Word t = w;
        w.clear();
        while (static_cast<int>(w.size()) < maxlen)
            w.push_back(t[w.size() % t.size()]);
        while (!w.empty() && w.back() == dim) w.pop_back();
        if (!w.empty()) ++w.back();
    }
    return out;
}

inline bool is_lyndon(const Word& w) {
    if (w.empty()) return false;
    for (std::size_t i = 1; i < w.size(); ++i) {
        Word suffix(w.begin() + static_cast<long>(i), w.end());
        if (!(w < suffix)) return false;
    }
    return true;
}

// Right standard factorization w = uv: v is the lexicographically smallest
// proper suffix (equivalently the longest proper Lyndon suffix).
inline std::pair<Word, Word> standard_factorization(const Word& w) {
    if (w.size() < 2) throw InputError("factorization needs |w| >= 2");
    std::size_t best = 1;
    for (std::size_t i = 2; i < w.size(); ++i) {
        Word cand(w.begin() + static_cast<long>(i), w.end());
        Word cur(w.begin() + static_cast<long>(best), w.end());
        if (cand < cur) best = i;
    }
    return {Word(w.begin(), w.begin() + static_cast<long>(best)),
            Word(w.begin() + static_cast<long>(best), w.end())};
}

namespace detail {

inline FormalSum concat_product(const FormalSum& a, const FormalSum& b) {
    FormalSum out;
    for (const auto& [u, cu] : a.terms)
        for (const auto& [v, cv] : b.terms) {
            Word w = u;
            w.insert(w.end(), v.begin(), v.end());
            out.add(w, cu * cv);
        }
    return out;
}

} // namespace detail

// Expansion of the standard bracketing of a Lyndon word into words,
// [a,b] = ab - ba recursively. The result is w + (lexicographically larger
// rearrangements), which makes the coordinate change triangular.
inline FormalSum bracket_expansion(const Word& w) {
    if (w.empty()) throw InputError("bracket_expansion needs a nonempty word");
    if (w.size() == 1) {
        FormalSum s;
        s.add(w, 1);
        return s;
    }
    auto [u, v] = standard_factorization(w);
    FormalSum pu = bracket_expansion(u);
    FormalSum pv = bracket_expansion(v);
    FormalSum uv = detail::concat_product(pu, pv);
    FormalSum vu = detail::concat_product(pv, pu);
    FormalSum out = uv;
    for (const auto& [word, c] : vu.terms) out.add(word, -c);
    return out;
}

// Lyndon words by level with their bracket expansions, built once per
// (dim, level) pair.
struct LyndonBasis {
    int dim = 0;
    int level = 0;
    std::vector<std::vector<Word>> words;          // words[k], k = 1..level
    std::vector<std::vector<FormalSum>> expansions; // aligned with words

    LyndonBasis(int dim, int level) : dim(dim), level(level) {
        words.resize(static_cast<std::size_t>(level) + 1);
        expansions.resize(static_cast<std::size_t>(level) + 1);
        for (const Word& w : lyndon_words(dim, level)) {
            words[w.size()].push_back(w);
            expansions[w.size()].push_back(bracket_expansion(w));
        }
    }

    std::size_t dimension(int k) const { return words[static_cast<std::size_t>(k)].size(); }
};

} // namespace roughsig
