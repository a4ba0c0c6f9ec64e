#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "roughsig/tensor.hpp"
#include "roughsig/words.hpp"

namespace roughsig {

// Sparse integer combination of words. Shuffle coefficients stay exact here;
// callers cast on pairing.
struct FormalSum {
    std::map<Word, std::int64_t> terms;

    void add(const Word& w, std::int64_t c) {
        auto it = terms.find(w);
        if (it == terms.end()) {
            if (c != 0) terms.emplace(w, c);
        } else {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }
};

inline FormalSum operator+(const FormalSum& a, const FormalSum& b) {
    FormalSum out = a;
    for (const auto& [w, c] : b.terms) out.add(w, c);
    return out;
}

namespace detail {

inline void shuffle_rec(const Word& u, std::size_t nu, const Word& v, std::size_t nv,
                        Word& acc, FormalSum& out) {
    if (nu == 0 && nv == 0) {
        Word w(acc.rbegin(), acc.rend());
        out.add(w, 1);
        return;
    }
    if (nu > 0) {
        acc.push_back(u[nu - 1]);
        shuffle_rec(u, nu - 1, v, nv, acc, out);
        acc.pop_back();
    }
    if (nv > 0) {
        acc.push_back(v[nv - 1]);
        shuffle_rec(u, nu, v, nv - 1, acc, out);
        acc.pop_back();
    }
}

} // namespace detail

// Shuffle product of two words: recursion on the last letter,
// u.e_i sh w.e_j = (u sh w.e_j).e_i + (u.e_i sh w).e_j, with 1 sh v = v.
inline FormalSum shuffle(const Word& u, const Word& v) {
    FormalSum out;
    Word acc;
    acc.reserve(u.size() + v.size());
    detail::shuffle_rec(u, u.size(), v, v.size(), acc, out);
    return out;
}

inline double pairing(const TruncatedTensor& x, const FormalSum& s) {
    double acc = 0.0;
    for (const auto& [w, c] : s.terms) acc += static_cast<double>(c) * x.coeff(w);
    return acc;
}

// Precomputed shuffle table for the character test. One instance per (dim,
// level) pair; reusable across many tensors.
class GrouplikeChecker {
public:
    GrouplikeChecker(int dim, int level) : dim_(dim), level_(level) {
        for (int lu = 1; lu < level; ++lu) {
            for (int lv = lu; lu + lv <= level; ++lv) {
                Word u(static_cast<std::size_t>(lu), 1);
                do {
                    Word v(static_cast<std::size_t>(lv), 1);
                    do {
                        if (lu == lv && v < u) continue;
                        pairs_.push_back({u, v, shuffle(u, v)});
                    } while (next_word(v, dim));
                } while (next_word(u, dim));
            }
        }
    }

    // Largest violation of <g, u sh v> = <g,u><g,v> over all unordered word
    // pairs with |u| + |v| <= level.
    double defect(const TruncatedTensor& g) const {
        double worst = std::abs(g.scalar() - 1.0);
        for (const auto& p : pairs_) {
            double lhs = pairing(g, p.sh);
            double rhs = g.coeff(p.u) * g.coeff(p.v);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
        return worst;
    }

    bool is_grouplike(const TruncatedTensor& g, double tol = 1e-9) const {
        return defect(g) <= tol;
    }

private:
    struct Pair {
        Word u, v;
        FormalSum sh;
    };
    int dim_;
    int level_;
    std::vector<Pair> pairs_;
};

inline double grouplike_defect(const TruncatedTensor& g) {
    return GrouplikeChecker(g.dim, g.level).defect(g);
}

inline bool is_grouplike(const TruncatedTensor& g, double tol = 1e-9) {
    return grouplike_defect(g) <= tol;
}

} // namespace roughsig
