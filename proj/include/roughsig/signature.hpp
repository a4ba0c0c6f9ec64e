#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "roughsig/errors.hpp"
#include "roughsig/lyndon.hpp"
#include "roughsig/path.hpp"
#include "roughsig/rough_path.hpp"
#include "roughsig/tensor.hpp"

namespace roughsig {

using Signature = TruncatedTensor;

// Endpoint of the canonical lift: running product of segment exponentials.
inline Signature signature(const PathSamples& x, int level,
                           int level_cap = kDefaultLevelCap) {
    x.validate();
    check_tensor_shape(x.dim(), level, level_cap);
    TruncatedTensor acc = TruncatedTensor::unit(x.dim(), level, level_cap);
    const std::size_t d = static_cast<std::size_t>(x.dim());
    std::vector<double> delta(d);
    for (std::size_t i = 1; i < x.size(); ++i) {
        for (std::size_t c = 0; c < d; ++c)
            delta[c] = x.values[i][c] - x.values[i - 1][c];
        acc = tensor_mul(acc, exp_segment(delta, level, level_cap));
    }
    return acc;
}

// Log-signature in Lyndon coordinates. residual is the norm of the non-Lie
// component left after projection; for grouplike input it is round-off.
struct LogSignature {
    int dim = 0;
    int level = 0;
    std::vector<std::vector<std::pair<Word, double>>> coords; // per level, lex order
    double residual = 0.0;
};

inline LogSignature log_signature(const Signature& sig, const LyndonBasis& basis) {
    if (sig.dim != basis.dim || sig.level > basis.level)
        throw InputError("log_signature: basis shape mismatch");
    TruncatedTensor lg = tensor_log(sig);
    LogSignature out;
    out.dim = sig.dim;
    out.level = sig.level;
    out.coords.resize(static_cast<std::size_t>(sig.level) + 1);
    double residual_sq = 0.0;
    for (int k = 1; k <= sig.level; ++k) {
        const auto& words = basis.words[static_cast<std::size_t>(k)];
        const auto& exps = basis.expansions[static_cast<std::size_t>(k)];
        const std::size_t m = words.size();
        // forward substitution against the unitriangular expansion matrix
        std::vector<double> c(m, 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            double b = lg.coeff(words[i]);
            for (std::size_t j = 0; j < i; ++j) {
                auto it = exps[j].terms.find(words[i]);
                if (it != exps[j].terms.end())
                    b -= static_cast<double>(it->second) * c[j];
            }
            c[i] = b;
        }
        std::vector<double> recon(lg.levels[static_cast<std::size_t>(k)].size(), 0.0);
        for (std::size_t j = 0; j < m; ++j) {
            out.coords[static_cast<std::size_t>(k)].push_back({words[j], c[j]});
            for (const auto& [w, coef] : exps[j].terms)
                recon[word_index(w, sig.dim)] += static_cast<double>(coef) * c[j];
        }
        const auto& lvl = lg.levels[static_cast<std::size_t>(k)];
        for (std::size_t idx = 0; idx < lvl.size(); ++idx) {
            double d = lvl[idx] - recon[idx];
            residual_sq += d * d;
        }
    }
    out.residual = std::sqrt(residual_sq);
    return out;
}

inline LogSignature log_signature(const PathSamples& x, int level,
                                  int level_cap = kDefaultLevelCap) {
    LyndonBasis basis(x.dim(), level);
    return log_signature(signature(x, level, level_cap), basis);
}

// Rebuild the Lie element and exponentiate; inverse of log_signature up to
// the reported residual.
inline Signature log_signature_to_tensor(const LogSignature& ls, const LyndonBasis& basis) {
    TruncatedTensor lie = TruncatedTensor::zero(ls.dim, ls.level);
    for (int k = 1; k <= ls.level; ++k) {
        const auto& coords = ls.coords[static_cast<std::size_t>(k)];
        for (std::size_t j = 0; j < coords.size(); ++j) {
            const auto& exp_j = basis.expansions[static_cast<std::size_t>(k)][j];
            for (const auto& [w, coef] : exp_j.terms)
                lie.coeff(w) += static_cast<double>(coef) * coords[j].second;
        }
    }
    return tensor_exp(lie);
}

// Lyons extension by grid sewing: each new level L is the finest-partition
// sum of Xi_{r,s} = sum_{k=0}^{L-2} X^{L-1-k}_{0,r} (x) X^{k+1}_{r,s}.
// Levels <= the input level are copied bit for bit.
inline RoughPathGrid extend(const RoughPathGrid& X, int target_level,
                            int level_cap = kDefaultLevelCap) {
    if (target_level < X.level) throw InputError("extend: target below current level");
    check_tensor_shape(X.dim, target_level, level_cap);
    RoughPathGrid out;
    out.dim = X.dim;
    out.level = target_level;
    out.times = X.times;
    out.g.reserve(X.size());
    for (const auto& t : X.g) out.g.push_back(t.truncated(target_level, level_cap));

    const int d = X.dim;
    for (int L = X.level + 1; L <= target_level; ++L) {
        const std::size_t lw = num_words(d, L);
        std::vector<double> running(lw, 0.0);
        // increments only need levels < L, which are already in place
        for (std::size_t i = 0; i + 1 < out.size(); ++i) {
            TruncatedTensor inc = tensor_mul(group_inverse(out.g[i]), out.g[i + 1]);
            const TruncatedTensor& base = out.g[i];
            for (int k = 0; k <= L - 2; ++k) {
                const auto& left = base.levels[static_cast<std::size_t>(L - 1 - k)];
                const auto& right = inc.levels[static_cast<std::size_t>(k + 1)];
                const std::size_t nr = right.size();
                for (std::size_t a = 0; a < left.size(); ++a) {
                    const double ca = left[a];
                    if (ca == 0.0) continue;
                    double* dst = running.data() + a * nr;
                    for (std::size_t b = 0; b < nr; ++b) dst[b] += ca * right[b];
                }
            }
            out.g[i + 1].levels[static_cast<std::size_t>(L)] = running;
        }
    }
    return out;
}

// Per-level largest beta for which (beta (k/p)! |S^k|)^{p/k} <= omega holds,
// plus the threshold constant beta0 = p (1 + 2^gamma (zeta(gamma) - 1)) with
// gamma = (floor(p) + 1) / p.
struct FactorialDecayReport {
    double p = 0.0;
    double omega = 0.0;
    std::vector<double> beta_sup; // index k-1 for level k
    double beta_min = 0.0;
    double beta0 = 0.0;

    // rel_slack absorbs round-off when a level sits exactly on the bound
    bool satisfied_with(double beta, double rel_slack = 1e-12) const {
        return beta * (1.0 - rel_slack) <= beta_min;
    }
};

inline FactorialDecayReport factorial_decay_check(const Signature& sig, double pvar,
                                                  double p) {
    if (p < 1.0) throw InputError("factorial decay check needs p >= 1");
    FactorialDecayReport rep;
    rep.p = p;
    double omega = std::pow(pvar, p);
    rep.omega = omega;
    double gamma = (std::floor(p) + 1.0) / p;
    rep.beta0 = p * (1.0 + std::pow(2.0, gamma) * (std::riemann_zeta(gamma) - 1.0));
    double worst = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= sig.level; ++k) {
        double nk = level_norm(sig, k);
        double denom = std::tgamma(static_cast<double>(k) / p + 1.0) * nk;
        double b = nk == 0.0 ? std::numeric_limits<double>::infinity()
                             : std::pow(omega, static_cast<double>(k) / p) / denom;
        rep.beta_sup.push_back(b);
        worst = std::min(worst, b);
    }
    rep.beta_min = worst;
    return rep;
}

// Componentwise ensemble mean with the per-level radius diagnostic
// a_k = |mean of S^k|^{1/k}. Summation runs in index order, so results are
// reproducible for a fixed ensemble ordering.
struct ExpectedSignature {
    TruncatedTensor mean;
    std::vector<double> radius; // index k-1 for level k
};

inline ExpectedSignature expected_signature(const std::vector<Signature>& sigs) {
    if (sigs.empty()) throw InputError("expected_signature needs a nonempty ensemble");
    TruncatedTensor acc = TruncatedTensor::zero(sigs[0].dim, sigs[0].level);
    for (const auto& s : sigs) {
        check_same_shape(acc, s);
        acc = acc + s;
    }
    acc = (1.0 / static_cast<double>(sigs.size())) * acc;
    ExpectedSignature out;
    out.mean = acc;
    for (int k = 1; k <= acc.level; ++k)
        out.radius.push_back(std::pow(level_norm(acc, k), 1.0 / static_cast<double>(k)));
    return out;
}

// Per-level estimates (k! |S^k|)^{1/k}; for C^1 constant-speed paths these
// approach the length from below as k grows.
inline std::vector<double> length_asymptotic(const Signature& sig) {
    std::vector<double> est;
    for (int k = 1; k <= sig.level; ++k) {
        double nk = level_norm(sig, k);
        if (nk == 0.0) {
            est.push_back(0.0);
            continue;
        }
        double log_e = (std::lgamma(static_cast<double>(k) + 1.0) + std::log(nk)) /
                       static_cast<double>(k);
        est.push_back(std::exp(log_e));
    }
    return est;
}

} // namespace roughsig
