#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "roughsig/controlled.hpp"
#include "roughsig/vector_field.hpp"

namespace roughsig {

namespace detail {

// Truncated jet of a map R^e -> R^e: t[r] holds the order-r partials with
// layout (o, j_1..j_r), symmetric in the j's.
struct MapJet {
    int e = 0;
    std::vector<std::vector<double>> t;
};

inline MapJet field_component_jet(const VectorField& f, const std::vector<double>& y,
                                  int i, int order) {
    const std::size_t e = static_cast<std::size_t>(f.state_dim());
    const std::size_t d = static_cast<std::size_t>(f.driver_dim());
    MapJet jet;
    jet.e = f.state_dim();
    for (int r = 0; r <= order; ++r) {
        auto full = f.derivative(y, r);
        const std::size_t width = int_pow(e, r);
        std::vector<double> slice(e * width);
        for (std::size_t o = 0; o < e; ++o)
            for (std::size_t m = 0; m < width; ++m)
                slice[o * width + m] =
                    full[(o * d + static_cast<std::size_t>(i)) * width + m];
        jet.t.push_back(std::move(slice));
    }
    return jet;
}

// Jet of y -> Dg(y)[h(y)] up to the requested order via the Leibniz rule;
// needs g one order deeper than the result.
inline MapJet chain_step(const MapJet& g, const MapJet& h, int order) {
    const std::size_t e = static_cast<std::size_t>(g.e);
    MapJet out;
    out.e = g.e;
    for (int r = 0; r <= order; ++r) {
        const std::size_t width = int_pow(e, r);
        std::vector<double> res(e * width, 0.0);
        std::vector<std::size_t> digits(static_cast<std::size_t>(r), 0);
        for (std::size_t m = 0; m < width; ++m) {
            std::size_t rem = m;
            for (int q = r - 1; q >= 0; --q) {
                digits[static_cast<std::size_t>(q)] = rem % e;
                rem /= e;
            }
            for (std::size_t mask = 0; mask < (1ull << r); ++mask) {
                std::size_t s_idx = 0, c_idx = 0;
                int s_len = 0, c_len = 0;
                for (int q = 0; q < r; ++q) {
                    if (mask & (1ull << q)) {
                        s_idx = s_idx * e + digits[static_cast<std::size_t>(q)];
                        ++s_len;
                    } else {
                        c_idx = c_idx * e + digits[static_cast<std::size_t>(q)];
                        ++c_len;
                    }
                }
                const auto& gt = g.t[static_cast<std::size_t>(s_len) + 1];
                const auto& ht = h.t[static_cast<std::size_t>(c_len)];
                const std::size_t hw = int_pow(e, c_len);
                const std::size_t gw = int_pow(e, s_len + 1);
                for (std::size_t o = 0; o < e; ++o) {
                    double s = 0.0;
                    for (std::size_t a = 0; a < e; ++a)
                        s += gt[o * gw + s_idx * e + a] * ht[a * hw + c_idx];
                    res[o * width + m] += s;
                }
            }
        }
        out.t.push_back(std::move(res));
    }
    return out;
}

// Davie's per-word maps V_w: V_(i) = f_i and V_(i,w) = D V_w . f_i, so the
// order-N Euler increment is sum_w X^|w| coefficient times V_w(y).
inline std::vector<std::vector<MapJet>> word_jets(const VectorField& f,
                                                  const std::vector<double>& y, int n) {
    const int d = f.driver_dim();
    std::vector<std::vector<MapJet>> jets(static_cast<std::size_t>(n) + 1);
    jets[1].reserve(static_cast<std::size_t>(d));
    std::vector<MapJet> base;
    for (int i = 0; i < d; ++i)
        base.push_back(field_component_jet(f, y, i, n - 1));
    jets[1] = base;
    for (int k = 2; k <= n; ++k) {
        const std::size_t prev = num_words(d, k - 1);
        jets[static_cast<std::size_t>(k)].reserve(prev * static_cast<std::size_t>(d));
        for (std::size_t w = 0; w < prev * static_cast<std::size_t>(d); ++w) {
            const std::size_t first = w / prev;
            const std::size_t suffix = w % prev;
            jets[static_cast<std::size_t>(k)].push_back(
                chain_step(jets[static_cast<std::size_t>(k - 1)][suffix],
                           base[first], n - k));
        }
    }
    return jets;
}

} // namespace detail

struct RDESolution {
    std::vector<double> times;
    std::vector<std::vector<double>> y;
    std::vector<std::vector<double>> increments;
    int blow_up_step = -1;

    bool blew_up() const { return blow_up_step >= 0; }
};

// Level-N Euler scheme: per step, y += sum_{k<=N} sum_{|w|=k} X^k_w V_w(y).
inline RDESolution solve_rde_euler(const VectorField& f, const RoughPathGrid& X,
                                   const std::vector<double>& y0, int order_n) {
    if (f.driver_dim() != X.dim)
        throw InputError("solve_rde_euler: field and driver dimensions differ");
    if (static_cast<int>(y0.size()) != f.state_dim())
        throw InputError("solve_rde_euler: initial condition has wrong dimension");
    if (order_n < 1 || order_n > X.level)
        throw InputError("solve_rde_euler: scheme order must lie in [1, driver level]");
    if (f.order() < order_n - 1)
        throw InputError("solve_rde_euler: field smoothness is insufficient for the order");

    const std::size_t e = y0.size();
    RDESolution sol;
    sol.times.push_back(X.times[0]);
    sol.y.push_back(y0);
    std::vector<double> y = y0;
    for (std::size_t i = 0; i + 1 < X.size(); ++i) {
        auto inc = X.increment(i, i + 1);
        auto jets = detail::word_jets(f, y, order_n);
        std::vector<double> dy(e, 0.0);
        for (int k = 1; k <= order_n; ++k) {
            const auto& lvl = inc.levels[static_cast<std::size_t>(k)];
            for (std::size_t w = 0; w < lvl.size(); ++w) {
                const double c = lvl[w];
                if (c == 0.0) continue;
                const auto& val = jets[static_cast<std::size_t>(k)][w].t[0];
                for (std::size_t o = 0; o < e; ++o) dy[o] += c * val[o];
            }
        }
        bool finite = true;
        for (std::size_t o = 0; o < e; ++o) {
            y[o] += dy[o];
            finite = finite && std::isfinite(y[o]);
        }
        if (!finite) {
            sol.blow_up_step = static_cast<int>(i + 1);
            return sol;
        }
        sol.increments.push_back(dy);
        sol.times.push_back(X.times[i + 1]);
        sol.y.push_back(y);
    }
    return sol;
}

// f composed with a controlled path, as an integrand for rough_integral;
// the geometric composition rule is implemented through degree 3.
inline ControlledPath compose_field(const VectorField& f, const ControlledPath& Y) {
    Y.validate();
    if (Y.degree_offset != 0)
        throw InputError("compose_field expects a plain controlled path");
    if (f.state_dim() != Y.state_dim || f.driver_dim() != Y.dim)
        throw InputError("compose_field: field and path shapes differ");
    if (Y.degree > 3)
        throw InputError("compose_field handles controlled degrees up to 3");
    if (f.order() < Y.degree - 1)
        throw InputError("compose_field: field smoothness is insufficient");

    const std::size_t e = static_cast<std::size_t>(Y.state_dim);
    const std::size_t d = static_cast<std::size_t>(Y.dim);
    ControlledPath out;
    out.dim = Y.dim;
    out.state_dim = Y.state_dim;
    out.degree = Y.degree;
    out.degree_offset = 1;
    out.times = Y.times;
    out.comps.resize(static_cast<std::size_t>(out.degree));
    for (int l = 0; l < out.degree; ++l)
        out.comps[static_cast<std::size_t>(l)].assign(
            Y.times.size(),
            std::vector<double>(e * num_words(Y.dim, l + 1), 0.0));

    for (std::size_t t = 0; t < Y.times.size(); ++t) {
        const auto& y = Y.comps[0][t];
        auto f0 = f.derivative(y, 0);
        out.comps[0][t] = f0;
        if (out.degree >= 2) {
            auto f1 = f.derivative(y, 1);
            const auto& y1 = Y.comps[1][t];
            auto& z1 = out.comps[1][t];
            // word (j, i): driver slot last
            for (std::size_t o = 0; o < e; ++o)
                for (std::size_t j = 0; j < d; ++j)
                    for (std::size_t i = 0; i < d; ++i) {
                        double s = 0.0;
                        for (std::size_t a = 0; a < e; ++a)
                            s += f1[(o * d + i) * e + a] * y1[a * d + j];
                        z1[(o * d + j) * d + i] = s;
                    }
        }
        if (out.degree >= 3) {
            auto f1 = f.derivative(y, 1);
            auto f2 = f.derivative(y, 2);
            const auto& y1 = Y.comps[1][t];
            const auto& y2 = Y.comps[2][t];
            auto& z2 = out.comps[2][t];
            for (std::size_t o = 0; o < e; ++o)
                for (std::size_t j1 = 0; j1 < d; ++j1)
                    for (std::size_t j2 = 0; j2 < d; ++j2)
                        for (std::size_t i = 0; i < d; ++i) {
                            double s = 0.0;
                            for (std::size_t a = 0; a < e; ++a)
                                s += f1[(o * d + i) * e + a] * y2[a * d * d + j1 * d + j2];
                            for (std::size_t a = 0; a < e; ++a)
                                for (std::size_t b = 0; b < e; ++b)
                                    s += f2[(o * d + i) * e * e + a * e + b] *
                                         y1[a * d + j1] * y1[b * d + j2];
                            z2[(o * d + j1) * d * d + j2 * d + i] = s;
                        }
        }
    }
    return out;
}

struct PicardSolution {
    ControlledPath path;
    int iterations = 0;
    double last_delta = 0.0;
};

// Fixed point of Y -> y0 + integral of f(Y) dX on the grid.
inline PicardSolution solve_rde_picard(const VectorField& f, const RoughPathGrid& X,
                                       const std::vector<double>& y0, int max_iter,
                                       double tol) {
    if (static_cast<int>(y0.size()) != f.state_dim())
        throw InputError("solve_rde_picard: initial condition has wrong dimension");
    ControlledPath cur = zero_controlled(X, f.state_dim());
    for (auto& v : cur.comps[0]) v = y0;
    const double p = static_cast<double>(X.level);
    const auto incs = increment_table(X);
    for (int it = 1; it <= max_iter; ++it) {
        auto integral = rough_integral(compose_field(f, cur), X);
        ControlledPath next = integral;
        for (std::size_t i = 0; i < next.size(); ++i)
            for (std::size_t o = 0; o < y0.size(); ++o) next.comps[0][i][o] += y0[o];
        ControlledPath diff = next;
        for (int l = 0; l < diff.degree; ++l)
            for (std::size_t i = 0; i < diff.size(); ++i)
                for (std::size_t t = 0; t < diff.comps[static_cast<std::size_t>(l)][i].size(); ++t)
                    diff.comps[static_cast<std::size_t>(l)][i][t] -=
                        cur.comps[static_cast<std::size_t>(l)][i][t];
        double delta = controlled_norm(diff, incs, p);
        cur = next;
        if (delta <= tol) {
            PicardSolution out;
            out.path = cur;
            out.iterations = it;
            out.last_delta = delta;
            return out;
        }
    }
    throw NumericalError("picard iteration did not converge; refine the grid or shrink the horizon");
}

struct ItoStratReport {
    std::vector<std::vector<double>> terminal_ito;
    std::vector<std::vector<double>> terminal_strat;
    std::vector<std::vector<double>> drift_correction;
    double mean_terminal_gap = 0.0; // average |strat - ito - correction|
};

// Solve the same RDE under both Brownian lifts; the drift correction
// 1/2 sum_i Df_i(Y) f_i(Y) dt is accumulated along the Stratonovich solution.
inline ItoStratReport ito_stratonovich_experiment(const VectorField& f,
                                                  const std::vector<PathSamples>& samples,
                                                  const std::vector<double>& y0) {
    ItoStratReport rep;
    if (samples.empty()) return rep;
    const std::size_t e = y0.size();
    const std::size_t d = static_cast<std::size_t>(f.driver_dim());
    double gap_acc = 0.0;
    for (const auto& w : samples) {
        auto ito = solve_rde_euler(f, brownian_lift(w, BrownianVariant::ito), y0, 2);
        auto strat =
            solve_rde_euler(f, brownian_lift(w, BrownianVariant::stratonovich), y0, 2);
        if (ito.blew_up() || strat.blew_up())
            throw NumericalError("ito/stratonovich experiment: solution blew up");
        std::vector<double> corr(e, 0.0);
        for (std::size_t i = 0; i + 1 < w.size(); ++i) {
            const double dt = w.times[i + 1] - w.times[i];
            const auto& y = strat.y[i];
            auto f0 = f.derivative(y, 0);
            auto f1 = f.derivative(y, 1);
            for (std::size_t o = 0; o < e; ++o) {
                double s = 0.0;
                for (std::size_t i2 = 0; i2 < d; ++i2)
                    for (std::size_t a = 0; a < e; ++a)
                        s += f1[(o * d + i2) * e + a] * f0[a * d + i2];
                corr[o] += 0.5 * s * dt;
            }
        }
        double gap = 0.0;
        for (std::size_t o = 0; o < e; ++o) {
            double g = strat.y.back()[o] - ito.y.back()[o] - corr[o];
            gap += g * g;
        }
        gap_acc += std::sqrt(gap);
        rep.terminal_ito.push_back(ito.y.back());
        rep.terminal_strat.push_back(strat.y.back());
        rep.drift_correction.push_back(corr);
    }
    rep.mean_terminal_gap = gap_acc / static_cast<double>(samples.size());
    return rep;
}

} // namespace roughsig
