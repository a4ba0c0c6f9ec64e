#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "roughsig/errors.hpp"

namespace roughsig {

// Fields declaring this order have exact derivatives of every order that the
// solvers can request.
inline constexpr int kAnalyticOrder = 1 << 20;

// A driving vector field f: R^e -> L(R^d, R^e). derivative(y, r) returns the
// flattened tensor of r-th partials with layout (o, i, j_1..j_r): entry
// ((o*d + i)*e^r + m) holds d^r f^o_i / dy_{j_1}..dy_{j_r} at y, where m is
// the base-e encoding of (j_1..j_r).
class VectorField {
  public:
    virtual ~VectorField() = default;
    virtual int state_dim() const = 0;
    virtual int driver_dim() const = 0;
    virtual int order() const = 0;
    virtual std::vector<double> derivative(const std::vector<double>& y,
                                           int r) const = 0;

  protected:
    void check_point(const std::vector<double>& y, int r) const {
        if (static_cast<int>(y.size()) != state_dim())
            throw InputError("vector field evaluated at a point of wrong dimension");
        if (r < 0 || r > order())
            throw InputError("vector field derivative order out of range");
    }
};

namespace detail {

inline std::size_t int_pow(std::size_t base, int exp) {
    std::size_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

} // namespace detail

// f_i(y) = A_i y + b_i; covers constant (additive-noise) fields with A = 0.
class LinearField final : public VectorField {
  public:
    LinearField(int state_dim, int driver_dim,
                std::vector<std::vector<double>> mats,
                std::vector<std::vector<double>> offsets = {})
        : e_(state_dim), d_(driver_dim), a_(std::move(mats)), b_(std::move(offsets)) {
        if (b_.empty()) b_.assign(static_cast<std::size_t>(d_), std::vector<double>(static_cast<std::size_t>(e_), 0.0));
        if (a_.size() != static_cast<std::size_t>(d_) || b_.size() != static_cast<std::size_t>(d_))
            throw InputError("linear field needs one matrix and offset per driver coordinate");
        for (int i = 0; i < d_; ++i) {
            if (a_[static_cast<std::size_t>(i)].size() != static_cast<std::size_t>(e_ * e_))
                throw InputError("linear field matrix has wrong shape");
            if (b_[static_cast<std::size_t>(i)].size() != static_cast<std::size_t>(e_))
                throw InputError("linear field offset has wrong shape");
        }
    }

    int state_dim() const override { return e_; }
    int driver_dim() const override { return d_; }
    int order() const override { return kAnalyticOrder; }

    std::vector<double> derivative(const std::vector<double>& y, int r) const override {
        check_point(y, r);
        const std::size_t e = static_cast<std::size_t>(e_);
        const std::size_t d = static_cast<std::size_t>(d_);
        std::vector<double> out(e * d * detail::int_pow(e, r), 0.0);
        if (r == 0) {
            for (std::size_t o = 0; o < e; ++o)
                for (std::size_t i = 0; i < d; ++i) {
                    double s = b_[i][o];
                    for (std::size_t j = 0; j < e; ++j) s += a_[i][o * e + j] * y[j];
                    out[o * d + i] = s;
                }
        } else if (r == 1) {
            for (std::size_t o = 0; o < e; ++o)
                for (std::size_t i = 0; i < d; ++i)
                    for (std::size_t j = 0; j < e; ++j)
                        out[(o * d + i) * e + j] = a_[i][o * e + j];
        }
        return out;
    }

  private:
    int e_, d_;
    std::vector<std::vector<double>> a_;
    std::vector<std::vector<double>> b_;
};

// Sparse multivariate-polynomial field: each term contributes
// c * y_1^{p_1}..y_e^{p_e} to component (out, coord).
class PolynomialField final : public VectorField {
  public:
    struct Term {
        int out = 0;
        int coord = 0;
        double c = 0.0;
        std::vector<int> powers;
    };

    PolynomialField(int state_dim, int driver_dim, std::vector<Term> terms)
        : e_(state_dim), d_(driver_dim), terms_(std::move(terms)) {
        for (const auto& t : terms_) {
            if (t.out < 0 || t.out >= e_ || t.coord < 0 || t.coord >= d_ ||
                t.powers.size() != static_cast<std::size_t>(e_))
                throw InputError("polynomial field term has wrong shape");
            for (int p : t.powers)
                if (p < 0) throw InputError("polynomial field powers must be nonnegative");
        }
    }

    int state_dim() const override { return e_; }
    int driver_dim() const override { return d_; }
    int order() const override { return kAnalyticOrder; }

    std::vector<double> derivative(const std::vector<double>& y, int r) const override {
        check_point(y, r);
        const std::size_t e = static_cast<std::size_t>(e_);
        const std::size_t d = static_cast<std::size_t>(d_);
        const std::size_t width = detail::int_pow(e, r);
        std::vector<double> out(e * d * width, 0.0);
        std::vector<int> counts(e, 0);
        for (const auto& t : terms_) {
            for (std::size_t m = 0; m < width; ++m) {
                std::fill(counts.begin(), counts.end(), 0);
                std::size_t rem = m;
                for (int q = 0; q < r; ++q) {
                    counts[rem % e] += 1;
                    rem /= e;
                }
                double v = t.c;
                for (std::size_t j = 0; j < e && v != 0.0; ++j) {
                    int p = t.powers[j];
                    int k = counts[j];
                    if (k > p) {
                        v = 0.0;
                        break;
                    }
                    for (int q = 0; q < k; ++q) v *= static_cast<double>(p - q);
                    v *= std::pow(y[j], static_cast<double>(p - k));
                }
                if (v != 0.0)
                    out[(static_cast<std::size_t>(t.out) * d +
                         static_cast<std::size_t>(t.coord)) *
                            width +
                        m] += v;
            }
        }
        return out;
    }

  private:
    int e_, d_;
    std::vector<Term> terms_;
};

// Central finite differences on top of a plain evaluator; prototyping aid,
// accuracy degrades with each derivative order.
class FiniteDifferenceField final : public VectorField {
  public:
    using Evaluator = std::function<std::vector<double>(const std::vector<double>&)>;

    FiniteDifferenceField(int state_dim, int driver_dim, Evaluator f,
                          int declared_order = 1, double base_step = 1e-5)
        : e_(state_dim), d_(driver_dim), f_(std::move(f)), order_(declared_order),
          h_(base_step) {}

    int state_dim() const override { return e_; }
    int driver_dim() const override { return d_; }
    int order() const override { return order_; }

    std::vector<double> derivative(const std::vector<double>& y, int r) const override {
        check_point(y, r);
        if (r == 0) return f_(y);
        double scale = 1.0;
        for (double v : y) scale = std::max(scale, std::abs(v));
        const double h = h_ * scale;
        const std::size_t e = static_cast<std::size_t>(e_);
        std::vector<double> out;
        for (std::size_t j = 0; j < e; ++j) {
            std::vector<double> up = y, dn = y;
            up[j] += h;
            dn[j] -= h;
            auto a = derivative_unchecked(up, r - 1);
            auto b = derivative_unchecked(dn, r - 1);
            if (out.empty()) out.assign(a.size() * e, 0.0);
            // interleave so the new index j becomes the innermost digit
            for (std::size_t base = 0; base < a.size(); ++base)
                out[base * e + j] = (a[base] - b[base]) / (2.0 * h);
        }
        return out;
    }

  private:
    std::vector<double> derivative_unchecked(const std::vector<double>& y, int r) const {
        if (r == 0) return f_(y);
        return derivative(y, r);
    }

    int e_, d_;
    Evaluator f_;
    int order_;
    double h_;
};

} // namespace roughsig
