#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "roughsig/errors.hpp"
#include "roughsig/path.hpp"

namespace roughsig {

enum class GenKind { bm, fbm };

// Reproducibility contract: trajectories are generated by mt19937_64 (fully
// pinned by the standard) fed through the Box-Muller transform below, so the
// same spec yields bit-identical output on any platform. Ensemble members
// use derived seeds: member k draws from seed + k.
struct GenSpec {
    int d = 1;
    std::size_t n = 1;     // steps; the sampled path has n + 1 points
    double T = 1.0;
    std::uint64_t seed = 0;
    GenKind kind = GenKind::bm;
    double H = 0.5;        // Hurst exponent, fbm only

    void validate() const {
        if (d < 1) throw InputError("generator spec needs d >= 1");
        if (n < 1) throw InputError("generator spec needs n >= 1");
        if (!(T > 0.0)) throw InputError("generator spec needs T > 0");
        if (kind == GenKind::fbm && !(H > 0.0 && H < 1.0))
            throw InputError("fbm needs Hurst exponent in (0,1)");
    }
};

namespace detail {

// Standard normals from the 53-bit uniforms u = (x >> 11) * 2^-53; the
// radial uniform is shifted by one ulp to stay positive under the log.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : rng_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        constexpr double scale = 0x1.0p-53;
        constexpr double two_pi = 6.283185307179586476925286766559;
        double u1 = static_cast<double>((rng_() >> 11) + 1) * scale;
        double u2 = static_cast<double>(rng_() >> 11) * scale;
        double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(two_pi * u2);
        have_spare_ = true;
        return r * std::cos(two_pi * u2);
    }

private:
    std::mt19937_64 rng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace detail

// Exact fractional Brownian covariance on the positive axis.
inline double fbm_covariance(double s, double t, double H) {
    double h2 = 2.0 * H;
    return 0.5 * (std::pow(s, h2) + std::pow(t, h2) - std::pow(std::abs(t - s), h2));
}

// Brownian sample on the uniform grid: i.i.d. increments of variance T/n per
// coordinate, drawn step-major, coordinate-minor.
inline PathSamples sample_bm(const GenSpec& spec, std::uint64_t trajectory = 0) {
    spec.validate();
    if (spec.kind != GenKind::bm) throw InputError("sample_bm needs kind = bm");
    detail::GaussianStream g(spec.seed + trajectory);
    const double dt = spec.T / static_cast<double>(spec.n);
    const double sigma = std::sqrt(dt);
    PathSamples p;
    p.times.reserve(spec.n + 1);
    p.values.reserve(spec.n + 1);
    std::vector<double> cur(static_cast<std::size_t>(spec.d), 0.0);
    p.times.push_back(0.0);
    p.values.push_back(cur);
    for (std::size_t k = 1; k <= spec.n; ++k) {
        for (auto& c : cur) c += sigma * g.next();
        p.times.push_back(static_cast<double>(k) * dt);
        p.values.push_back(cur);
    }
    return p;
}

// Fractional Brownian motion with exact grid covariance: one Cholesky factor
// of the covariance matrix colors a standard normal vector per coordinate.
// On factorization failure a single 1e-12 identity jitter is retried.
inline PathSamples sample_fbm(const GenSpec& spec, std::uint64_t trajectory = 0) {
    spec.validate();
    if (spec.kind != GenKind::fbm) throw InputError("sample_fbm needs kind = fbm");
    const std::size_t n = spec.n;
    Eigen::MatrixXd cov(n, n);
    const double dt = spec.T / static_cast<double>(n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            cov(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
                fbm_covariance(static_cast<double>(a + 1) * dt,
                               static_cast<double>(b + 1) * dt, spec.H);
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success) {
        cov.diagonal().array() += 1e-12;
        llt.compute(cov);
        if (llt.info() != Eigen::Success)
            throw NumericalError("fbm covariance factorization failed after jitter");
    }
    Eigen::MatrixXd L = llt.matrixL();
    detail::GaussianStream g(spec.seed + trajectory);
    PathSamples p;
    p.times.reserve(n + 1);
    p.values.reserve(n + 1);
    p.times.push_back(0.0);
    for (std::size_t k = 1; k <= n; ++k) p.times.push_back(static_cast<double>(k) * dt);
    p.values.assign(n + 1, std::vector<double>(static_cast<std::size_t>(spec.d), 0.0));
    Eigen::VectorXd z(n);
    for (int c = 0; c < spec.d; ++c) {
        for (std::size_t k = 0; k < n; ++k) z(static_cast<Eigen::Index>(k)) = g.next();
        Eigen::VectorXd x = L * z;
        for (std::size_t k = 0; k < n; ++k)
            p.values[k + 1][static_cast<std::size_t>(c)] = x(static_cast<Eigen::Index>(k));
    }
    return p;
}

inline PathSamples sample_path(const GenSpec& spec, std::uint64_t trajectory = 0) {
    return spec.kind == GenKind::bm ? sample_bm(spec, trajectory)
                                    : sample_fbm(spec, trajectory);
}

} // namespace roughsig
