#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "roughsig/sewing.hpp"

#include "support/oracles.hpp"
#include "support/testutil.hpp"

using namespace roughsig;

namespace {

// log-log slope by least squares
double fitted_slope(const std::vector<double>& h, const std::vector<double>& err) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
        double x = std::log(h[i]), y = std::log(err[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

PathSamples sampled(const std::function<double(double)>& f, std::size_t n_points) {
    PathSamples p;
    p.times = uniform_times(n_points);
    p.values.reserve(n_points);
    for (double t : p.times) p.values.push_back({f(t)});
    return p;
}

} // namespace

TEST_CASE("sew reproduces additive two-parameter maps exactly", "[sewing]") {
    auto f = [](double t) { return std::sin(3 * t) + t * t; };
    auto times = uniform_times(17);
    auto xi = TwoParameterMap::from_function(times, 1, [&](std::size_t i, std::size_t j) {
        return std::vector<double>{f(times[j]) - f(times[i])};
    });
    REQUIRE(sew_defect(xi) < 1e-14);
    auto path = sew(xi);
    for (std::size_t j = 0; j < times.size(); ++j)
        REQUIRE(path.values[j][0] == Catch::Approx(f(times[j]) - f(times[0])).margin(1e-12));
}

TEST_CASE("sew defect detects a non-additive entry", "[sewing]") {
    auto times = uniform_times(6);
    auto xi = TwoParameterMap::from_function(times, 1, [&](std::size_t i, std::size_t j) {
        return std::vector<double>{times[j] - times[i]};
    });
    xi.vals[xi.tri(1, 4)][0] += 0.25;
    REQUIRE(sew_defect(xi) == Catch::Approx(0.25).margin(1e-12));
}

TEST_CASE("Young integral of t against t^2 converges to 2/3", "[sewing]") {
    // oracle: closed form 2/3, cross-checked by quadrature
    double quad = oracles::stieltjes_quadrature([](double t) { return t; },
                                                [](double t) { return t * t; }, 0.0, 1.0);
    REQUIRE(quad == Catch::Approx(2.0 / 3.0).margin(1e-6));

    std::vector<double> hs, errs;
    for (std::size_t n : {64u, 128u, 256u, 512u, 1024u, 2048u}) {
        auto y = scalar_matrix_path(sampled([](double t) { return t; }, n + 1));
        auto x = sampled([](double t) { return t * t; }, n + 1);
        auto integral = young_integral(y, x);
        double err = std::abs(integral.values.back()[0] - 2.0 / 3.0);
        hs.push_back(1.0 / static_cast<double>(n));
        errs.push_back(err);
    }
    REQUIRE(errs.back() < 1e-3);
    REQUIRE(fitted_slope(hs, errs) >= 0.9);
}

TEST_CASE("Young integral handles mismatched grids via the union grid", "[sewing]") {
    auto y = scalar_matrix_path(sampled([](double t) { return t; }, 101));
    PathSamples x;
    x.times = uniform_times(173);
    for (double t : x.times) x.values.push_back({t * t});
    auto integral = young_integral(y, x);
    REQUIRE(integral.size() >= 173);
    REQUIRE(integral.values.back()[0] == Catch::Approx(2.0 / 3.0).margin(5e-3));
}

TEST_CASE("Young remainder shrinks at the Hoelder-sum rate", "[sewing]") {
    // Y of Hoelder exponent 0.6, X of exponent 0.55; remainder per interval
    // scales like h^(alpha+beta) = h^1.15.
    auto yf = [](double t) { return 1.0 + std::pow(t, 0.6); };
    auto xf = [](double t) { return std::pow(t, 0.55); };

    const std::size_t fine_n = 1u << 15;
    auto yfine = scalar_matrix_path(sampled(yf, fine_n + 1));
    auto xfine = sampled(xf, fine_n + 1);
    auto ref = young_integral(yfine, xfine); // reference values on the fine grid

    std::vector<double> hs, rems;
    for (std::size_t level = 3; level <= 7; ++level) {
        const std::size_t n = 1u << level;
        const std::size_t stride = fine_n / n;
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double t0 = ref.times[i * stride], t1 = ref.times[(i + 1) * stride];
            double fine_inc = ref.values[(i + 1) * stride][0] - ref.values[i * stride][0];
            double local = yf(t0) * (xf(t1) - xf(t0));
            worst = std::max(worst, std::abs(fine_inc - local));
        }
        hs.push_back(1.0 / static_cast<double>(n));
        rems.push_back(worst);
    }
    double slope = fitted_slope(hs, rems);
    REQUIRE(slope >= std::min(1.0, 0.6 + 0.55) - 0.1);
}

TEST_CASE("sewing constant fitted on the coarse grid survives refinement", "[sewing]") {
    // local model Xi_{s,t} = Y_s X_{s,t} for the Hoelder pair above; the
    // discrete sewing bound |xi_t - xi_s - Xi_{s,t}| <= C (t-s)^theta with
    // theta = 1.15 should hold with one fitted C across dyadic levels.
    auto yf = [](double t) { return 1.0 + std::pow(t, 0.6); };
    auto xf = [](double t) { return std::pow(t, 0.55); };
    const double theta = 1.15;
    const double fit_margin = 1.25;

    auto build = [&](std::size_t n) {
        auto times = uniform_times(n + 1);
        return TwoParameterMap::from_function(
            times, 1, [&](std::size_t i, std::size_t j) {
                return std::vector<double>{yf(times[i]) * (xf(times[j]) - xf(times[i]))};
            });
    };

    auto ratio_sup = [&](const TwoParameterMap& xi) {
        auto path = sew(xi);
        double worst = 0.0;
        for (std::size_t i = 0; i < path.size(); ++i)
            for (std::size_t j = i + 1; j < path.size(); ++j) {
                double defect = std::abs(path.values[j][0] - path.values[i][0] -
                                         xi.at(i, j)[0]);
                double w = std::pow(path.times[j] - path.times[i], theta);
                worst = std::max(worst, defect / w);
            }
        return worst;
    };

    double fitted = fit_margin * ratio_sup(build(8));
    for (std::size_t n : {16u, 32u, 64u, 128u}) REQUIRE(ratio_sup(build(n)) <= fitted);
}
