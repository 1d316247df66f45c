#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "ambinv/errors.hpp"
#include "ambinv/model.hpp"
#include "ambinv/normal.hpp"

using namespace ambinv;

namespace {

// Independent oracle for the normal CDF: Taylor series of erf, accurate to
// ~1e-14 for |x| <= 3. Deliberately a different algorithm than the library's
// erfc-based routine.
double erf_series(double x) {
    const double two_over_sqrt_pi = 1.1283791670955126;
    double term = x;
    double sum = x;
    for (int n = 1; n < 60; ++n) {
        term *= -x * x / n;
        sum += term / (2 * n + 1);
    }
    return two_over_sqrt_pi * sum;
}

double cdf_oracle(double x) { return 0.5 * (1.0 + erf_series(x / std::sqrt(2.0))); }

} // namespace

TEST_CASE("riccati variance closed form") {
    CHECK(riccati_variance(0.1, 0.0) == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(riccati_variance(0.1, 20.0) == doctest::Approx(1.0 / 30.0).epsilon(1e-14));
    CHECK(riccati_variance(0.0, 7.0) == 0.0);

    double prev = riccati_variance(0.1, 0.0);
    for (double t = 0.5; t <= 50.0; t += 0.5) {
        const double cur = riccati_variance(0.1, t);
        CHECK(cur <= prev + 1e-15);
        CHECK(cur <= 0.1);
        prev = cur;
    }
}

TEST_CASE("riccati variance satisfies the discrete step to O(delta^2)") {
    const double s0 = 0.3;
    const double t = 2.0;
    const double S = riccati_variance(s0, t);
    auto err = [&](double delta) {
        return std::abs(riccati_variance(s0, t + delta) - (S - S * S * delta));
    };
    const double ratio = err(1e-2) / err(1e-3);
    CHECK(ratio > 90.0);
    CHECK(ratio < 110.0);
}

TEST_CASE("drift coefficient") {
    ModelParams p;
    CHECK(drift_coefficient(0.0, p) == doctest::Approx(0.2));
    CHECK(drift_coefficient(1.0, p) == doctest::Approx(0.0));
    CHECK(drift_coefficient(-10.0, p) == doctest::Approx(2.2));
}

TEST_CASE("holding cost values and convexity") {
    ModelParams p;
    CHECK(holding_cost(0.0, p) == 0.0);
    p.c_lo = 2.0;
    CHECK(holding_cost(-3.0, p) == doctest::Approx(6.0));
    p.c_hi = 1.0;
    CHECK(holding_cost(5.0, p) == doctest::Approx(5.0));

    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> U(-20.0, 20.0);
    std::uniform_real_distribution<double> L(0.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        const double x = U(gen), y = U(gen), lam = L(gen);
        const double lhs = holding_cost(lam * x + (1 - lam) * y, p);
        const double rhs = lam * holding_cost(x, p) + (1 - lam) * holding_cost(y, p);
        CHECK(lhs <= rhs + 1e-12);
    }
}

TEST_CASE("belief tail probability") {
    CHECK(belief_tail_probability(50.0, 20.0, 0.1) < 1e-10);

    double prev = 1.0;
    for (double h = 0.05; h <= 2.0; h += 0.05) {
        const double p = belief_tail_probability(h, 20.0, 0.1);
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
        CHECK(p <= prev + 1e-15);
        prev = p;
    }

    // t -> infinity: the argument tends to h / sqrt(s).
    const double p_limit = belief_tail_probability(0.2, 1e12, 0.1);
    const double expected = 2.0 * (1.0 - cdf_oracle(0.2 / std::sqrt(0.1)));
    CHECK(p_limit == doctest::Approx(expected).epsilon(1e-6));

    CHECK_THROWS_AS(belief_tail_probability(0.1, 0.0, 0.1), ConfigError);
    CHECK_THROWS_AS(belief_tail_probability(0.1, 1.0, 0.0), ConfigError);
}

TEST_CASE("confidence band") {
    const auto [lo_triv, hi_triv] = confidence_band(0.0, 0.3, 1.0);
    CHECK(lo_triv == doctest::Approx(0.0));
    CHECK(hi_triv == doctest::Approx(0.0));

    // 99% band: the half-percent quantile is about 2.576.
    CHECK(norm_quantile(1.0 - 0.005) == doctest::Approx(2.576).epsilon(2e-4));

    const auto [lo, hi] = confidence_band(0.0, 0.1, 0.01);
    CHECK(hi == doctest::Approx(2.5758293035489 * std::sqrt(0.1)).epsilon(1e-9));
    CHECK(lo == doctest::Approx(-hi).epsilon(1e-12));

    // Oracle: maximize sqrt(s^2 t / (1 + s t)) numerically over t in [0, 1e6];
    // the band radius must match z * sup within the tail of that horizon.
    const double s0 = 0.1;
    double w_num = 0.0;
    for (int k = 0; k <= 60000; ++k) {
        const double t = std::pow(10.0, -3.0 + k * (9.0 - -3.0) / 60000.0);
        if (t > 1e6) break;
        w_num = std::max(w_num, std::sqrt(s0 * s0 * t / (1.0 + s0 * t)));
    }
    const double z = norm_quantile(1.0 - 0.005);
    CHECK(hi == doctest::Approx(z * w_num).epsilon(1e-4));
}

TEST_CASE("driver") {
    ModelParams p;
    CHECK(driver(0.0, 0.0, 0.0, 0.1, p) == 0.0);
    CHECK(driver(1.0, 0.0, 0.0, 0.1, p) == doctest::Approx(-0.2));

    ModelParams q;
    q.gamma = 20.0;
    q.c_hi = 1.0;
    CHECK(driver(0.0, 2.0, 3.0, 0.1, q) == doctest::Approx(7.0));

    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> U(-5.0, 5.0);
    for (int i = 0; i < 500; ++i) {
        const double y = U(gen), z = U(gen), x = U(gen);
        const double S = std::abs(U(gen)) / 10.0;
        const double lhs = driver(y, z, x, S, q) - driver(y, 0.0, x, S, q);
        const double rhs = 0.5 * q.gamma * S * z * z;
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("auxiliary coordinate transform") {
    ModelParams p;
    {
        const auto [x1, x2] = to_aux_coordinates(1.0, 0.0, 0.1, p);
        CHECK(x1 == 1.0);
        CHECK(x2 == 1.0);
    }
    {
        const auto [x1, x2] = to_aux_coordinates(1.0, 1.0, 0.1, p);
        CHECK(x1 == 1.0);
        CHECK(x2 == doctest::Approx(-1.0)); // b/S = 2
    }
    {
        const auto [x, m] = from_aux_coordinates(1.0, 1.0, 0.1, p);
        CHECK(x == 1.0);
        CHECK(m == doctest::Approx(0.0));
    }
    {
        const auto [x, m] = from_aux_coordinates(1.0, -1.0, 0.1, p);
        CHECK(m == doctest::Approx(1.0));
    }

    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> U(-30.0, 30.0);
    std::uniform_real_distribution<double> Us(1e-3, 0.5);
    for (int i = 0; i < 1000; ++i) {
        const double x = U(gen), m = U(gen) / 3.0, S = Us(gen);
        const auto [x1, x2] = to_aux_coordinates(x, m, S, p);
        const auto [xr, mr] = from_aux_coordinates(x1, x2, S, p);
        CHECK(std::abs(xr - x) <= 1e-12);
        CHECK(std::abs(mr - m) <= 1e-12 * std::max(1.0, std::abs(m)));
    }

    CHECK_THROWS_AS(to_aux_coordinates(1.0, 1.0, 0.0, p), ConfigError);
    CHECK_THROWS_AS(from_aux_coordinates(1.0, 1.0, 0.0, p), ConfigError);
}

TEST_CASE("normal cdf and quantile agree with the series oracle") {
    for (double x = -3.0; x <= 3.0; x += 0.125)
        CHECK(norm_cdf(x) == doctest::Approx(cdf_oracle(x)).epsilon(1e-12));
    for (double p = 0.01; p < 1.0; p += 0.023) {
        const double x = norm_quantile(p);
        CHECK(norm_cdf(x) == doctest::Approx(p).epsilon(1e-11));
    }
    CHECK(norm_quantile(0.975) == doctest::Approx(1.9599639845).epsilon(1e-8));
}

TEST_CASE("parameter validation") {
    ModelParams p;
    CHECK_NOTHROW(p.validate());
    p.b = 0.0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = ModelParams{};
    p.m_lo = 0.5;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = ModelParams{};
    p.gamma = -1.0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
}
