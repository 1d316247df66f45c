#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ambinv/errors.hpp"
#include "ambinv/grid.hpp"
#include "ambinv/stencil.hpp"

using namespace ambinv;

TEST_CASE("default mesh has the expected node counts") {
    const Grid g(GridSpec{}, ModelParams{});
    CHECK(g.n_tau() == 201);
    CHECK(g.n_x() == 121);
    CHECK(g.n_m() == 81);
    CHECK(g.node_count() == 201u * 121u * 81u);
}

TEST_CASE("degenerate horizon gives two time levels") {
    GridSpec spec;
    spec.T = 0.1;
    ModelParams p;
    p.T = 0.1;
    const Grid g(spec, p);
    CHECK(g.n_tau() == 2);
    CHECK(g.tau(0) == 0.0);
    CHECK(g.tau(1) == doctest::Approx(0.1));
}

TEST_CASE("levels agree with a repeated-addition oracle to 1e-12") {
    const Grid g(GridSpec{}, ModelParams{});
    double acc = g.spec().x_lo;
    for (int k = 0; k < g.n_x(); ++k) {
        CHECK(std::abs(g.x(k) - acc) < 1e-12);
        CHECK(std::abs(g.x(k) - (g.spec().x_lo + k * g.spec().h1)) < 1e-12);
        acc += g.spec().h1;
    }
    acc = -10.0;
    for (int k = 0; k < g.n_m(); ++k) {
        CHECK(std::abs(g.m(k) - acc) < 1e-12);
        acc += g.spec().h2;
    }
}

TEST_CASE("flat index round trips on every node") {
    GridSpec spec;
    spec.x_lo = -3;
    spec.x_hi = 3;
    spec.T = 1.0;
    ModelParams p;
    p.T = 1.0;
    p.m_lo = -2;
    p.m_hi = 2;
    const Grid g(spec, p);
    for (int it = 0; it < g.n_tau(); ++it)
        for (int ix = 0; ix < g.n_x(); ++ix)
            for (int im = 0; im < g.n_m(); ++im) {
                int jt, jx, jm;
                g.unflatten(g.flat(it, ix, im), jt, jx, jm);
                CHECK(jt == it);
                CHECK(jx == ix);
                CHECK(jm == im);
            }
}

TEST_CASE("neighbor queries return a sentinel at the edges") {
    const Grid g(GridSpec{}, ModelParams{});
    CHECK(g.x_neighbor(0, -1) == Grid::kNoNeighbor);
    CHECK(g.x_neighbor(g.n_x() - 1, +1) == Grid::kNoNeighbor);
    CHECK(g.m_neighbor(0, -1) == Grid::kNoNeighbor);
    CHECK(g.m_neighbor(g.n_m() - 1, +1) == Grid::kNoNeighbor);
    CHECK(g.x_neighbor(0, +1) == 1);
    CHECK(g.m_neighbor(5, -1) == 4);
}

TEST_CASE("nearest index and tau floor lookups") {
    const Grid g(GridSpec{}, ModelParams{});
    CHECK(g.nearest_x_index(-30.0) == 0);
    CHECK(g.nearest_x_index(0.12) == 60);
    CHECK(g.nearest_x_index(99.0) == g.n_x() - 1);
    CHECK(g.nearest_m_index(0.0) == 40);
    CHECK(g.tau_floor_index(0.05) == 0);
    CHECK(g.tau_floor_index(0.1) == 1);
    CHECK(g.tau_floor_index(20.0) == 200);
    CHECK(g.tau_floor_index(1e9) == 200);
}

TEST_CASE("step-ratio interval matches the closed form") {
    const RatioReport rep =
        validate_ratio(GridSpec{}, ModelParams{}, StencilMode::positive_corrected);
    CHECK(rep.ratio == doctest::Approx(2.0));
    CHECK(rep.interval_lo == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(rep.interval_hi == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_FALSE(rep.inside_interval);
    CHECK_FALSE(rep.vacuous);
    // Defaults clamp the belief-axis entries for tau < T.
    CHECK(rep.max_clamped_mass > 0.0);
    CHECK(rep.clamped_nodes > 0);
}

TEST_CASE("no-learning mode flags the ratio constraint as vacuous") {
    ModelParams p;
    p.s = 0.0;
    const RatioReport rep = validate_ratio(GridSpec{}, p, StencilMode::positive_corrected);
    CHECK(rep.vacuous);
    CHECK(rep.max_clamped_mass == 0.0);
}

TEST_CASE("invalid meshes are rejected") {
    GridSpec spec;
    spec.h1 = 0.7; // 60 / 0.7 is not an integer
    CHECK_THROWS_AS(Grid(spec, ModelParams{}), ConfigError);

    GridSpec flipped;
    flipped.x_lo = 1.0;
    flipped.x_hi = 31.0;
    CHECK_THROWS_AS(Grid(flipped, ModelParams{}), ConfigError);

    GridSpec bad_step;
    bad_step.delta = -0.1;
    CHECK_THROWS_AS(Grid(bad_step, ModelParams{}), ConfigError);
}
