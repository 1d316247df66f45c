#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ambinv/errors.hpp"
#include "ambinv/policy.hpp"
#include "ambinv/solver.hpp"

using namespace ambinv;

namespace {

GridSpec small_spec() {
    GridSpec s;
    s.x_lo = -6;
    s.x_hi = 6;
    s.T = 2.0;
    return s;
}

ModelParams small_params() {
    ModelParams p;
    p.T = 2.0;
    p.m_lo = -2;
    p.m_hi = 2;
    return p;
}

const ValueField& solved_small() {
    static const ValueField f = [] {
        SolveOptions opts;
        opts.tol = 1e-10;
        return solve(small_params(), small_spec(), opts);
    }();
    return f;
}

} // namespace

TEST_CASE("domain edges are classified as control regions") {
    const ValueField& f = solved_small();
    const ModelParams p = small_params();
    const RegionLabels labels = classify(f, p);
    const Grid& g = f.grid();
    const int it = g.n_tau() - 1;
    for (int im = 0; im < g.n_m(); ++im) {
        CHECK(labels.at(it, 0, im) == RegionLabel::lower_control);
        CHECK(labels.at(it, g.n_x() - 1, im) == RegionLabel::upper_control);
    }
}

TEST_CASE("target nodes are continuation nodes") {
    const ValueField& f = solved_small();
    const RegionLabels labels = classify(f, small_params());
    const BarrierSet bs = extract_barriers(labels, f);
    const Grid& g = f.grid();
    const int it = g.n_tau() - 1;
    for (int im = 1; im + 1 < g.n_m(); ++im) {
        const int ix = g.nearest_x_index(bs.target_at(it, im));
        CHECK(labels.at(it, ix, im) == RegionLabel::continuation);
    }
}

TEST_CASE("labels partition the grid") {
    const ValueField& f = solved_small();
    const RegionLabels labels = classify(f, small_params());
    CHECK(labels.labels.size() == f.grid().node_count());
    // A convex field cannot satisfy both control tests at once, so the single
    // label per node is well defined; spot-check the enum is always valid.
    for (RegionLabel l : labels.labels)
        CHECK((l == RegionLabel::continuation || l == RegionLabel::lower_control ||
               l == RegionLabel::upper_control));
}

TEST_CASE("symmetric setup mirrors the labels with lower and upper swapped") {
    ModelParams p = small_params();
    p.a = 0.0;
    SolveOptions opts;
    opts.tol = 1e-10;
    const ValueField f = solve(p, small_spec(), opts);
    const RegionLabels labels = classify(f, p);
    const Grid& g = f.grid();
    for (int it = 0; it < g.n_tau(); ++it)
        for (int im = 0; im < g.n_m(); ++im)
            for (int ix = 0; ix < g.n_x(); ++ix) {
                const RegionLabel a = labels.at(it, ix, im);
                const RegionLabel b =
                    labels.at(it, g.n_x() - 1 - ix, g.n_m() - 1 - im);
                if (a == RegionLabel::lower_control)
                    CHECK(b == RegionLabel::upper_control);
                else if (a == RegionLabel::upper_control)
                    CHECK(b == RegionLabel::lower_control);
                else
                    CHECK(b == RegionLabel::continuation);
            }
}

TEST_CASE("barriers order as lower < target < upper") {
    const ValueField& f = solved_small();
    const RegionLabels labels = classify(f, small_params());
    const BarrierSet bs = extract_barriers(labels, f);
    const Grid& g = f.grid();
    CHECK_FALSE(bs.any_nonmonotone());
    for (int it = 1; it < g.n_tau(); ++it)
        for (int im = 1; im + 1 < g.n_m(); ++im) {
            const double lo = bs.lower_at(it, im);
            const double hi = bs.upper_at(it, im);
            const double target = bs.target_at(it, im);
            if (std::isfinite(lo)) CHECK(lo < target);
            if (std::isfinite(hi)) CHECK(target < hi);
        }
}

TEST_CASE("slice at tau = 0 has no control anywhere") {
    const ValueField& f = solved_small();
    const RegionLabels labels = classify(f, small_params());
    const BarrierSet bs = extract_barriers(labels, f);
    for (int im = 0; im < f.grid().n_m(); ++im) {
        CHECK(std::isinf(bs.lower_at(0, im)));
        CHECK(bs.lower_at(0, im) < 0.0);
        CHECK(std::isinf(bs.upper_at(0, im)));
        CHECK(bs.upper_at(0, im) > 0.0);
        CHECK(bs.target_at(0, im) == 0.0); // ties resolve toward small |x|
    }
}

TEST_CASE("worst-case drift diagnostics") {
    const ValueField& f = solved_small();
    const Grid& g = f.grid();

    ModelParams p0 = small_params();
    p0.gamma = 0.0;
    CHECK(worst_case_drift(f, 5, 5, 1.0, g, p0) == 0.0);

    ModelParams ps = small_params();
    ps.s = 0.0;
    CHECK(worst_case_drift(f, 5, 5, 1.0, g, ps) == 0.0);

    // Convexity puts a positive slope deep in the upper region, so the
    // adversarial tilt pushes further up.
    const ModelParams p = small_params();
    const int ix_hi = g.nearest_x_index(5.0);
    CHECK(worst_case_drift(f, ix_hi, g.nearest_m_index(0.0), p.T, g, p) > 0.0);

    CHECK_THROWS_AS(worst_case_drift(f, 0, 5, 1.0, g, p), ConfigError);
}
