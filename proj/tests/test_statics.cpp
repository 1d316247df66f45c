// Directional comparative-statics properties of the control barriers on the
// production mesh. One cached solve per parameter set; directions are checked
// with a one-cell tolerance.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <string>

#include "ambinv/io.hpp"
#include "ambinv/policy.hpp"
#include "ambinv/solver.hpp"

using namespace ambinv;

namespace {

struct Policy {
    ValueField field;
    BarrierSet barriers;
};

const Policy& solved(const ModelParams& p, const std::string& key) {
    static std::map<std::string, Policy> cache;
    auto it = cache.find(key);
    if (it == cache.end()) {
        Policy pol;
        pol.field = solve(p, GridSpec{});
        pol.barriers = extract_barriers(classify(pol.field, p), pol.field);
        it = cache.emplace(key, std::move(pol)).first;
    }
    return it->second;
}

ModelParams base() {
    ModelParams p;
    p.gamma = 20.0;
    return p;
}

constexpr double kCell = 0.5; // h1 of the production mesh

int last_slice(const BarrierSet& bs) { return bs.grid.n_tau() - 1; }

// Belief level of the global value minimum: the center of the target region.
double target_m(const ValueField& f) {
    const Grid& g = f.grid();
    const int it = g.n_tau() - 1;
    double best = 1e300;
    double best_m = 0.0;
    for (int im = 1; im + 1 < g.n_m(); ++im)
        for (int ix = 1; ix + 1 < g.n_x(); ++ix)
            if (f.at(it, ix, im) < best) {
                best = f.at(it, ix, im);
                best_m = g.m(im);
            }
    return best_m;
}

} // namespace

TEST_CASE("risk expands the continuation region on the learning side") {
    ModelParams p_lo = base();
    p_lo.b = 0.1;
    ModelParams p_hi = base();
    p_hi.b = 0.3;
    const Policy& lo = solved(p_lo, "b=0.1");
    const Policy& hi = solved(p_hi, "b=0.3");
    // Zero-trend slices differ per b, so compare each at its own a/b level.
    const Grid& g = lo.barriers.grid;
    const int it = last_slice(lo.barriers);
    const int im_lo = g.nearest_m_index(p_lo.a / p_lo.b);
    const int im_hi = g.nearest_m_index(p_hi.a / p_hi.b);
    const double w_lo = std::min(lo.barriers.upper_at(it, im_lo), g.spec().x_hi) -
                        std::max(lo.barriers.lower_at(it, im_lo), g.spec().x_lo);
    const double w_hi = std::min(hi.barriers.upper_at(it, im_hi), g.spec().x_hi) -
                        std::max(hi.barriers.lower_at(it, im_hi), g.spec().x_lo);
    CHECK(w_hi >= w_lo - kCell);
}

TEST_CASE("a costlier lower control delays intervention on both sides") {
    const Policy& cheap = solved(base(), "ell=2");
    ModelParams p = base();
    p.ell = 4.0;
    const Policy& costly = solved(p, "ell=4");
    const Grid& g = cheap.barriers.grid;
    const int it = last_slice(cheap.barriers);
    for (double m : {0.0, 1.0}) {
        const int im = g.nearest_m_index(m);
        const double lo2 = cheap.barriers.lower_at(it, im);
        const double lo4 = costly.barriers.lower_at(it, im);
        const double hi2 = cheap.barriers.upper_at(it, im);
        const double hi4 = costly.barriers.upper_at(it, im);
        if (std::isfinite(lo2) && std::isfinite(lo4)) CHECK(lo4 <= lo2 + kCell);
        if (std::isfinite(hi2) && std::isfinite(hi4)) CHECK(hi4 >= hi2 - kCell);
    }
}

TEST_CASE("a larger drift level moves the target region up the belief axis") {
    ModelParams p0 = base();
    p0.a = 0.0;
    ModelParams p3 = base();
    p3.a = 0.3;
    const double m_hat0 = target_m(solved(p0, "a=0").field);
    const double m_hat3 = target_m(solved(p3, "a=0.3").field);
    // Zero-trend levels are a/b = 0 and 1.5.
    CHECK(m_hat3 >= m_hat0 + 2.0 * 0.25);
    CHECK(std::abs(m_hat0 - 0.0) <= 2.0 * kCell);
    CHECK(std::abs(m_hat3 - 1.5) <= 2.0 * kCell);
}

TEST_CASE("a costlier negative inventory triggers the lower control earlier") {
    const Policy& mild = solved(base(), "c_lo=1");
    ModelParams p = base();
    p.c_lo = 3.0;
    const Policy& harsh = solved(p, "c_lo=3");
    const Grid& g = mild.barriers.grid;
    const int it = last_slice(mild.barriers);
    for (double m : {0.0, 1.0}) {
        const int im = g.nearest_m_index(m);
        const double lo1 = mild.barriers.lower_at(it, im);
        const double lo3 = harsh.barriers.lower_at(it, im);
        if (std::isfinite(lo1) && std::isfinite(lo3)) CHECK(lo3 >= lo1 - kCell);
    }
}

TEST_CASE("continuation nodes keep the gradient between the control slopes") {
    const Policy& pol = solved(base(), "ell=2");
    const ModelParams p = base();
    const Grid& g = pol.field.grid();
    const RegionLabels labels = classify(pol.field, p);
    const double allow = 2.0 * kCell * std::max(p.c_lo, p.c_hi) / p.rho;
    const int it = last_slice(pol.barriers);
    for (int im = 1; im + 1 < g.n_m(); ++im)
        for (int ix = 1; ix + 1 < g.n_x(); ++ix) {
            if (labels.at(it, ix, im) != RegionLabel::continuation) continue;
            const double central =
                (pol.field.at(it, ix + 1, im) - pol.field.at(it, ix - 1, im)) /
                (2.0 * g.spec().h1);
            CHECK(central > -p.ell - allow);
            CHECK(central < p.uu + allow);
        }
}
