#include "ambinv/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ambinv/errors.hpp"
#include "ambinv/stencil.hpp"

namespace ambinv {

namespace {

long exact_count(double span, double step, const char* what) {
    if (!(step > 0.0)) throw ConfigError(std::string(what) + ": step must be positive");
    const double ratio = span / step;
    const double rounded = std::round(ratio);
    if (std::abs(ratio - rounded) > 1e-9 || rounded < 1.0)
        throw ConfigError(std::string(what) + ": bounds are not an integer number of steps");
    return static_cast<long>(rounded);
}

std::vector<double> levels(double lo, double step, long count) {
    std::vector<double> out(static_cast<std::size_t>(count) + 1);
    for (long k = 0; k <= count; ++k)
        out[static_cast<std::size_t>(k)] = lo + static_cast<double>(k) * step;
    return out;
}

int nearest_index(const std::vector<double>& lv, double lo, double step, double v) {
    const double raw = (v - lo) / step;
    long k = std::lround(raw);
    k = std::clamp(k, 0L, static_cast<long>(lv.size()) - 1L);
    return static_cast<int>(k);
}

} // namespace

Grid::Grid(const GridSpec& spec, const ModelParams& params) : spec_(spec) {
    if (!(spec.x_lo < 0.0 && 0.0 < spec.x_hi))
        throw ConfigError("grid: inventory bounds must straddle zero (x_lo < 0 < x_hi)");
    if (!(params.m_lo < params.m_hi))
        throw ConfigError("grid: belief bounds must satisfy m_lo < m_hi");
    const long n_t = exact_count(spec.T, spec.delta, "grid tau");
    const long n_x = exact_count(spec.x_hi - spec.x_lo, spec.h1, "grid x");
    const long n_m = exact_count(params.m_hi - params.m_lo, spec.h2, "grid m");
    tau_levels_ = levels(0.0, spec.delta, n_t);
    x_levels_ = levels(spec.x_lo, spec.h1, n_x);
    m_levels_ = levels(params.m_lo, spec.h2, n_m);
}

int Grid::nearest_x_index(double x) const {
    return nearest_index(x_levels_, spec_.x_lo, spec_.h1, x);
}

int Grid::nearest_m_index(double m) const {
    return nearest_index(m_levels_, m_levels_.front(), spec_.h2, m);
}

int Grid::tau_floor_index(double tau) const {
    const double raw = tau / spec_.delta;
    long k = static_cast<long>(std::floor(raw + 1e-12));
    k = std::clamp(k, 0L, static_cast<long>(tau_levels_.size()) - 1L);
    return static_cast<int>(k);
}

Grid build_grid(const GridSpec& spec, const ModelParams& params) {
    return Grid(spec, params);
}

RatioReport validate_ratio(const GridSpec& spec, const ModelParams& params,
                           StencilMode mode) {
    RatioReport rep;
    rep.ratio = spec.h1 / spec.h2;
    if (params.s > 0.0) {
        rep.interval_lo = params.s / (params.b * (1.0 + params.s * params.T));
        rep.interval_hi = params.s / params.b;
        rep.inside_interval = rep.ratio > rep.interval_lo && rep.ratio < rep.interval_hi;
    } else {
        rep.vacuous = true; // no learning: the constraint is empty
    }

    const Grid grid(spec, params);
    for (int it = 1; it < grid.n_tau(); ++it) {
        const double S = riccati_variance(params.s, params.T - grid.tau(it));
        for (int im = 1; im + 1 < grid.n_m(); ++im) {
            const Stencil st =
                continuation_stencil_at(grid.m(im), S, params, spec, mode);
            rep.total_nodes++;
            if (st.clamped_mass > 0.0) {
                rep.clamped_nodes++;
                rep.max_clamped_mass = std::max(rep.max_clamped_mass, st.clamped_mass);
                rep.worst_entry =
                    std::min(rep.worst_entry, -st.clamped_mass * st.denominator);
            }
        }
    }
    return rep;
}

} // namespace ambinv
