#pragma once

#include <cstddef>
#include <vector>

#include "ambinv/model.hpp"

namespace ambinv {

// Mesh specification. Bounds and steps must tile exactly: (x_hi - x_lo)/h1,
// (m_hi - m_lo)/h2 and T/delta must be integers to within 1e-9.
struct GridSpec {
    double x_lo = -30.0;
    double x_hi = 30.0;
    double h1 = 0.5;   // inventory step
    double h2 = 0.25;  // belief step
    double delta = 0.1; // time step
    double T = 20.0;
};

// Immutable uniform mesh over (tau, x, m) with index arithmetic. Levels are
// computed by multiplication (lo + k*h), never by repeated addition.
class Grid {
public:
    static constexpr int kNoNeighbor = -1;

    Grid() = default;
    Grid(const GridSpec& spec, const ModelParams& params);

    const GridSpec& spec() const { return spec_; }

    int n_tau() const { return static_cast<int>(tau_levels_.size()); }
    int n_x() const { return static_cast<int>(x_levels_.size()); }
    int n_m() const { return static_cast<int>(m_levels_.size()); }

    double tau(int it) const { return tau_levels_[static_cast<std::size_t>(it)]; }
    double x(int ix) const { return x_levels_[static_cast<std::size_t>(ix)]; }
    double m(int im) const { return m_levels_[static_cast<std::size_t>(im)]; }

    const std::vector<double>& tau_levels() const { return tau_levels_; }
    const std::vector<double>& x_levels() const { return x_levels_; }
    const std::vector<double>& m_levels() const { return m_levels_; }

    std::size_t slice_size() const {
        return static_cast<std::size_t>(n_x()) * static_cast<std::size_t>(n_m());
    }
    std::size_t node_count() const {
        return slice_size() * static_cast<std::size_t>(n_tau());
    }

    // Flat offset of (i_tau, i_x, i_m); x varies fastest within an m-row.
    std::size_t flat(int it, int ix, int im) const {
        return (static_cast<std::size_t>(it) * static_cast<std::size_t>(n_m()) +
                static_cast<std::size_t>(im)) *
                   static_cast<std::size_t>(n_x()) +
               static_cast<std::size_t>(ix);
    }
    void unflatten(std::size_t offset, int& it, int& ix, int& im) const {
        ix = static_cast<int>(offset % static_cast<std::size_t>(n_x()));
        const std::size_t rest = offset / static_cast<std::size_t>(n_x());
        im = static_cast<int>(rest % static_cast<std::size_t>(n_m()));
        it = static_cast<int>(rest / static_cast<std::size_t>(n_m()));
    }
    std::size_t row_offset(int im) const {
        return static_cast<std::size_t>(im) * static_cast<std::size_t>(n_x());
    }

    // Neighbor index or kNoNeighbor at the domain edge; never wraps.
    int x_neighbor(int ix, int step) const {
        const int j = ix + step;
        return (j < 0 || j >= n_x()) ? kNoNeighbor : j;
    }
    int m_neighbor(int im, int step) const {
        const int j = im + step;
        return (j < 0 || j >= n_m()) ? kNoNeighbor : j;
    }

    int nearest_x_index(double x) const;
    int nearest_m_index(double m) const;
    // Largest i with tau(i) <= tau (clamped to [0, n_tau-1]).
    int tau_floor_index(double tau) const;

private:
    GridSpec spec_;
    std::vector<double> tau_levels_;
    std::vector<double> x_levels_;
    std::vector<double> m_levels_;
};

// Builds and validates the mesh. Throws ConfigError on non-integer divisions
// or inverted bounds.
Grid build_grid(const GridSpec& spec, const ModelParams& params);

// Diagnostic for the step-ratio condition h1/h2 in (s/(b(1+sT)), s/b) and the
// measured stencil clamping it is meant to prevent.
struct RatioReport {
    double ratio = 0.0;          // h1/h2
    double interval_lo = 0.0;    // s/(b(1+sT))
    double interval_hi = 0.0;    // s/b
    bool vacuous = false;        // s == 0: no learning, constraint empty
    bool inside_interval = false;
    double worst_entry = 0.0;        // aggregate negative rate at the worst node
    double max_clamped_mass = 0.0;   // worst clamped fraction of a node's mass
    long clamped_nodes = 0;
    long total_nodes = 0;
};

enum class StencilMode;
RatioReport validate_ratio(const GridSpec& spec, const ModelParams& params,
                           StencilMode mode);

} // namespace ambinv
