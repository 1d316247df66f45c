#pragma once

#include <span>

#include "ambinv/stencil.hpp"
#include "ambinv/value_field.hpp"

namespace ambinv {

struct SolveOptions {
    double tol = 1e-8;            // sup-norm change per Jacobi sweep
    int max_inner_iters = 10000;
    StencilMode mode = StencilMode::positive_corrected;
    double clamp_warn_threshold = 0.05;
    bool clamp_is_fatal = false;  // abort instead of warn past the threshold
};

struct SolveStats {
    long total_sweeps = 0;
    int max_sweeps_per_slice = 0;
    double max_clamped_mass = 0.0;
    bool clamp_warning = false;
};

// Upwind directional derivative estimates along (b, S): dplus is the positive
// part of the one-step forward combination, dminus the negative part of the
// one-step backward combination, both nonnegative magnitudes. Their sum
// estimates |b V_x + S V_m| and their difference the signed value. Missing
// neighbors at domain edges contribute zero to the respective combination.
struct GradientPair {
    double dplus = 0.0;
    double dminus = 0.0;
};

GradientPair upwind_gradient_pair(std::span<const double> slice, int ix, int im,
                                  double tau, const Grid& grid,
                                  const ModelParams& params);

// One composite sweep of the slice operator at level tau: the three-branch
// minimum at interior nodes (continuation branch reads the same-tau neighbors
// from `iterate` and the time-regress move from `prev_slice`), then the
// x-edge control rules and the belief-boundary reflections applied to the
// freshly written values. Throws NumericalError with node coordinates when a
// non-finite value appears.
void bellman_apply(std::span<const double> prev_slice, std::span<const double> iterate,
                   double tau, const Grid& grid, const ModelParams& params,
                   StencilMode mode, std::span<double> out);

// Equivalent operator with the quadratic ambiguity penalty absorbed into
// tilt weights on the upwind-active neighbors instead of being added as a
// running cost. Agrees with bellman_apply up to floating-point regrouping.
void bellman_apply_q(std::span<const double> prev_slice, std::span<const double> iterate,
                     double tau, const Grid& grid, const ModelParams& params,
                     StencilMode mode, std::span<double> out);

// Tilt weights at one node for a given field: rates toward x+-h1 and m+-h2
// plus their total, and the tilted interpolation interval 1/(denominator +
// total). Exposed for the operator-equivalence and normalization tests.
struct TiltWeights {
    double q_x_up = 0.0;
    double q_x_dn = 0.0;
    double q_m_up = 0.0;
    double q_m_dn = 0.0;
    double total = 0.0; // rate q lower-bar
    double dt_q = 0.0;  // 1/(p lower-bar + q lower-bar)
};

TiltWeights tilt_weights(std::span<const double> slice, int ix, int im, double tau,
                         const Grid& grid, const ModelParams& params);

// Marches tau from delta to T, iterating bellman_apply within each slice to
// its fixed point (Jacobi sweeps, warm-started from the previous slice).
// Deterministic. Throws NumericalError when max_inner_iters is exceeded or
// the residual grows for five consecutive sweeps.
ValueField solve(const ModelParams& params, const GridSpec& spec,
                 const SolveOptions& opts = {}, SolveStats* stats = nullptr);

} // namespace ambinv
