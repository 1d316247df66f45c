#include "ambinv/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "ambinv/errors.hpp"

namespace ambinv {

namespace {

[[noreturn]] void nonfinite_abort(double tau, double x, double m) {
    throw NumericalError("non-finite value at (tau=" + std::to_string(tau) +
                         ", x=" + std::to_string(x) + ", m=" + std::to_string(m) + ")");
}

// Shared body of the two operator variants. `Tilted` selects whether the
// quadratic penalty enters as a running cost or as tilt weights contracted
// against neighbor-minus-center differences.
template <bool Tilted>
void apply_operator(std::span<const double> prev_slice, std::span<const double> iterate,
                    double tau, const Grid& grid, const ModelParams& params,
                    StencilMode mode, std::span<double> out) {
    const GridSpec& spec = grid.spec();
    const int nx = grid.n_x();
    const int nm = grid.n_m();
    if (nx < 3 || nm < 3)
        throw ConfigError("bellman operator needs interior levels in x and m");
    const double h1 = spec.h1;
    const double h2 = spec.h2;
    const double S = riccati_variance(params.s, params.T - tau);
    const double gx = params.b / h1;
    const double gm = S / h2;
    const double half_gamma_s = 0.5 * params.gamma * S;
    const double lower_step = h1 * params.ell;
    const double upper_step = h1 * params.uu;

    for (int im = 1; im + 1 < nm; ++im) {
        const Stencil st = continuation_stencil_at(grid.m(im), S, params, spec, mode);
        const double discount = std::exp(-params.rho * st.dt);
        const double* row = iterate.data() + grid.row_offset(im);
        const double* row_up = iterate.data() + grid.row_offset(im + 1);
        const double* row_dn = iterate.data() + grid.row_offset(im - 1);
        const double* prev_row = prev_slice.data() + grid.row_offset(im);
        double* out_row = out.data() + grid.row_offset(im);

        for (int ix = 1; ix + 1 < nx; ++ix) {
            const double v = row[ix];
            const double vxp = row[ix + 1];
            const double vxm = row[ix - 1];
            const double vmp = row_up[ix];
            const double vmm = row_dn[ix];
            const double expectation =
                st.p_x_up * vxp + st.p_x_dn * vxm + st.p_m_up * vmp + st.p_m_dn * vmm +
                st.p_diag_up * row_up[ix + 1] + st.p_diag_dn * row_dn[ix - 1] +
                st.p_regress * prev_row[ix];

            const double fwd = gx * (vxp - v) + gm * (vmp - v);
            const double bwd = gx * (v - vxm) + gm * (v - vmm);

            double ambiguity;
            if constexpr (Tilted) {
                const double dplus = std::max(fwd, 0.0);
                const double dminus = std::max(-bwd, 0.0);
                const double w = half_gamma_s * (dplus + dminus);
                double tilt = 0.0;
                if (fwd > 0.0)
                    tilt += w * gx * (vxp - v) + w * gm * (vmp - v);
                if (bwd < 0.0)
                    tilt += w * gx * (vxm - v) + w * gm * (vmm - v);
                ambiguity = tilt;
            } else {
                const double w = std::max(fwd, 0.0) + std::max(-bwd, 0.0);
                ambiguity = half_gamma_s * w * w;
            }

            const double v_cont = discount * expectation +
                                  (holding_cost(grid.x(ix), params) + ambiguity) * st.dt;
            const double v_lower = vxp + lower_step;
            const double v_upper = vxm + upper_step;
            const double best = std::min(v_cont, std::min(v_lower, v_upper));
            if (!std::isfinite(best)) nonfinite_abort(tau, grid.x(ix), grid.m(im));
            out_row[ix] = best;
        }
        // Domain edges in x sit inside the action regions by construction.
        out_row[0] = out_row[1] + lower_step;
        out_row[nx - 1] = out_row[nx - 2] + upper_step;
    }
    // Reflecting boundaries in m: zero normal derivative.
    std::copy_n(out.data() + grid.row_offset(1), nx, out.data() + grid.row_offset(0));
    std::copy_n(out.data() + grid.row_offset(nm - 2), nx, out.data() + grid.row_offset(nm - 1));
}

} // namespace

GradientPair upwind_gradient_pair(std::span<const double> slice, int ix, int im,
                                  double tau, const Grid& grid,
                                  const ModelParams& params) {
    const double S = riccati_variance(params.s, params.T - tau);
    const double gx = params.b / grid.spec().h1;
    const double gm = S / grid.spec().h2;
    const auto value = [&](int jx, int jm) { return slice[grid.row_offset(jm) + jx]; };
    const double v = value(ix, im);
    const int ixp = grid.x_neighbor(ix, +1);
    const int ixm = grid.x_neighbor(ix, -1);
    const int imp = grid.m_neighbor(im, +1);
    const int imm = grid.m_neighbor(im, -1);
    double fwd = 0.0;
    double bwd = 0.0;
    if (ixp != Grid::kNoNeighbor) fwd += gx * (value(ixp, im) - v);
    if (imp != Grid::kNoNeighbor) fwd += gm * (value(ix, imp) - v);
    if (ixm != Grid::kNoNeighbor) bwd += gx * (v - value(ixm, im));
    if (imm != Grid::kNoNeighbor) bwd += gm * (v - value(ix, imm));
    return {std::max(fwd, 0.0), std::max(-bwd, 0.0)};
}

TiltWeights tilt_weights(std::span<const double> slice, int ix, int im, double tau,
                         const Grid& grid, const ModelParams& params) {
    const double S = riccati_variance(params.s, params.T - tau);
    const double gx = params.b / grid.spec().h1;
    const double gm = S / grid.spec().h2;
    const auto value = [&](int jx, int jm) { return slice[grid.row_offset(jm) + jx]; };
    const double v = value(ix, im);
    const double fwd = gx * (value(ix + 1, im) - v) + gm * (value(ix, im + 1) - v);
    const double bwd = gx * (v - value(ix - 1, im)) + gm * (v - value(ix, im - 1));
    const double dplus = std::max(fwd, 0.0);
    const double dminus = std::max(-bwd, 0.0);
    const double w = 0.5 * params.gamma * S * (dplus + dminus);

    TiltWeights q;
    if (fwd > 0.0) {
        q.q_x_up = w * gx;
        q.q_m_up = w * gm;
    }
    if (bwd < 0.0) {
        q.q_x_dn = w * gx;
        q.q_m_dn = w * gm;
    }
    q.total = q.q_x_up + q.q_x_dn + q.q_m_up + q.q_m_dn;
    const Stencil st =
        continuation_stencil_at(grid.m(im), S, params, grid.spec(), StencilMode::positive_corrected);
    q.dt_q = 1.0 / (st.denominator + q.total);
    return q;
}

void bellman_apply(std::span<const double> prev_slice, std::span<const double> iterate,
                   double tau, const Grid& grid, const ModelParams& params,
                   StencilMode mode, std::span<double> out) {
    apply_operator<false>(prev_slice, iterate, tau, grid, params, mode, out);
}

void bellman_apply_q(std::span<const double> prev_slice, std::span<const double> iterate,
                     double tau, const Grid& grid, const ModelParams& params,
                     StencilMode mode, std::span<double> out) {
    apply_operator<true>(prev_slice, iterate, tau, grid, params, mode, out);
}

ValueField solve(const ModelParams& params, const GridSpec& spec,
                 const SolveOptions& opts, SolveStats* stats) {
    params.validate();
    if (std::abs(spec.T - params.T) > 1e-12)
        throw ConfigError("grid horizon must equal the model horizon T");
    if (!(opts.tol > 0.0)) throw ConfigError("solver tol must be positive");

    Grid grid = build_grid(spec, params);
    if (grid.n_m() < 3 || grid.n_x() < 3)
        throw ConfigError("solver needs at least one interior level in x and in m");
    ValueField field(grid);
    SolveStats local;

    const std::size_t sz = grid.slice_size();
    std::vector<double> cur(sz), next(sz);

    for (int it = 1; it < grid.n_tau(); ++it) {
        const double tau = grid.tau(it);
        const auto prev = field.slice(it - 1);
        std::copy(prev.begin(), prev.end(), cur.begin());

        double last_resid = std::numeric_limits<double>::infinity();
        int growth_streak = 0;
        bool converged = false;
        for (int sweep = 0; sweep < opts.max_inner_iters; ++sweep) {
            bellman_apply(prev, cur, tau, grid, params, opts.mode, next);
            double resid = 0.0;
            for (std::size_t i = 0; i < sz; ++i)
                resid = std::max(resid, std::abs(next[i] - cur[i]));
            cur.swap(next);
            local.total_sweeps++;
            if (sweep + 1 > local.max_sweeps_per_slice)
                local.max_sweeps_per_slice = sweep + 1;
            if (resid <= opts.tol) {
                converged = true;
                break;
            }
            if (resid > last_resid) {
                if (++growth_streak >= 5)
                    throw NumericalError(
                        "fixed-point residual grew for 5 consecutive sweeps at tau=" +
                        std::to_string(tau) + " (residual " + std::to_string(resid) + ")");
            } else {
                growth_streak = 0;
            }
            last_resid = resid;
        }
        if (!converged)
            throw NumericalError("slice tau=" + std::to_string(tau) +
                                 " did not reach tol within max_inner_iters (last residual " +
                                 std::to_string(last_resid) + ")");
        std::copy(cur.begin(), cur.end(), field.slice(it).begin());
    }

    // Clamp diagnostics over the whole mesh (entries depend on (tau, m) only).
    for (int it = 1; it < grid.n_tau(); ++it) {
        const double S = riccati_variance(params.s, params.T - grid.tau(it));
        for (int im = 1; im + 1 < grid.n_m(); ++im) {
            const Stencil st = continuation_stencil_at(grid.m(im), S, params, spec, opts.mode);
            local.max_clamped_mass = std::max(local.max_clamped_mass, st.clamped_mass);
        }
    }
    if (local.max_clamped_mass > opts.clamp_warn_threshold) {
        local.clamp_warning = true;
        if (opts.clamp_is_fatal)
            throw NumericalError("clamped stencil mass " +
                                 std::to_string(local.max_clamped_mass) +
                                 " exceeds threshold " +
                                 std::to_string(opts.clamp_warn_threshold));
    }
    if (stats) *stats = local;
    return field;
}

} // namespace ambinv
