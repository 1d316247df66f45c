#include "ambinv/stencil.hpp"

#include <algorithm>
#include <cmath>

#include "ambinv/errors.hpp"

namespace ambinv {

const char* to_string(StencilMode mode) {
    return mode == StencilMode::paper_verbatim ? "paper-verbatim" : "positive-corrected";
}

Stencil continuation_stencil_at(double m, double S, const ModelParams& params,
                                const GridSpec& spec, StencilMode mode) {
    const double b = params.b;
    const double h1 = spec.h1;
    const double h2 = spec.h2;
    const double drift = drift_coefficient(m, params);
    const double drift_up = std::max(drift, 0.0);
    const double drift_dn = std::max(-drift, 0.0);

    const double diff_x = 0.5 * b * b / (h1 * h1);
    const double diff_m = 0.5 * S * S / (h2 * h2);
    const double cross = b * S / (h1 * h2);
    const double cross_axis = mode == StencilMode::paper_verbatim ? cross : 0.5 * cross;

    double rate[7];
    rate[0] = diff_x - cross_axis + drift_up / h1; // x + h1
    rate[1] = diff_x - cross_axis + drift_dn / h1; // x - h1
    rate[2] = diff_m - cross_axis;                 // m + h2
    rate[3] = diff_m - cross_axis;                 // m - h2
    rate[4] = 0.5 * cross;                         // (x+h1, m+h2)
    rate[5] = 0.5 * cross;                         // (x-h1, m-h2)
    rate[6] = 1.0 / spec.delta;                    // (tau-delta, x, m)

    Stencil st;
    st.denominator = 1.0 / spec.delta + b * b / (h1 * h1) + S * S / (h2 * h2) -
                     cross + std::abs(drift) / h1;
    st.dt = 1.0 / st.denominator;

    double clamped = 0.0;
    double sum = 0.0;
    for (double& r : rate) {
        if (r < 0.0) {
            clamped -= r;
            r = 0.0;
        }
        sum += r;
    }
    st.clamped_mass = clamped / st.denominator;
    st.rate_sum = sum;

    const double inv = 1.0 / sum;
    st.p_x_up = rate[0] * inv;
    st.p_x_dn = rate[1] * inv;
    st.p_m_up = rate[2] * inv;
    st.p_m_dn = rate[3] * inv;
    st.p_diag_up = rate[4] * inv;
    st.p_diag_dn = rate[5] * inv;
    st.p_regress = rate[6] * inv;
    return st;
}

Stencil continuation_stencil(int ix, int im, double tau, const Grid& grid,
                             const ModelParams& params, StencilMode mode) {
    (void)ix; // entries do not depend on the inventory level
    if (im <= 0 || im + 1 >= grid.n_m())
        throw ConfigError("continuation_stencil: node must be interior in m");
    const double S = riccati_variance(params.s, params.T - tau);
    return continuation_stencil_at(grid.m(im), S, params, grid.spec(), mode);
}

LocalConsistencyReport local_consistency_report(const Grid& grid,
                                                const ModelParams& params,
                                                StencilMode mode) {
    LocalConsistencyReport rep;
    const double h1 = grid.spec().h1;
    const double h2 = grid.spec().h2;
    for (int it = 1; it < grid.n_tau(); ++it) {
        const double S = riccati_variance(params.s, params.T - grid.tau(it));
        for (int im = 1; im + 1 < grid.n_m(); ++im) {
            const double m = grid.m(im);
            const Stencil st = continuation_stencil_at(m, S, params, grid.spec(), mode);
            const double ex = h1 * (st.p_x_up - st.p_x_dn + st.p_diag_up - st.p_diag_dn);
            const double ex2 =
                h1 * h1 * (st.p_x_up + st.p_x_dn + st.p_diag_up + st.p_diag_dn);
            const double em = h2 * (st.p_m_up - st.p_m_dn + st.p_diag_up - st.p_diag_dn);
            const double em2 =
                h2 * h2 * (st.p_m_up + st.p_m_dn + st.p_diag_up + st.p_diag_dn);
            const double mean_x = ex / st.dt;
            const double var_x = (ex2 - ex * ex) / st.dt;
            const double mean_m = em / st.dt;
            const double var_m = (em2 - em * em) / st.dt;

            const double e_mean_x = std::abs(mean_x - drift_coefficient(m, params));
            const double e_var_x = std::abs(var_x - params.b * params.b);
            const double e_mean_m = std::abs(mean_m);
            const double e_var_m = std::abs(var_m - S * S);

            rep.total_nodes++;
            rep.max_mean_x_err_all = std::max(rep.max_mean_x_err_all, e_mean_x);
            rep.max_var_x_err_all = std::max(rep.max_var_x_err_all, e_var_x);
            rep.max_mean_m_err_all = std::max(rep.max_mean_m_err_all, e_mean_m);
            rep.max_var_m_err_all = std::max(rep.max_var_m_err_all, e_var_m);
            rep.max_clamped_mass = std::max(rep.max_clamped_mass, st.clamped_mass);
            if (st.clamped_mass > 0.0) {
                rep.clamped_nodes++;
            } else {
                rep.unclamped_nodes++;
                rep.max_mean_x_err = std::max(rep.max_mean_x_err, e_mean_x);
                rep.max_var_x_err = std::max(rep.max_var_x_err, e_var_x);
                rep.max_mean_m_err = std::max(rep.max_mean_m_err, e_mean_m);
                rep.max_var_m_err = std::max(rep.max_var_m_err, e_var_m);
            }
        }
    }
    return rep;
}

} // namespace ambinv
