#pragma once

#include "ambinv/grid.hpp"
#include "ambinv/model.hpp"

namespace ambinv {

// How the continuation transition rates are assembled.
//   paper_verbatim     - axis entries carry the full cross rate bS/(h1 h2),
//                        matched-sign diagonals get bS/(2 h1 h2); the entries
//                        do not sum to the denominator and clamp heavily.
//   positive_corrected - standard splitting: axis entries subtract
//                        bS/(2 h1 h2), matched-sign diagonals add it; the sum
//                        equals the denominator exactly wherever no entry is
//                        clamped.
// Both modes clamp negative entries to zero and renormalize, recording the
// clamped mass.
enum class StencilMode { paper_verbatim, positive_corrected };

// One interior node's normalized transition probabilities. Same-slice moves
// are x +/- h1, m +/- h2, and the matched-sign diagonals; the regress entry
// points at the previous tau slice.
struct Stencil {
    double p_x_up = 0.0;
    double p_x_dn = 0.0;
    double p_m_up = 0.0;
    double p_m_dn = 0.0;
    double p_diag_up = 0.0; // (x+h1, m+h2)
    double p_diag_dn = 0.0; // (x-h1, m-h2)
    double p_regress = 0.0; // (tau-delta, x, m)
    double dt = 0.0;          // interpolation interval 1/denominator
    double denominator = 0.0; // 1/delta + b^2/h1^2 + S^2/h2^2 - bS/(h1 h2) + |a-mb|/h1
    double rate_sum = 0.0;     // retained rate mass (== denominator when unclamped
                               // in positive-corrected mode)
    double clamped_mass = 0.0; // clamped negative rate / denominator
};

// Workhorse: stencil for belief level m and current belief variance S.
// Entries depend on (m, S) only, so one stencil serves a whole x-row.
Stencil continuation_stencil_at(double m, double S, const ModelParams& params,
                                const GridSpec& spec, StencilMode mode);

// Node-addressed form; requires an interior m index. S is evaluated at
// calendar time T - tau.
Stencil continuation_stencil(int ix, int im, double tau, const Grid& grid,
                             const ModelParams& params, StencilMode mode);

// Per-node moment check of the chain against the diffusion it approximates.
// All deviations are rates (already divided by dt).
struct LocalConsistencyReport {
    // Maxima over nodes with zero clamped mass.
    double max_mean_x_err = 0.0; // |E[dX]/dt - (a - m b)|
    double max_var_x_err = 0.0;  // |Var[dX]/dt - b^2|
    double max_mean_m_err = 0.0; // |E[dM]/dt|
    double max_var_m_err = 0.0;  // |Var[dM]/dt - S^2|
    // Same maxima over every node.
    double max_mean_x_err_all = 0.0;
    double max_var_x_err_all = 0.0;
    double max_mean_m_err_all = 0.0;
    double max_var_m_err_all = 0.0;
    double max_clamped_mass = 0.0;
    long clamped_nodes = 0;
    long unclamped_nodes = 0;
    long total_nodes = 0;
};

LocalConsistencyReport local_consistency_report(const Grid& grid,
                                                const ModelParams& params,
                                                StencilMode mode);

const char* to_string(StencilMode mode);

} // namespace ambinv
