#pragma once

#include <utility>

namespace ambinv {

// Scalar constants of the filtered inventory model. Defaults are the base
// parameter set used throughout the comparative statics.
struct ModelParams {
    double a = 0.2;      // inventory drift level
    double b = 0.2;      // inventory diffusion level
    double s = 0.1;      // initial belief variance
    double rho = 0.2;    // discount rate
    double gamma = 20.0; // ambiguity-aversion magnitude, >= 0
    double ell = 2.0;    // proportional cost of pushing inventory up
    double uu = 2.0;     // proportional cost of pushing inventory down
    double c_lo = 1.0;   // holding rate per unit of negative inventory
    double c_hi = 1.0;   // holding rate per unit of positive inventory
    double T = 20.0;     // observation horizon
    double m_lo = -10.0; // lower belief reflection bound
    double m_hi = 10.0;  // upper belief reflection bound
    double m0 = 0.0;     // reference belief mean

    // Throws ConfigError naming the offending field.
    void validate() const;
};

// Filtered state (inventory level, belief mean, calendar time).
struct FilterState {
    double x = 0.0;
    double m = 0.0;
    double t = 0.0;
};

// Belief variance S(t) = s0 / (1 + s0 t). Total on s0 >= 0, t >= 0.
double riccati_variance(double s0, double t);

// Drift of the filtered inventory process, a - m b.
double drift_coefficient(double m, const ModelParams& p);

// Piecewise-linear holding cost c_lo x^- + c_hi x^+.
double holding_cost(double x, const ModelParams& p);

// P(|M_t - m| > h) for the unreflected belief process started at m.
// Requires h > 0, t > 0, s0 > 0.
double belief_tail_probability(double h, double t, double s0);

// Two-sided confidence band around m0 wide enough for the belief process at
// every t >= 0: radius z_{d/2} * sup_t sqrt(s0^2 t / (1 + s0 t)) =
// z_{d/2} * sqrt(s0). Requires 0 < d <= 1.
std::pair<double, double> confidence_band(double m0, double s0, double d);

// BSDE driver: -rho y + holding_cost(x) + (gamma S / 2) z^2.
double driver(double y, double z, double x, double S, const ModelParams& p);

// Auxiliary coordinates (x1, x2) = (x, x - (b/S) m). Requires S > 0.
std::pair<double, double> to_aux_coordinates(double x, double m, double S,
                                             const ModelParams& p);

// Inverse map (x, m) = (x1, (S/b)(x1 - x2)); the second component is the
// belief coordinate used on figure axes. Requires S > 0.
std::pair<double, double> from_aux_coordinates(double x1, double x2, double S,
                                               const ModelParams& p);

} // namespace ambinv
