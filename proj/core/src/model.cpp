#include "ambinv/model.hpp"

#include <cmath>

#include "ambinv/errors.hpp"
#include "ambinv/normal.hpp"

namespace ambinv {

void ModelParams::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0)) throw ConfigError(std::string(name) + " must be positive");
    };
    positive(b, "b");
    positive(rho, "rho");
    positive(ell, "ell");
    positive(uu, "u");
    positive(c_lo, "c_lo");
    positive(c_hi, "c_hi");
    positive(T, "T");
    if (!(s >= 0.0)) throw ConfigError("s must be nonnegative");
    if (!(gamma >= 0.0)) throw ConfigError("gamma must be nonnegative");
    if (!(m_lo < m0 && m0 < m_hi))
        throw ConfigError("belief bounds must satisfy m_lo < m0 < m_hi");
}

double riccati_variance(double s0, double t) { return s0 / (1.0 + s0 * t); }

double drift_coefficient(double m, const ModelParams& p) { return p.a - m * p.b; }

double holding_cost(double x, const ModelParams& p) {
    return x < 0.0 ? -p.c_lo * x : p.c_hi * x;
}

double belief_tail_probability(double h, double t, double s0) {
    if (!(h > 0.0)) throw ConfigError("belief_tail_probability: h must be positive");
    if (!(t > 0.0) || !(s0 > 0.0))
        throw ConfigError("belief_tail_probability: degenerate t or s0 (probability is 0)");
    const double arg = h * std::sqrt((1.0 + s0 * t) / (s0 * s0 * t));
    return 2.0 * norm_ccdf(arg);
}

std::pair<double, double> confidence_band(double m0, double s0, double d) {
    if (!(d > 0.0 && d <= 1.0)) throw ConfigError("confidence_band: d must lie in (0,1]");
    if (!(s0 > 0.0)) throw ConfigError("confidence_band: s0 must be positive");
    const double z = d == 1.0 ? 0.0 : norm_quantile(1.0 - d / 2.0);
    const double w = z * std::sqrt(s0);
    return {m0 - w, m0 + w};
}

double driver(double y, double z, double x, double S, const ModelParams& p) {
    return -p.rho * y + holding_cost(x, p) + 0.5 * p.gamma * S * z * z;
}

std::pair<double, double> to_aux_coordinates(double x, double m, double S,
                                             const ModelParams& p) {
    if (!(S > 0.0)) throw ConfigError("to_aux_coordinates: S must be positive");
    return {x, x - (p.b / S) * m};
}

std::pair<double, double> from_aux_coordinates(double x1, double x2, double S,
                                               const ModelParams& p) {
    if (!(S > 0.0)) throw ConfigError("from_aux_coordinates: S must be positive");
    return {x1, (S / p.b) * (x1 - x2)};
}

} // namespace ambinv
