#pragma once

namespace ambinv {

// Standard normal CDF, evaluated through erfc so both tails keep full
// relative precision. Absolute error well below 1e-14.
double norm_cdf(double x);

// P(Z > x) = norm_cdf(-x).
double norm_ccdf(double x);

// Standard normal quantile. Rational approximation polished with one Halley
// step against norm_cdf; absolute error below 1e-13 for p in (1e-300, 1).
double norm_quantile(double p);

} // namespace ambinv
