#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ambinv/policy.hpp"

namespace ambinv {

struct SimConfig {
    double dt = 0.01;
    long n_paths = 10000;
    std::uint64_t seed = 1;
    bool controls_enabled = true;
    bool ground_truth_mode = false; // drive X by a hidden theta ~ N(m0, s)
    bool reflect_belief = true;
    double x0 = 0.0;
    double m0 = 0.0;
    int record_stride = 1; // keep every k-th step in the record
};

// Time series of one simulated path plus its running cost decomposition.
struct PathRecord {
    std::vector<double> t;
    std::vector<double> x;
    std::vector<double> m;
    std::vector<double> S;
    std::vector<double> cum_holding;       // discounted holding cost to date
    std::vector<double> cum_lower_control; // raw upward push volume
    std::vector<double> cum_upper_control; // raw downward push volume
    std::vector<double> discounted_total;  // holding + discounted control costs
};

// Euler-Maruyama simulation of the filtered pair (X, M) driven by a single
// shared noise increment, with M reflected into [m_lo, m_hi] and X projected
// onto the barrier interval of the current (tau, m) cell when controls are
// enabled. S follows the closed-form variance, no Euler error. In
// ground-truth mode X is driven by a hidden theta and M by the matching
// filter (whose gain is -S for observation drift a - b theta).
// `barriers` may be null when controls are disabled; an absent barrier
// (infinite sentinel) means no control on that side. Throws NumericalError if
// a visited cell has lower >= upper.
PathRecord simulate_path(const BarrierSet* barriers, const ModelParams& params,
                         const SimConfig& cfg, std::uint64_t path_index = 0);

// Sample mean and standard error of the discounted total cost over
// cfg.n_paths independent paths started at (x0, m0). Requires n_paths >= 1000.
std::pair<double, double> monte_carlo_cost(double x0, double m0,
                                           const BarrierSet* barriers,
                                           const ModelParams& params,
                                           const SimConfig& cfg);

} // namespace ambinv
