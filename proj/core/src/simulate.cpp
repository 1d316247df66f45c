#include "ambinv/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ambinv/errors.hpp"
#include "ambinv/rng.hpp"

namespace ambinv {

namespace {

struct StepOutcome {
    double x;
    double m;
    double discounted_total;
    double cum_holding;
    double cum_lower;
    double cum_upper;
};

// One path, invoking `record` after every step. Returns the final outcome.
template <typename Record>
StepOutcome run_path(const BarrierSet* barriers, const ModelParams& params,
                     const SimConfig& cfg, std::uint64_t path_index, Record&& record) {
    if (cfg.controls_enabled && barriers == nullptr)
        throw ConfigError("simulate_path: controls enabled but no barriers given");
    if (!(cfg.dt > 0.0)) throw ConfigError("simulate_path: dt must be positive");

    Rng rng(cfg.seed, path_index);
    const long n_steps = std::lround(params.T / cfg.dt);
    const double sqrt_dt = std::sqrt(cfg.dt);

    double theta = 0.0;
    if (cfg.ground_truth_mode) theta = cfg.m0 + std::sqrt(params.s) * rng.normal();

    StepOutcome o{cfg.x0, cfg.m0, 0.0, 0.0, 0.0, 0.0};
    for (long k = 0; k < n_steps; ++k) {
        const double t = static_cast<double>(k) * cfg.dt;
        const double t_next = static_cast<double>(k + 1) * cfg.dt;
        const double S = riccati_variance(params.s, t);
        const double dw = sqrt_dt * rng.normal();

        if (cfg.ground_truth_mode) {
            o.x += drift_coefficient(theta, params) * cfg.dt + params.b * dw;
            // Observation drift is a - b theta, so the filter gain is -S.
            o.m += -S * ((o.m - theta) * cfg.dt + dw);
        } else {
            o.x += drift_coefficient(o.m, params) * cfg.dt + params.b * dw;
            o.m += S * dw; // same increment as X: a single innovation source
        }
        if (cfg.reflect_belief) o.m = std::clamp(o.m, params.m_lo, params.m_hi);

        const double disc = std::exp(-params.rho * t_next);
        if (cfg.controls_enabled) {
            const double tau_rem = params.T - t_next;
            const int it = barriers->grid.tau_floor_index(tau_rem);
            const int im = barriers->grid.nearest_m_index(o.m);
            const double lo = barriers->lower_at(it, im);
            const double hi = barriers->upper_at(it, im);
            if (lo >= hi)
                throw NumericalError("ill-posed policy: lower >= upper at tau=" +
                                     std::to_string(barriers->grid.tau(it)) +
                                     ", m=" + std::to_string(barriers->grid.m(im)));
            if (o.x < lo) {
                const double push = lo - o.x;
                o.cum_lower += push;
                o.discounted_total += params.ell * push * disc;
                o.x = lo;
            } else if (o.x > hi) {
                const double push = o.x - hi;
                o.cum_upper += push;
                o.discounted_total += params.uu * push * disc;
                o.x = hi;
            }
        }
        const double holding = holding_cost(o.x, params) * cfg.dt * disc;
        o.cum_holding += holding;
        o.discounted_total += holding;
        record(k + 1, t_next, o);
    }
    return o;
}

} // namespace

PathRecord simulate_path(const BarrierSet* barriers, const ModelParams& params,
                         const SimConfig& cfg, std::uint64_t path_index) {
    if (!(cfg.dt > 0.0)) throw ConfigError("simulate_path: dt must be positive");
    PathRecord rec;
    const long n_steps = std::lround(params.T / cfg.dt);
    const long stride = std::max(1, cfg.record_stride);
    rec.t.reserve(static_cast<std::size_t>(n_steps / stride) + 2);

    const auto push = [&](double t, const StepOutcome& o) {
        rec.t.push_back(t);
        rec.x.push_back(o.x);
        rec.m.push_back(o.m);
        rec.S.push_back(riccati_variance(params.s, t));
        rec.cum_holding.push_back(o.cum_holding);
        rec.cum_lower_control.push_back(o.cum_lower);
        rec.cum_upper_control.push_back(o.cum_upper);
        rec.discounted_total.push_back(o.discounted_total);
    };
    push(0.0, StepOutcome{cfg.x0, cfg.m0, 0.0, 0.0, 0.0, 0.0});

    run_path(barriers, params, cfg, path_index, [&](long k, double t, const StepOutcome& o) {
        if (k % stride == 0 || k == n_steps) push(t, o);
    });
    return rec;
}

std::pair<double, double> monte_carlo_cost(double x0, double m0,
                                           const BarrierSet* barriers,
                                           const ModelParams& params,
                                           const SimConfig& cfg) {
    if (cfg.n_paths < 1000)
        throw ConfigError("monte_carlo_cost: need at least 1000 paths");
    SimConfig local = cfg;
    local.x0 = x0;
    local.m0 = m0;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (long p = 0; p < cfg.n_paths; ++p) {
        const StepOutcome o = run_path(barriers, params, local,
                                       static_cast<std::uint64_t>(p),
                                       [](long, double, const StepOutcome&) {});
        sum += o.discounted_total;
        sum_sq += o.discounted_total * o.discounted_total;
    }
    const double n = static_cast<double>(cfg.n_paths);
    const double mean = sum / n;
    const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
    return {mean, std::sqrt(var / n)};
}

} // namespace ambinv
