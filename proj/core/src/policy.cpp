#include "ambinv/policy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ambinv/errors.hpp"

namespace ambinv {

char to_char(RegionLabel label) {
    switch (label) {
    case RegionLabel::lower_control: return 'L';
    case RegionLabel::upper_control: return 'U';
    default: return 'C';
    }
}

RegionLabels classify(const ValueField& field, const ModelParams& params,
                      double tol_cls) {
    const Grid& grid = field.grid();
    const double h1 = grid.spec().h1;
    RegionLabels out{grid, std::vector<RegionLabel>(grid.node_count(),
                                                    RegionLabel::continuation)};
    for (int it = 0; it < grid.n_tau(); ++it) {
        for (int im = 0; im < grid.n_m(); ++im) {
            for (int ix = 0; ix < grid.n_x(); ++ix) {
                const double v = field.at(it, ix, im);
                RegionLabel label = RegionLabel::continuation;
                if (ix + 1 < grid.n_x() &&
                    (field.at(it, ix + 1, im) - v) / h1 <= -params.ell + tol_cls) {
                    label = RegionLabel::lower_control;
                } else if (ix > 0 &&
                           (v - field.at(it, ix - 1, im)) / h1 >= params.uu - tol_cls) {
                    label = RegionLabel::upper_control;
                }
                out.labels[grid.flat(it, ix, im)] = label;
            }
        }
    }
    return out;
}

bool BarrierSet::any_nonmonotone() const {
    return std::any_of(nonmonotone.begin(), nonmonotone.end(),
                       [](unsigned char f) { return f != 0; });
}

BarrierSet extract_barriers(const RegionLabels& labels, const ValueField& field) {
    const Grid& grid = field.grid();
    const double inf = std::numeric_limits<double>::infinity();
    const std::size_t n = static_cast<std::size_t>(grid.n_tau()) *
                          static_cast<std::size_t>(grid.n_m());
    BarrierSet bs{grid,
                  std::vector<double>(n, -inf),
                  std::vector<double>(n, inf),
                  std::vector<double>(n, 0.0),
                  std::vector<unsigned char>(n, 0)};
    for (int it = 0; it < grid.n_tau(); ++it) {
        for (int im = 0; im < grid.n_m(); ++im) {
            const std::size_t k = bs.index(it, im);
            double best_v = inf;
            double best_x = 0.0;
            bool seen_continuation = false;
            for (int ix = 0; ix < grid.n_x(); ++ix) {
                const RegionLabel lab = labels.at(it, ix, im);
                const double x = grid.x(ix);
                if (lab == RegionLabel::lower_control) {
                    bs.lower[k] = std::max(bs.lower[k], x);
                    if (seen_continuation) bs.nonmonotone[k] = 1;
                } else if (lab == RegionLabel::upper_control) {
                    bs.upper[k] = std::min(bs.upper[k], x);
                } else {
                    seen_continuation = true;
                    if (bs.upper[k] < inf) bs.nonmonotone[k] = 1;
                }
                const double v = field.at(it, ix, im);
                if (v < best_v ||
                    (v == best_v && std::abs(x) < std::abs(best_x))) {
                    best_v = v;
                    best_x = x;
                }
            }
            bs.target[k] = best_x;
        }
    }
    return bs;
}

double worst_case_drift(const ValueField& field, int ix, int im, double tau,
                        const Grid& grid, const ModelParams& params) {
    if (ix <= 0 || ix + 1 >= grid.n_x() || im <= 0 || im + 1 >= grid.n_m())
        throw ConfigError("worst_case_drift: node must be interior");
    const int it = grid.tau_floor_index(tau + 0.5 * grid.spec().delta);
    const double S = riccati_variance(params.s, params.T - grid.tau(it));
    const double dvx =
        (field.at(it, ix + 1, im) - field.at(it, ix - 1, im)) / (2.0 * grid.spec().h1);
    const double dvm =
        (field.at(it, ix, im + 1) - field.at(it, ix, im - 1)) / (2.0 * grid.spec().h2);
    return params.gamma * S * (params.b * dvx + S * dvm);
}

} // namespace ambinv
