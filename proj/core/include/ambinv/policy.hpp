#pragma once

#include <vector>

#include "ambinv/value_field.hpp"

namespace ambinv {

enum class RegionLabel : unsigned char { continuation, lower_control, upper_control };

char to_char(RegionLabel label); // 'C', 'L', 'U'

// One label per node, same layout as the field.
struct RegionLabels {
    Grid grid;
    std::vector<RegionLabel> labels;

    RegionLabel at(int it, int ix, int im) const { return labels[grid.flat(it, ix, im)]; }
};

// One-step finite-difference thresholds: lower control where the forward
// difference is <= -ell + tol, upper control where the backward difference is
// >= u - tol; ties go to the control label. At x_lo only the forward test
// applies, at x_hi only the backward test.
RegionLabels classify(const ValueField& field, const ModelParams& params,
                      double tol_cls = 1e-9);

// Per (tau, m): largest x labeled lower control, smallest labeled upper
// control (infinite sentinels when a side is absent), and the argmin of the
// value in x with ties broken toward smaller |x|.
struct BarrierSet {
    Grid grid;
    std::vector<double> lower;  // -inf sentinel
    std::vector<double> upper;  // +inf sentinel
    std::vector<double> target;
    std::vector<unsigned char> nonmonotone; // labels not monotone in x (islands)

    std::size_t index(int it, int im) const {
        return static_cast<std::size_t>(it) * static_cast<std::size_t>(grid.n_m()) +
               static_cast<std::size_t>(im);
    }
    double lower_at(int it, int im) const { return lower[index(it, im)]; }
    double upper_at(int it, int im) const { return upper[index(it, im)]; }
    double target_at(int it, int im) const { return target[index(it, im)]; }
    bool any_nonmonotone() const;
};

BarrierSet extract_barriers(const RegionLabels& labels, const ValueField& field);

// Worst-case distortion of the belief drift at an interior node:
// gamma S (b D_x V + S D_m V) with central differences, S at time T - tau.
double worst_case_drift(const ValueField& field, int ix, int im, double tau,
                        const Grid& grid, const ModelParams& params);

} // namespace ambinv
