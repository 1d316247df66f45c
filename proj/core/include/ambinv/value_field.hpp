#pragma once

#include <span>
#include <vector>

#include "ambinv/grid.hpp"

namespace ambinv {

// Scalar field over the full (tau, x, m) mesh, zero-initialized so the
// tau = 0 slice already satisfies its boundary condition. Owns a copy of the
// grid; freely copyable and shareable once filled.
class ValueField {
public:
    ValueField() = default;
    explicit ValueField(Grid grid)
        : grid_(std::move(grid)), values_(grid_.node_count(), 0.0) {}

    const Grid& grid() const { return grid_; }

    double at(int it, int ix, int im) const { return values_[grid_.flat(it, ix, im)]; }
    double& at(int it, int ix, int im) { return values_[grid_.flat(it, ix, im)]; }

    std::span<const double> slice(int it) const {
        return {values_.data() + grid_.flat(it, 0, 0), grid_.slice_size()};
    }
    std::span<double> slice(int it) {
        return {values_.data() + grid_.flat(it, 0, 0), grid_.slice_size()};
    }

    const std::vector<double>& values() const { return values_; }

private:
    Grid grid_;
    std::vector<double> values_;
};

} // namespace ambinv
