#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ambinv/policy.hpp"
#include "ambinv/simulate.hpp"

namespace ambinv {

// %.*g formatting used for every numeric cell (12 significant digits by
// default); round trips are lossless at that precision.
std::string format_sig(double v, int digits = 12);

// Columns tau,x,m,value,label; one row per node ordered lexicographically by
// (tau, m, x). The metadata block is emitted verbatim before the header.
void write_field_csv(const ValueField& field, const RegionLabels& labels,
                     const std::string& metadata, const std::string& path);

struct FieldCsv {
    std::vector<double> tau, x, m, value;
    std::vector<char> label;
};

FieldCsv read_field_csv(const std::string& path);

// Columns tau,m,lower,target,upper with empty cells for infinite sentinels.
// `only_it` restricts the rows to one tau slice (-1 writes every slice).
void write_barriers_csv(const BarrierSet& barriers, const std::string& metadata,
                        const std::string& path, int only_it = -1);

// Long-format path series: path,t,x,m,S,cum_holding,cum_lower,cum_upper,
// discounted_total.
void write_paths_csv(const std::vector<PathRecord>& paths, const std::string& metadata,
                     const std::string& path);

void write_cost_summary_csv(double estimate, double std_error, long n_paths,
                            double x0, double m0, const std::string& metadata,
                            const std::string& path);

// One labeled family of barrier curves in the (x, m) plane; points are
// (barrier level, belief level), sentinel-free.
struct BarrierCurves {
    std::string label;
    std::vector<std::pair<double, double>> lower;
    std::vector<std::pair<double, double>> target;
    std::vector<std::pair<double, double>> upper;
};

// Curves of one barrier set at slice `it`.
BarrierCurves barrier_curves(const BarrierSet& barriers, int it, std::string label);

// Self-contained SVG: axes labeled x (horizontal) and m (vertical), solid
// lower/upper polylines, dashed target curve, legend naming each series.
void render_svg(const std::vector<BarrierCurves>& series, double x_lo, double x_hi,
                double m_lo, double m_hi, const std::string& title,
                const std::string& metadata, const std::string& path);

} // namespace ambinv
