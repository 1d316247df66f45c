#include "ambinv/experiments.hpp"

#include <filesystem>
#include <sstream>

#include "ambinv/errors.hpp"
#include "ambinv/io.hpp"

namespace ambinv {

namespace {

std::string with_diagnostics(const ExperimentConfig& cfg, const RatioReport& ratio,
                             const SolveStats* stats) {
    std::ostringstream os;
    os << cfg.metadata();
    os << "# ratio_h1_h2 = " << format_sig(ratio.ratio) << "\n";
    if (ratio.vacuous) {
        os << "# ratio_interval = vacuous (s = 0, no-learning mode)\n";
    } else {
        os << "# ratio_interval = (" << format_sig(ratio.interval_lo) << ", "
           << format_sig(ratio.interval_hi) << ")\n"
           << "# ratio_inside = " << (ratio.inside_interval ? "true" : "false") << "\n";
    }
    os << "# max_clamped_mass = " << format_sig(ratio.max_clamped_mass) << "\n"
       << "# clamped_nodes = " << ratio.clamped_nodes << " of " << ratio.total_nodes
       << "\n";
    if (stats)
        os << "# solver_sweeps = " << stats->total_sweeps << "\n"
           << "# solver_max_sweeps_per_slice = " << stats->max_sweeps_per_slice << "\n";
    return os.str();
}

std::string join(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

struct SolveProducts {
    ValueField field;
    RegionLabels labels;
    BarrierSet barriers;
    SolveStats stats;
};

SolveProducts solve_and_extract(const ModelParams& params, const GridSpec& grid,
                                const SolveOptions& opts) {
    SolveProducts p;
    p.field = solve(params, grid, opts, &p.stats);
    p.labels = classify(p.field, params);
    p.barriers = extract_barriers(p.labels, p.field);
    return p;
}

std::string value_tag(double v) {
    std::string s = format_sig(v, 10);
    for (char& c : s)
        if (c == '-') c = 'n';
    return s;
}

void run_sweep(const ExperimentConfig& cfg) {
    const SweepPreset* preset = find_preset(cfg.sweep_name);
    if (!preset) throw ConfigError("unknown sweep preset '" + cfg.sweep_name + "'");

    std::vector<BarrierCurves> overlay;
    const bool vary_tau = preset->key.empty();

    if (vary_tau) {
        ExperimentConfig member = cfg;
        const RatioReport ratio =
            validate_ratio(member.grid, member.params, member.solver.mode);
        const SolveProducts p =
            solve_and_extract(member.params, member.grid, member.solver);
        const std::string meta = with_diagnostics(member, ratio, &p.stats);
        for (double tau : preset->values) {
            const int it = p.barriers.grid.tau_floor_index(tau);
            const std::string tag = value_tag(tau);
            write_barriers_csv(p.barriers, meta,
                               join(cfg.out_dir, "sweep_tau_" + tag + ".csv"), it);
            const std::string label = "tau=" + format_sig(tau, 6);
            const auto curves = barrier_curves(p.barriers, it, label);
            render_svg({curves}, member.grid.x_lo, member.grid.x_hi, member.params.m_lo,
                       member.params.m_hi, "control barriers, " + label, meta,
                       join(cfg.out_dir, "sweep_tau_" + tag + ".svg"));
            overlay.push_back(curves);
        }
        render_svg(overlay, member.grid.x_lo, member.grid.x_hi, member.params.m_lo,
                   member.params.m_hi, "control barriers by tau", meta,
                   join(cfg.out_dir, "sweep_tau_overlay.svg"));
        return;
    }

    std::string overlay_meta;
    for (double value : preset->values) {
        ExperimentConfig member = cfg;
        set_model_param(member.params, preset->key, value);
        const RatioReport ratio =
            validate_ratio(member.grid, member.params, member.solver.mode);
        const SolveProducts p =
            solve_and_extract(member.params, member.grid, member.solver);
        const std::string meta = with_diagnostics(member, ratio, &p.stats);
        const int it = p.barriers.grid.tau_floor_index(cfg.fig_tau);
        const std::string tag = value_tag(value);
        const std::string stem = "sweep_" + preset->name + "_" + tag;
        write_barriers_csv(p.barriers, meta, join(cfg.out_dir, stem + ".csv"));
        const std::string label = preset->name + "=" + format_sig(value, 6);
        const auto curves = barrier_curves(p.barriers, it, label);
        render_svg({curves}, member.grid.x_lo, member.grid.x_hi, member.params.m_lo,
                   member.params.m_hi, "control barriers, " + label, meta,
                   join(cfg.out_dir, stem + ".svg"));
        overlay.push_back(curves);
        if (overlay_meta.empty()) overlay_meta = with_diagnostics(cfg, ratio, nullptr);
    }
    render_svg(overlay, cfg.grid.x_lo, cfg.grid.x_hi, cfg.params.m_lo, cfg.params.m_hi,
               "control barriers by " + preset->name + " (tau=" +
                   format_sig(cfg.fig_tau, 6) + ")",
               overlay_meta, join(cfg.out_dir, "sweep_" + preset->name + "_overlay.svg"));
}

} // namespace

void run_experiment(const ExperimentConfig& cfg) {
    cfg.params.validate();
    std::filesystem::create_directories(cfg.out_dir);

    if (cfg.kind == ExperimentKind::sweep) {
        run_sweep(cfg);
        return;
    }

    const RatioReport ratio = validate_ratio(cfg.grid, cfg.params, cfg.solver.mode);

    if (cfg.kind == ExperimentKind::solve) {
        const SolveProducts p = solve_and_extract(cfg.params, cfg.grid, cfg.solver);
        const std::string meta = with_diagnostics(cfg, ratio, &p.stats);
        write_field_csv(p.field, p.labels, meta, join(cfg.out_dir, "field.csv"));
        return;
    }

    if (cfg.kind == ExperimentKind::barriers) {
        const SolveProducts p = solve_and_extract(cfg.params, cfg.grid, cfg.solver);
        const std::string meta = with_diagnostics(cfg, ratio, &p.stats);
        write_barriers_csv(p.barriers, meta, join(cfg.out_dir, "barriers.csv"));
        const int it = p.barriers.grid.tau_floor_index(cfg.fig_tau);
        render_svg({barrier_curves(p.barriers, it,
                                   "tau=" + format_sig(cfg.fig_tau, 6))},
                   cfg.grid.x_lo, cfg.grid.x_hi, cfg.params.m_lo, cfg.params.m_hi,
                   "control barriers", meta, join(cfg.out_dir, "barriers.svg"));
        return;
    }

    // simulate
    std::string meta;
    BarrierSet barriers;
    const BarrierSet* barrier_ptr = nullptr;
    if (cfg.sim.controls_enabled) {
        const SolveProducts p = solve_and_extract(cfg.params, cfg.grid, cfg.solver);
        barriers = p.barriers;
        barrier_ptr = &barriers;
        meta = with_diagnostics(cfg, ratio, &p.stats);
    } else {
        meta = with_diagnostics(cfg, ratio, nullptr);
    }
    std::vector<PathRecord> recorded;
    const int n_rec = std::min<long>(cfg.n_record_paths, cfg.sim.n_paths);
    for (int p = 0; p < n_rec; ++p)
        recorded.push_back(simulate_path(barrier_ptr, cfg.params, cfg.sim,
                                         static_cast<std::uint64_t>(p)));
    write_paths_csv(recorded, meta, join(cfg.out_dir, "paths.csv"));
    const auto [estimate, std_error] =
        monte_carlo_cost(cfg.sim.x0, cfg.sim.m0, barrier_ptr, cfg.params, cfg.sim);
    write_cost_summary_csv(estimate, std_error, cfg.sim.n_paths, cfg.sim.x0, cfg.sim.m0,
                           meta, join(cfg.out_dir, "cost_summary.csv"));
}

} // namespace ambinv
