// Command-line front end: solve the value function, extract control barriers,
// simulate the filtered controlled inventory process, or run a comparative-
// statics sweep. Exit status: 0 success, 1 configuration error, 2 numerical
// failure.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ambinv/errors.hpp"
#include "ambinv/experiments.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ambinv::ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct CliOverrides {
    std::string config_path;
    std::string out_dir;
    std::string mode;
    long long seed = -1;
    double tol = -1.0;
};

void add_common_flags(CLI::App* cmd, CliOverrides& ov) {
    cmd->add_option("--config", ov.config_path, "flat key = value configuration file");
    cmd->add_option("--out", ov.out_dir, "output directory");
    cmd->add_option("--mode", ov.mode, "stencil mode")
        ->check(CLI::IsMember({"paper-verbatim", "positive-corrected"}));
    cmd->add_option("--seed", ov.seed, "simulation seed");
    cmd->add_option("--tol", ov.tol, "solver tolerance");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"inventory singular-control solver under drift ambiguity"};
    app.require_subcommand(1);

    CliOverrides ov;
    std::string preset;
    CLI::App* cmd_solve = app.add_subcommand("solve", "solve the value function");
    CLI::App* cmd_barriers = app.add_subcommand("barriers", "extract control barriers");
    CLI::App* cmd_simulate = app.add_subcommand("simulate", "simulate controlled paths");
    CLI::App* cmd_sweep = app.add_subcommand("sweep", "comparative-statics preset");
    cmd_sweep->add_option("preset", preset, "preset name")->required();
    for (CLI::App* cmd : {cmd_solve, cmd_barriers, cmd_simulate, cmd_sweep})
        add_common_flags(cmd, ov);

    CLI11_PARSE(app, argc, argv);

    try {
        std::string text;
        if (!ov.config_path.empty()) text = read_file(ov.config_path);
        ambinv::ExperimentConfig cfg = ambinv::parse_config(text);

        if (cmd_solve->parsed()) cfg.kind = ambinv::ExperimentKind::solve;
        if (cmd_barriers->parsed()) cfg.kind = ambinv::ExperimentKind::barriers;
        if (cmd_simulate->parsed()) cfg.kind = ambinv::ExperimentKind::simulate;
        if (cmd_sweep->parsed()) {
            cfg.kind = ambinv::ExperimentKind::sweep;
            cfg.sweep_name = preset;
            if (ambinv::find_preset(preset) == nullptr)
                throw ambinv::ConfigError("unknown sweep preset '" + preset + "'");
        }
        if (!ov.out_dir.empty()) cfg.out_dir = ov.out_dir;
        if (!ov.mode.empty())
            cfg.solver.mode = ov.mode == "paper-verbatim"
                                  ? ambinv::StencilMode::paper_verbatim
                                  : ambinv::StencilMode::positive_corrected;
        if (ov.seed >= 0) cfg.sim.seed = static_cast<std::uint64_t>(ov.seed);
        if (ov.tol > 0.0) cfg.solver.tol = ov.tol;

        ambinv::run_experiment(cfg);
    } catch (const ambinv::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const ambinv::NumericalError& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
