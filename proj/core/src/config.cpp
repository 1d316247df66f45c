#include "ambinv/config.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

#include "ambinv/errors.hpp"

namespace ambinv {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& value, int line) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(line) + ": non-numeric value for '" +
                          key + "'");
    }
}

long parse_long(const std::string& key, const std::string& value, int line) {
    const double v = parse_double(key, value, line);
    if (v != std::floor(v))
        throw ConfigError("line " + std::to_string(line) + ": '" + key +
                          "' must be an integer");
    return static_cast<long>(v);
}

bool parse_bool(const std::string& key, const std::string& value, int line) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ConfigError("line " + std::to_string(line) + ": '" + key +
                      "' expects true/false");
}

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

} // namespace

const char* to_string(ExperimentKind kind) {
    switch (kind) {
    case ExperimentKind::solve: return "solve";
    case ExperimentKind::barriers: return "barriers";
    case ExperimentKind::simulate: return "simulate";
    default: return "sweep";
    }
}

std::string ExperimentConfig::metadata() const {
    std::ostringstream os;
    const auto put = [&](const char* key, const std::string& value) {
        os << "# " << key << " = " << value << "\n";
    };
    const auto putd = [&](const char* key, double v) { put(key, format_value(v)); };
    put("experiment", to_string(kind));
    if (kind == ExperimentKind::sweep) put("sweep", sweep_name);
    putd("a", params.a);
    putd("b", params.b);
    putd("s", params.s);
    putd("rho", params.rho);
    putd("gamma", params.gamma);
    putd("ell", params.ell);
    putd("u", params.uu);
    putd("c_lo", params.c_lo);
    putd("c_hi", params.c_hi);
    putd("T", params.T);
    putd("m0", params.m0);
    putd("m_lo", params.m_lo);
    putd("m_hi", params.m_hi);
    putd("x_lo", grid.x_lo);
    putd("x_hi", grid.x_hi);
    putd("h1", grid.h1);
    putd("h2", grid.h2);
    putd("delta", grid.delta);
    putd("tol", solver.tol);
    put("max_inner_iters", std::to_string(solver.max_inner_iters));
    put("mode", to_string(solver.mode));
    putd("clamp_warn", solver.clamp_warn_threshold);
    put("clamp_fatal", solver.clamp_is_fatal ? "true" : "false");
    putd("dt", sim.dt);
    put("n_paths", std::to_string(sim.n_paths));
    put("seed", std::to_string(sim.seed));
    put("controls_enabled", sim.controls_enabled ? "true" : "false");
    put("reflect_belief", sim.reflect_belief ? "true" : "false");
    put("ground_truth", sim.ground_truth_mode ? "true" : "false");
    putd("x0", sim.x0);
    put("record_stride", std::to_string(sim.record_stride));
    putd("fig_tau", fig_tau);
    put("n_record_paths", std::to_string(n_record_paths));
    return os.str();
}

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    cfg.fig_tau = -1.0; // resolved to the horizon unless set explicitly
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;

    using Handler = std::function<void(const std::string&, int)>;
    const std::map<std::string, Handler> handlers = {
        {"a", [&](const std::string& v, int n) { cfg.params.a = parse_double("a", v, n); }},
        {"b", [&](const std::string& v, int n) { cfg.params.b = parse_double("b", v, n); }},
        {"s", [&](const std::string& v, int n) { cfg.params.s = parse_double("s", v, n); }},
        {"rho", [&](const std::string& v, int n) { cfg.params.rho = parse_double("rho", v, n); }},
        {"gamma", [&](const std::string& v, int n) { cfg.params.gamma = parse_double("gamma", v, n); }},
        {"ell", [&](const std::string& v, int n) { cfg.params.ell = parse_double("ell", v, n); }},
        {"u", [&](const std::string& v, int n) { cfg.params.uu = parse_double("u", v, n); }},
        {"c_lo", [&](const std::string& v, int n) { cfg.params.c_lo = parse_double("c_lo", v, n); }},
        {"c_hi", [&](const std::string& v, int n) { cfg.params.c_hi = parse_double("c_hi", v, n); }},
        {"T", [&](const std::string& v, int n) {
             cfg.params.T = parse_double("T", v, n);
             cfg.grid.T = cfg.params.T;
         }},
        {"m0", [&](const std::string& v, int n) { cfg.params.m0 = parse_double("m0", v, n); }},
        {"m_lo", [&](const std::string& v, int n) { cfg.params.m_lo = parse_double("m_lo", v, n); }},
        {"m_hi", [&](const std::string& v, int n) { cfg.params.m_hi = parse_double("m_hi", v, n); }},
        {"x_lo", [&](const std::string& v, int n) { cfg.grid.x_lo = parse_double("x_lo", v, n); }},
        {"x_hi", [&](const std::string& v, int n) { cfg.grid.x_hi = parse_double("x_hi", v, n); }},
        {"h1", [&](const std::string& v, int n) { cfg.grid.h1 = parse_double("h1", v, n); }},
        {"h2", [&](const std::string& v, int n) { cfg.grid.h2 = parse_double("h2", v, n); }},
        {"delta", [&](const std::string& v, int n) { cfg.grid.delta = parse_double("delta", v, n); }},
        {"tol", [&](const std::string& v, int n) { cfg.solver.tol = parse_double("tol", v, n); }},
        {"max_inner_iters", [&](const std::string& v, int n) {
             cfg.solver.max_inner_iters = static_cast<int>(parse_long("max_inner_iters", v, n));
         }},
        {"mode", [&](const std::string& v, int n) {
             if (v == "paper-verbatim") cfg.solver.mode = StencilMode::paper_verbatim;
             else if (v == "positive-corrected") cfg.solver.mode = StencilMode::positive_corrected;
             else throw ConfigError("line " + std::to_string(n) +
                                    ": mode must be paper-verbatim or positive-corrected");
         }},
        {"clamp_warn", [&](const std::string& v, int n) {
             cfg.solver.clamp_warn_threshold = parse_double("clamp_warn", v, n);
         }},
        {"clamp_fatal", [&](const std::string& v, int n) {
             cfg.solver.clamp_is_fatal = parse_bool("clamp_fatal", v, n);
         }},
        {"dt", [&](const std::string& v, int n) { cfg.sim.dt = parse_double("dt", v, n); }},
        {"n_paths", [&](const std::string& v, int n) { cfg.sim.n_paths = parse_long("n_paths", v, n); }},
        {"seed", [&](const std::string& v, int n) {
             cfg.sim.seed = static_cast<std::uint64_t>(parse_long("seed", v, n));
         }},
        {"controls_enabled", [&](const std::string& v, int n) {
             cfg.sim.controls_enabled = parse_bool("controls_enabled", v, n);
         }},
        {"reflect_belief", [&](const std::string& v, int n) {
             cfg.sim.reflect_belief = parse_bool("reflect_belief", v, n);
         }},
        {"ground_truth", [&](const std::string& v, int n) {
             cfg.sim.ground_truth_mode = parse_bool("ground_truth", v, n);
         }},
        {"x0", [&](const std::string& v, int n) { cfg.sim.x0 = parse_double("x0", v, n); }},
        {"record_stride", [&](const std::string& v, int n) {
             cfg.sim.record_stride = static_cast<int>(parse_long("record_stride", v, n));
         }},
        {"experiment", [&](const std::string& v, int n) {
             if (v == "solve") cfg.kind = ExperimentKind::solve;
             else if (v == "barriers") cfg.kind = ExperimentKind::barriers;
             else if (v == "simulate") cfg.kind = ExperimentKind::simulate;
             else if (v == "sweep") cfg.kind = ExperimentKind::sweep;
             else throw ConfigError("line " + std::to_string(n) +
                                    ": experiment must be solve|barriers|simulate|sweep");
         }},
        {"sweep", [&](const std::string& v, int) { cfg.sweep_name = v; }},
        {"out_dir", [&](const std::string& v, int) { cfg.out_dir = v; }},
        {"fig_tau", [&](const std::string& v, int n) { cfg.fig_tau = parse_double("fig_tau", v, n); }},
        {"n_record_paths", [&](const std::string& v, int n) {
             cfg.n_record_paths = static_cast<int>(parse_long("n_record_paths", v, n));
         }},
    };

    while (std::getline(in, raw)) {
        line_no++;
        std::string s = raw;
        if (const auto hash = s.find('#'); hash != std::string::npos) s.erase(hash);
        s = trim(s);
        if (s.empty()) continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        const auto it = handlers.find(key);
        if (it == handlers.end())
            throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        it->second(value, line_no);
    }

    cfg.sim.m0 = cfg.params.m0;
    if (cfg.fig_tau < 0.0) cfg.fig_tau = cfg.params.T;
    cfg.params.validate();
    if (cfg.kind == ExperimentKind::sweep && find_preset(cfg.sweep_name) == nullptr)
        throw ConfigError("unknown sweep preset '" + cfg.sweep_name + "'");
    if (!(cfg.fig_tau >= 0.0 && cfg.fig_tau <= cfg.params.T))
        throw ConfigError("fig_tau must lie in [0, T]");
    return cfg;
}

const std::vector<SweepPreset>& sweep_presets() {
    static const std::vector<SweepPreset> presets = {
        {"gamma", "gamma", {0.0, 20.0, 40.0}},
        {"tau", "", {6.0, 10.0, 20.0}},
        {"b", "b", {0.1, 0.2, 0.3}},
        {"s", "s", {0.0, 0.1, 0.2}},
        {"rho", "rho", {0.2, 0.3, 0.4}},
        {"ell", "ell", {2.0, 3.0, 4.0}},
        {"a", "a", {0.0, 0.2, 0.3}},
        {"c_lo", "c_lo", {1.0, 2.0, 3.0}},
    };
    return presets;
}

const SweepPreset* find_preset(const std::string& name) {
    for (const auto& p : sweep_presets())
        if (p.name == name) return &p;
    return nullptr;
}

void set_model_param(ModelParams& params, const std::string& key, double value) {
    if (key == "gamma") params.gamma = value;
    else if (key == "b") params.b = value;
    else if (key == "s") params.s = value;
    else if (key == "rho") params.rho = value;
    else if (key == "ell") params.ell = value;
    else if (key == "u") params.uu = value;
    else if (key == "a") params.a = value;
    else if (key == "c_lo") params.c_lo = value;
    else if (key == "c_hi") params.c_hi = value;
    else throw ConfigError("'" + key + "' is not a sweepable model parameter");
}

} // namespace ambinv
