#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sqom/config.hpp"
#include "sqom/errors.hpp"
#include "sqom/moments.hpp"
#include "sqom/pipeline.hpp"
#include "sqom/sweep.hpp"

namespace {

using namespace sqom;

enum Exit { ok = 0, failure = 1, config_error = 2, unstable = 3, nonconvergence = 4 };

struct Source {
    std::string config;
    std::string preset;
};

void add_source(CLI::App* cmd, Source& src) {
    auto* c = cmd->add_option("-c,--config", src.config, "run configuration file")->check(CLI::ExistingFile);
    auto* p = cmd->add_option("-p,--preset", src.preset, "named figure preset");
    c->excludes(p);
}

// Resolves the source into a run config. Presets carry their sweep.
RunConfig load(const Source& src) {
    if (!src.config.empty()) return load_config(src.config);
    if (src.preset.empty()) throw ConfigError("<command line>", 0, "", "give --config or --preset");
    SweepSpec spec;
    try {
        spec = figure_preset(src.preset);
    } catch (const UnknownPreset& e) {
        throw ConfigError("<command line>", 0, "preset", e.what());
    }
    RunConfig cfg;
    cfg.params = spec.base;
    cfg.tol = spec.tol;
    cfg.omega_m1_mhz = spec.omega_m1_mhz;
    cfg.sweep = spec;
    return cfg;
}

// Writes to a sibling temporary and renames, so readers never see a partial file.
void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text << std::flush;
        return;
    }
    const std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw Error("cannot write " + tmp.string());
        os << text;
        os.close();
        if (!os) throw Error("failed writing " + tmp.string());
    }
    std::filesystem::rename(tmp, target);
}

std::string cplx(cd z) { return format_double(z.real()) + (z.imag() < 0 ? " - " : " + ") +
                                format_double(std::abs(z.imag())) + "i"; }

std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : "NA"; }

int cmd_derive(const Source& src, bool pi_grid, const std::string& out) {
    const RunConfig cfg = load(src);
    std::ostringstream os;
    for (const auto& w : cfg.warnings) std::cerr << "warning: " << w << '\n';
    if (pi_grid) {
        SweepSpec grid = figure_preset("fig1b");
        grid.name = "pi-grid";
        grid.base = cfg.params;
        grid.tol = cfg.tol;
        const auto rows = run_sweep(grid);
        write_csv(os, grid, rows, false);
        write_output(out, os.str());
        return ok;
    }
    for (Direction d : {Direction::ccw, Direction::cw}) {
        const DerivedQuantities q = derive(cfg.params, d);
        os << "[" << to_string(d) << "]\n";
        os << "xi_d = " << format_double(q.xi_d) << '\n';
        os << "omega_s = " << format_double(q.omega_s) << '\n';
        os << "delta_r = " << format_double(q.delta_r) << '\n';
        os << "delta_theta = " << format_double(q.delta_theta) << '\n';
        os << "n_s = " << format_double(q.n_s) << '\n';
        os << "m_s = " << cplx(q.m_s) << '\n';
        for (int j = 0; j < 2; ++j) {
            os << "lambda_" << j + 1 << " = " << cplx(q.lambda_eff[j]) << '\n';
            os << "pi_" << j + 1 << " = " << opt(q.pi_factor[j]) << '\n';
        }
        os << '\n';
    }
    write_output(out, os.str());
    return ok;
}

void dump_cm(const std::string& path, const CovarianceMatrix& cm) {
    std::ostringstream os;
    for (int r = 0; r < 6; ++r) {
        for (int c = 0; c < 6; ++c) os << (c ? " " : "") << format_double(cm.v(r, c));
        os << '\n';
    }
    write_output(path, os.str());
}

int status_exit(PointStatus s) {
    switch (s) {
    case PointStatus::ok: return ok;
    case PointStatus::unstable: return unstable;
    case PointStatus::nonconvergence: return nonconvergence;
    case PointStatus::invalid: return config_error;
    default: return failure;
    }
}

int cmd_steady(const Source& src, const std::string& direction, const std::string& cm_path,
               const std::string& drift_path, const std::string& out, bool timestamp) {
    RunConfig cfg = load(src);
    for (const auto& w : cfg.warnings) std::cerr << "warning: " << w << '\n';
    if (!direction.empty()) cfg.params.direction = *parse_direction(direction);

    SweepSpec spec;
    spec.name = "steady";
    spec.base = cfg.params;
    spec.tol = cfg.tol;
    spec.omega_m1_mhz = cfg.omega_m1_mhz;
    spec.directions = cfg.params.direction == Direction::cw ? DirectionSet::cw : DirectionSet::ccw;
    spec.measures = MeasureSet::all();
    const auto rows = run_sweep(spec);
    const SweepRow& row = rows.front();

    if (!drift_path.empty()) {
        const OperatingPoint op = operating_point(cfg.params, cfg.params.direction, cfg.tol);
        std::ostringstream os;
        write_drift(os, assemble_drift(drift_inputs(cfg.params, op), cfg.tol));
        write_output(drift_path, os.str());
    }
    std::ostringstream os;
    write_csv(os, spec, rows, timestamp);
    write_output(out, os.str());
    if (row.cm && !cm_path.empty()) dump_cm(cm_path, *row.cm);
    if (row.status != PointStatus::ok) std::cerr << "error: " << to_string(row.status) << ": " << row.message << '\n';
    return status_exit(row.status);
}

int cmd_sweep(const Source& src, std::optional<int> workers, std::string out, bool no_timestamp) {
    const RunConfig cfg = load(src);
    for (const auto& w : cfg.warnings) std::cerr << "warning: " << w << '\n';
    if (!cfg.sweep) throw ConfigError(src.config, 0, "", "no [sweep] section");
    if (out.empty() && cfg.out) out = *cfg.out;
    const int n = workers.value_or(cfg.workers.value_or(1));
    if (n < 1) throw ConfigError("<command line>", 0, "workers", "must be >= 1");
    const bool timestamp = !no_timestamp && cfg.timestamp.value_or(true);
    const auto rows = run_sweep(*cfg.sweep, n);
    std::ostringstream os;
    write_csv(os, *cfg.sweep, rows, timestamp);
    write_output(out, os.str());
    return ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Steady-state Gaussian correlations of a squeezed three-mode optomechanical system"};
    app.require_subcommand(1);

    Source derive_src, steady_src, sweep_src;
    bool pi_grid = false, no_timestamp = false, steady_no_timestamp = false;
    std::string derive_out, steady_out, sweep_out, cm_path, drift_path, direction;
    std::optional<int> workers;

    auto* derive = app.add_subcommand("derive", "closed-form quantities for both directions");
    add_source(derive, derive_src);
    derive->add_flag("--pi-grid", pi_grid, "tabulate the enhancement factor over (r_d, theta_d)");
    derive->add_option("-o,--out", derive_out, "output file (default stdout)");

    auto* steady = app.add_subcommand("steady", "all measures at a single point");
    add_source(steady, steady_src);
    steady->add_option("--direction", direction, "override the drive direction")
        ->check(CLI::IsMember({"cw", "ccw"}));
    steady->add_option("--dump-cm", cm_path, "write the 6x6 covariance matrix ('-' for stdout)");
    steady->add_option("--dump-drift", drift_path, "write the drift matrix and drive vector");
    steady->add_option("-o,--out", steady_out, "output CSV (default stdout)");
    steady->add_flag("--no-timestamp", steady_no_timestamp, "omit the generated-at comment");

    auto* sweep = app.add_subcommand("sweep", "run a parameter sweep");
    add_source(sweep, sweep_src);
    sweep->add_option("-o,--out", sweep_out, "output CSV (default [output] path or stdout)");
    sweep->add_option("-j,--workers", workers, "worker threads");
    sweep->add_flag("--no-timestamp", no_timestamp, "omit the generated-at comment");

    auto* list = app.add_subcommand("preset-list", "list the figure presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? ok : config_error;
    }

    try {
        if (*derive) return cmd_derive(derive_src, pi_grid, derive_out);
        if (*steady)
            return cmd_steady(steady_src, direction, cm_path, drift_path, steady_out, !steady_no_timestamp);
        if (*sweep) return cmd_sweep(sweep_src, workers, sweep_out, no_timestamp);
        if (*list) {
            for (auto name : preset_names()) std::cout << name << "  " << preset_description(name) << '\n';
            return ok;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return config_error;
    } catch (const InvalidParameter& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return config_error;
    } catch (const Unstable& e) {
        std::cerr << "error: " << e.what() << '\n';
        return unstable;
    } catch (const NonConvergence& e) {
        std::cerr << "error: " << e.what() << '\n';
        return nonconvergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return failure;
    }
    return failure;
}
