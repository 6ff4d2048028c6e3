#include "ptring/cli.hpp"

#include "ptring/dynamics.hpp"
#include "ptring/io.hpp"
#include "ptring/phase.hpp"
#include "ptring/spectra.hpp"
#include "ptring/sweep.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <set>
#include <sstream>

namespace ptring::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::set<std::string> kCommands = {"spectrum",      "ring-chain-diff", "threshold",
                                         "phase-diagram", "chirality",       "trajectory"};

int default_jobs() {
    if (const char* env = std::getenv("PT_RING_JOBS")) {
        try {
            const int j = std::stoi(env);
            if (j >= 1) return j;
        } catch (const std::logic_error&) {
        }
        throw UsageError("PT_RING_JOBS: must be a positive integer");
    }
    return 1;
}

template <typename T>
T parse_number(const std::string& key, const std::string& value);

template <>
double parse_number<double>(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double x = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return x;
    } catch (const std::logic_error&) {
        throw UsageError(key + ": invalid number '" + value + "'");
    }
}

template <>
int parse_number<int>(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const int x = std::stoi(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return x;
    } catch (const std::logic_error&) {
        throw UsageError(key + ": invalid integer '" + value + "'");
    }
}

template <typename T>
std::vector<T> parse_list(const std::string& key, const std::string& value) {
    std::vector<T> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(parse_number<T>(key, item));
    if (out.empty()) throw UsageError(key + ": empty list");
    return out;
}

void validate(RunConfig& cfg) {
    if (!kCommands.count(cfg.command))
        throw UsageError("command: unknown or missing (expected one of spectrum, "
                         "ring-chain-diff, threshold, phase-diagram, chirality, trajectory)");
    if (cfg.lattice.n_sites == 0) throw UsageError("n_sites: required");
    if (std::isnan(cfg.lattice.alpha)) throw UsageError("alpha: required");
    try {
        cfg.lattice.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    for (double lam : cfg.lambda_values)
        if (lam < 0.0 || lam > 1.0)
            throw UsageError("lambda_values: entries must lie in [0, 1]");
    for (int m : cfg.m_values)
        if (m < 1 || m > cfg.lattice.n_sites / 2)
            throw UsageError("m_values: entries must satisfy 1 <= m <= floor(N/2)");
    for (int m0 : cfg.m0_values)
        if (m0 < 1 || m0 > cfg.lattice.n_sites)
            throw UsageError("m0_values: entries must satisfy 1 <= m0 <= N");
    for (double g : cfg.gamma_grid)
        if (g < 0.0) throw UsageError("gamma_grid: entries must be >= 0");
    if (cfg.output_format != "csv" && cfg.output_format != "json")
        throw UsageError("output_format: must be csv or json");
    if (cfg.jobs < 1) throw UsageError("parallelism: must be >= 1");
    if (!(cfg.tol_im > 0.0)) throw UsageError("tol_im: must be positive");
    if (!(cfg.bisect_tol > 0.0)) throw UsageError("bisect_tol: must be positive");
    if (!(cfg.dt > 0.0)) throw UsageError("dt: must be positive");
    if (cfg.window < 0.0) throw UsageError("window: must be >= 0");
    if (cfg.gamma_max < 0.0) throw UsageError("gamma_max: must be >= 0");
    if (cfg.command == "ring-chain-diff" && cfg.lattice.gamma != 0.0)
        throw UsageError("gamma: must be 0 for ring-chain-diff");
}

}  // namespace

RunConfig parse_config(const std::vector<std::string>& args) {
    CLI::App app{"PT-symmetric ring lattice toolkit"};
    app.require_subcommand(0, 1);

    std::string config_path;
    app.add_option("--config", config_path, "flat key-value config file");

    RunConfig cfg;
    cfg.lattice.n_sites = 0;  // sentinel: required
    cfg.lattice.alpha = std::numeric_limits<double>::quiet_NaN();
    cfg.jobs = 0;  // sentinel: resolve from env later

    std::string lambdas_arg, ms_arg, gammas_arg, m0_arg;
    app.add_option("--n,--n_sites", cfg.lattice.n_sites, "number of lattice sites N");
    app.add_option("--alpha", cfg.lattice.alpha, "tunneling profile exponent");
    app.add_option("--t0", cfg.lattice.t0, "tunneling scale (energy unit)");
    app.add_option("--m,--gain_site", cfg.lattice.gain_site, "gain impurity site m");
    app.add_option("--gamma", cfg.lattice.gamma, "impurity strength");
    app.add_option("--lambda,--lambda_ring", cfg.lattice.lambda_ring, "corner-link scale in [0,1]");
    app.add_option("--lambdas,--lambda_values", lambdas_arg, "comma list of lambda sweep values");
    app.add_option("--ms,--m_values", ms_arg, "comma list of gain sites to sweep");
    app.add_option("--gammas,--gamma_grid", gammas_arg, "comma list of gamma grid values");
    app.add_option("--m0,--m0_values", m0_arg, "comma list of initial wave-packet sites");
    app.add_option("--output-dir,--output_dir,-o", cfg.output_dir, "output directory");
    app.add_option("--format,--output_format", cfg.output_format, "csv or json");
    app.add_option("--jobs,--parallelism,-j", cfg.jobs, "worker count for sweeps");
    app.add_option("--tol-im,--tol_im", cfg.tol_im, "spectral reality tolerance (relative)");
    app.add_option("--bisect-tol,--bisect_tol", cfg.bisect_tol,
                   "bisection bracket target in units of Delta");
    app.add_option("--dt", cfg.dt, "quadrature step in time units");
    app.add_option("--window", cfg.window, "averaging / trajectory window in time units");
    app.add_option("--gamma-max,--gamma_max", cfg.gamma_max, "initial bisection bracket top");

    for (const auto& name : kCommands) {
        auto* sub = app.add_subcommand(name);
        sub->fallthrough();
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested{app.help()};
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    for (const auto* sub : app.get_subcommands()) cfg.command = sub->get_name();

    if (!lambdas_arg.empty()) cfg.lambda_values = parse_list<double>("lambda_values", lambdas_arg);
    if (!ms_arg.empty()) cfg.m_values = parse_list<int>("m_values", ms_arg);
    if (!gammas_arg.empty()) cfg.gamma_grid = parse_list<double>("gamma_grid", gammas_arg);
    if (!m0_arg.empty()) cfg.m0_values = parse_list<int>("m0_values", m0_arg);

    if (!config_path.empty()) {
        const auto kv = io::parse_flat_config(config_path);
        auto unset = [&](const char* flag) { return app.count(flag) == 0; };
        for (const auto& [key, value] : kv) {
            if (key == "command") {
                if (cfg.command.empty()) cfg.command = value;
            } else if (key == "n_sites") {
                if (unset("--n")) cfg.lattice.n_sites = parse_number<int>(key, value);
            } else if (key == "alpha") {
                if (unset("--alpha")) cfg.lattice.alpha = parse_number<double>(key, value);
            } else if (key == "t0") {
                if (unset("--t0")) cfg.lattice.t0 = parse_number<double>(key, value);
            } else if (key == "gain_site") {
                if (unset("--m")) cfg.lattice.gain_site = parse_number<int>(key, value);
            } else if (key == "gamma") {
                if (unset("--gamma")) cfg.lattice.gamma = parse_number<double>(key, value);
            } else if (key == "lambda_ring") {
                if (unset("--lambda")) cfg.lattice.lambda_ring = parse_number<double>(key, value);
            } else if (key == "lambda_values") {
                if (unset("--lambdas")) cfg.lambda_values = parse_list<double>(key, value);
            } else if (key == "m_values") {
                if (unset("--ms")) cfg.m_values = parse_list<int>(key, value);
            } else if (key == "gamma_grid") {
                if (unset("--gammas")) cfg.gamma_grid = parse_list<double>(key, value);
            } else if (key == "m0_values") {
                if (unset("--m0")) cfg.m0_values = parse_list<int>(key, value);
            } else if (key == "output_dir") {
                if (unset("--output-dir")) cfg.output_dir = value;
            } else if (key == "output_format") {
                if (unset("--format")) cfg.output_format = value;
            } else if (key == "parallelism") {
                if (unset("--jobs")) cfg.jobs = parse_number<int>(key, value);
            } else if (key == "tol_im") {
                if (unset("--tol-im")) cfg.tol_im = parse_number<double>(key, value);
            } else if (key == "bisect_tol") {
                if (unset("--bisect-tol")) cfg.bisect_tol = parse_number<double>(key, value);
            } else if (key == "dt") {
                if (unset("--dt")) cfg.dt = parse_number<double>(key, value);
            } else if (key == "window") {
                if (unset("--window")) cfg.window = parse_number<double>(key, value);
            } else if (key == "gamma_max") {
                if (unset("--gamma-max")) cfg.gamma_max = parse_number<double>(key, value);
            } else {
                throw UsageError(key + ": unknown config key");
            }
        }
    }

    if (cfg.jobs == 0) cfg.jobs = default_jobs();
    validate(cfg);
    return cfg;
}

namespace {

json config_to_json(const RunConfig& cfg) {
    return {{"command", cfg.command},
            {"n_sites", cfg.lattice.n_sites},
            {"alpha", cfg.lattice.alpha},
            {"t0", cfg.lattice.t0},
            {"gain_site", cfg.lattice.gain_site},
            {"gamma", cfg.lattice.gamma},
            {"lambda_ring", cfg.lattice.lambda_ring},
            {"lambda_values", cfg.lambda_values},
            {"m_values", cfg.m_values},
            {"gamma_grid", cfg.gamma_grid},
            {"m0_values", cfg.m0_values},
            {"output_dir", cfg.output_dir},
            {"output_format", cfg.output_format},
            {"parallelism", cfg.jobs},
            {"tol_im", cfg.tol_im},
            {"bisect_tol", cfg.bisect_tol},
            {"dt", cfg.dt},
            {"window", cfg.window},
            {"gamma_max", cfg.gamma_max}};
}

ThresholdOptions threshold_options(const RunConfig& cfg) {
    ThresholdOptions opts;
    opts.gamma_max = cfg.gamma_max;
    opts.tol = cfg.bisect_tol;
    opts.tol_im = cfg.tol_im;
    return opts;
}

struct OutputSink {
    fs::path dir;
    std::string format;
    std::vector<std::string> written;

    void emit(const std::string& stem, const std::string& csv, const json& mirror) {
        const fs::path path = dir / (stem + (format == "json" ? ".json" : ".csv"));
        io::write_file_atomic(path, format == "json" ? mirror.dump(2) + "\n" : csv);
        written.push_back(path.filename().string());
    }
};

}  // namespace

int run(const RunConfig& cfg) {
    const auto t_start = std::chrono::steady_clock::now();
    fs::create_directories(cfg.output_dir);
    OutputSink sink{cfg.output_dir, cfg.output_format, {}};
    json extra;
    int failures = 0;

    if (cfg.command == "spectrum") {
        const Spectrum s = eigen(build_hamiltonian(cfg.lattice), false);
        sink.emit("spectrum", io::spectrum_csv(s), io::spectrum_json(s));
    } else if (cfg.command == "ring-chain-diff") {
        const auto diff = ring_chain_difference(cfg.lattice);
        sink.emit("ring_chain_diff", io::ring_chain_csv(diff), io::ring_chain_json(diff));
    } else if (cfg.command == "threshold") {
        const PhasePoint p = find_threshold(cfg.lattice, threshold_options(cfg));
        PhaseDiagram d{cfg.lattice.alpha, cfg.lattice.n_sites, cfg.lattice.lambda_ring, {p}};
        sink.emit("threshold", io::phase_csv({d}), io::phase_json({d}));
        if (p.status == ThresholdStatus::error) ++failures;
    } else if (cfg.command == "phase-diagram") {
        const auto lambdas = cfg.lambda_values.empty()
                                 ? std::vector<double>{cfg.lattice.lambda_ring}
                                 : cfg.lambda_values;
        const auto ms = cfg.m_values.empty() ? full_m_grid(cfg.lattice.n_sites) : cfg.m_values;
        const auto diagrams =
            sweep_phase_diagram(cfg.lattice, lambdas, ms, threshold_options(cfg), cfg.jobs);
        for (const auto& d : diagrams)
            for (const auto& p : d.points)
                if (p.status == ThresholdStatus::error) ++failures;
        sink.emit("phase_diagram", io::phase_csv(diagrams), io::phase_json(diagrams));
        extra["lambda_values_used"] = lambdas;
        extra["m_values_used"] = ms;
    } else if (cfg.command == "chirality") {
        const PhasePoint th = find_threshold(cfg.lattice.with_gamma(0.0), threshold_options(cfg));
        if (th.status != ThresholdStatus::ok)
            throw std::runtime_error("chirality: no PT threshold below cap for this lattice");
        const auto grid = cfg.gamma_grid.empty() ? default_gamma_grid(th) : cfg.gamma_grid;
        AveragingOptions opts;
        opts.window = cfg.window;
        opts.dt = cfg.dt;
        opts.tol_im = cfg.tol_im;
        const auto m0s = cfg.m0_values.empty() ? std::vector<int>{1} : cfg.m0_values;
        for (int m0 : m0s) {
            const ChiralityCurve curve =
                chirality_curve(cfg.lattice, m0, grid, opts, cfg.jobs, &th);
            sink.emit("chirality_m0_" + std::to_string(m0),
                      io::chirality_csv(curve, th.gamma_pt),
                      io::chirality_json(curve, th.gamma_pt));
        }
        extra["gamma_pt"] = th.gamma_pt;
        extra["gamma_grid_used"] = grid;
    } else if (cfg.command == "trajectory") {
        const double t_end = cfg.window > 0.0 ? cfg.window : 10.0;
        const auto m0s = cfg.m0_values.empty() ? std::vector<int>{1} : cfg.m0_values;
        Propagator prop(cfg.lattice);
        for (int m0 : m0s) {
            std::vector<WaveState> samples;
            const WaveState init = single_site_state(cfg.lattice.n_sites, m0);
            const int n_samples = static_cast<int>(std::floor(t_end / cfg.dt)) + 1;
            samples.reserve(n_samples);
            for (int i = 0; i < n_samples; ++i)
                samples.push_back(prop.apply(init, i * cfg.dt));
            sink.emit("trajectory_m0_" + std::to_string(m0), io::trajectory_csv(samples),
                      io::trajectory_json(samples));
        }
    }

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    json manifest = {{"command", cfg.command},
                     {"version", kVersion},
                     {"wall_time_seconds", wall},
                     {"inputs", config_to_json(cfg)},
                     {"outputs", sink.written},
                     {"failed_points", failures}};
    if (!extra.is_null()) manifest["resolved"] = extra;
    io::write_file_atomic(fs::path(cfg.output_dir) / "manifest.json", manifest.dump(2) + "\n");
    return failures == 0 ? 0 : 1;
}

}  // namespace ptring::cli
