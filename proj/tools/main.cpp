// main.cpp — mpcav command line: sweep, dist, validate, dump-coeffs

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "mpcav/config.hpp"
#include "mpcav/dynamics.hpp"
#include "mpcav/io.hpp"
#include "mpcav/sweep.hpp"
#include "mpcav/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitBandBreach = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flag values start unset so that config-file keys and command-line flags can
// be merged with flags taking precedence.
struct CommonArgs {
    std::string config_path;
    std::optional<double> eta, xi, nbar, kappa, gamma, omega, rabi, tol;
    std::optional<int> order;
    std::optional<std::string> nmax; // integer or "adaptive"
    bool include_kappa_eta = false;
    std::string out_path;
    std::optional<std::string> format;
};

void add_common_options(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "key = value config file");
    cmd->add_option("--eta", args.eta, "coupling ratio g/(2 Omega)");
    cmd->add_option("--xi", args.xi, "detuning ratio Delta/(2 Omega)");
    cmd->add_option("--nbar", args.nbar, "thermal occupancy");
    cmd->add_option("--kappa", args.kappa, "cavity leak rate");
    cmd->add_option("--gamma", args.gamma, "emitter decay rate (rate unit)");
    cmd->add_option("--omega", args.omega, "cavity frequency (full solver)");
    cmd->add_option("--rabi", args.rabi, "Rabi frequency Omega (full solver)");
    cmd->add_option("--order", args.order, "photon process order N");
    cmd->add_option("--nmax", args.nmax, "Fock truncation: integer or 'adaptive'");
    cmd->add_option("--tol", args.tol, "adaptive truncation tolerance");
    cmd->add_flag("--include-kappa-eta", args.include_kappa_eta,
                  "keep the kappa eta^2 double-sum generator terms");
    cmd->add_option("--out", args.out_path, "output file (default stdout)");
    cmd->add_option("--format", args.format, "output format: csv | json");
}

// Config file first, flags override; the merged config is what gets hashed.
mpcav::KeyValueConfig resolve_config(const CommonArgs& args) {
    mpcav::KeyValueConfig config;
    if (!args.config_path.empty())
        config = mpcav::KeyValueConfig::from_file(args.config_path);
    auto override_double = [&config](const char* key, const std::optional<double>& v) {
        if (v) config.set(key, mpcav::format_double(*v));
    };
    override_double("eta", args.eta);
    override_double("xi", args.xi);
    override_double("nbar", args.nbar);
    override_double("kappa", args.kappa);
    override_double("gamma", args.gamma);
    override_double("omega", args.omega);
    override_double("rabi", args.rabi);
    override_double("tol", args.tol);
    if (args.order) config.set("order", std::to_string(*args.order));
    if (args.nmax) config.set("nmax", *args.nmax);
    if (args.include_kappa_eta) config.set("include_kappa_eta", "true");
    if (args.format) config.set("format", *args.format);
    return config;
}

// All rates are normalized to gamma = 1 internally; outputs echo the
// normalized values.
mpcav::ModelParams params_from(const mpcav::KeyValueConfig& config) {
    mpcav::ModelParams params;
    const double gamma_in = config.get_double("gamma", 1.0);
    if (!(gamma_in > 0.0)) throw UsageError("gamma must be positive");
    params.gamma = 1.0;
    params.kappa = config.get_double("kappa", 1e-3) / gamma_in;
    params.nbar = config.get_double("nbar", 0.0);
    params.eta = config.get_double("eta", 0.0);
    params.xi = config.get_double("xi", 0.0);
    if (config.has("omega")) params.omega = config.get_double("omega", 0.0) / gamma_in;
    if (config.has("rabi")) params.Omega = config.get_double("rabi", 0.0) / gamma_in;
    return params;
}

mpcav::TruncationSpec truncation_from(const mpcav::KeyValueConfig& config) {
    mpcav::TruncationSpec spec;
    spec.tolerance = config.get_double("tol", 1e-8);
    const std::string nmax = config.get_or("nmax", "adaptive");
    if (nmax == "adaptive") {
        spec.n_max = 0;
    } else {
        try {
            spec.n_max = std::stoi(nmax);
        } catch (const std::exception&) {
            throw UsageError("--nmax expects an integer or 'adaptive'");
        }
        if (spec.n_max <= 0) throw UsageError("--nmax must be positive");
    }
    return spec;
}

mpcav::OutputFormat format_from(const mpcav::KeyValueConfig& config) {
    const std::string name = config.get_or("format", "csv");
    const auto format = mpcav::parse_format(name);
    if (!format) throw UsageError("unknown output format: " + name);
    return *format;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty())
        std::cout << text;
    else
        mpcav::write_text_file(out_path, text);
}

int run_sweep_command(const CommonArgs& args, const std::vector<double>& cli_values,
                      const std::vector<int>& cli_orders, const std::string& cli_axis,
                      std::optional<double> start, std::optional<double> stop,
                      std::optional<int> count, int threads) {
    mpcav::KeyValueConfig config = resolve_config(args);
    if (!cli_axis.empty()) config.set("axis", cli_axis);

    mpcav::SweepSpec spec;
    const std::string axis_name = config.get_or("axis", "eta");
    const auto axis = mpcav::parse_axis(axis_name);
    if (!axis) throw UsageError("unknown sweep axis: " + axis_name);
    spec.axis = *axis;

    if (!cli_values.empty()) {
        spec.values = cli_values;
    } else if (start || stop || count) {
        if (!start || !stop || !count)
            throw UsageError("--start, --stop and --count must be given together");
        spec.values = mpcav::SweepSpec::linear_grid(*start, *stop, *count);
    } else if (config.has("values")) {
        spec.values = config.get_double_list("values");
    } else if (config.has("start") || config.has("stop") || config.has("count")) {
        if (!config.has("start") || !config.has("stop") || !config.has("count"))
            throw UsageError("config keys start, stop and count must appear together");
        spec.values = mpcav::SweepSpec::linear_grid(config.get_double("start", 0.0),
                                                    config.get_double("stop", 0.0),
                                                    config.get_int("count", 0));
    }
    if (spec.values.empty()) throw UsageError("sweep needs axis values (--values or --start/--stop/--count)");

    if (!cli_orders.empty())
        spec.N_list = cli_orders;
    else if (config.has("orders"))
        spec.N_list = config.get_int_list("orders");
    else
        spec.N_list = {config.get_int("order", 1)};
    for (const int N : spec.N_list)
        if (N < 1) throw UsageError("photon orders must be at least 1");

    spec.fixed = params_from(config);
    spec.include_kappa_eta = config.get_bool("include_kappa_eta", false);
    spec.truncation = truncation_from(config);

    // Record the resolved sweep shape in the hashed config.
    config.set("axis", axis_name);
    {
        std::string joined;
        for (const double v : spec.values)
            joined += (joined.empty() ? "" : ",") + mpcav::format_double(v);
        config.set("values", joined);
    }

    const mpcav::SweepResult result = mpcav::run_sweep(spec, threads);
    emit(mpcav::render_sweep(result, format_from(config), config.hash()), args.out_path);
    return kExitOk;
}

int run_dist_command(const CommonArgs& args) {
    mpcav::KeyValueConfig config = resolve_config(args);
    const int N = config.get_int("order", 1);
    if (N < 1) throw UsageError("--order must be at least 1");
    const auto result = mpcav::run_distribution(
        params_from(config), N, truncation_from(config),
        config.get_bool("include_kappa_eta", false));
    emit(mpcav::render_distribution(result, format_from(config), config.hash()),
         args.out_path);
    return kExitOk;
}

int run_validate_command(const CommonArgs& args) {
    mpcav::KeyValueConfig config = resolve_config(args);
    const int N = config.get_int("order", 2);
    if (N < 1) throw UsageError("--order must be at least 1");
    if (!config.has("omega") || !config.has("rabi"))
        throw UsageError("validate requires --omega and --rabi");
    const auto result = mpcav::run_validate(
        params_from(config), N, truncation_from(config),
        config.get_bool("include_kappa_eta", false));
    emit(mpcav::render_validate(result, format_from(config), config.hash()),
         args.out_path);
    return result.within_band ? kExitOk : kExitBandBreach;
}

int run_dump_command(const CommonArgs& args) {
    mpcav::KeyValueConfig config = resolve_config(args);
    const int N = config.get_int("order", 0);
    if (N < 1) throw UsageError("dump-coeffs requires --order N with N >= 1");
    int n_max = 16;
    const std::string nmax = config.get_or("nmax", "");
    if (!nmax.empty() && nmax != "adaptive") {
        try {
            n_max = std::stoi(nmax);
        } catch (const std::exception&) {
            throw UsageError("--nmax expects an integer or 'adaptive'");
        }
    }
    n_max = std::max(n_max, 4 * N);
    const std::string text = mpcav::dump_coeffs_json(
        params_from(config), N, n_max, config.get_bool("include_kappa_eta", false));
    emit(text + "\n", args.out_path);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"multiphoton cavity conversion simulator"};
    app.set_version_flag("--version", mpcav::kVersion);
    app.require_subcommand(1);

    CommonArgs sweep_args, dist_args, validate_args, dump_args;
    std::vector<double> sweep_values;
    std::vector<int> sweep_orders;
    std::string sweep_axis;
    std::optional<double> sweep_start, sweep_stop;
    std::optional<int> sweep_count;
    int sweep_threads = 0;

    CLI::App* sweep = app.add_subcommand("sweep", "steady-state observables along a parameter axis");
    add_common_options(sweep, sweep_args);
    sweep->add_option("--axis", sweep_axis, "eta | xi | nbar | kappa_over_gamma");
    sweep->add_option("--values", sweep_values, "explicit axis values")->delimiter(',');
    sweep->add_option("--start", sweep_start, "linear grid start");
    sweep->add_option("--stop", sweep_stop, "linear grid stop");
    sweep->add_option("--count", sweep_count, "linear grid point count");
    sweep->add_option("--orders", sweep_orders, "photon orders, e.g. 1,2")->delimiter(',');
    sweep->add_option("--threads", sweep_threads, "worker pool size (0 = hardware)");

    CLI::App* dist = app.add_subcommand("dist", "steady-state photon distribution P_n");
    add_common_options(dist, dist_args);

    CLI::App* validate = app.add_subcommand("validate", "full Lindblad vs effective model comparison");
    add_common_options(validate, validate_args);

    CLI::App* dump = app.add_subcommand("dump-coeffs", "generator band entries and provenance as JSON");
    add_common_options(dump, dump_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForVersion")
            return app.exit(e);
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (sweep->parsed())
            return run_sweep_command(sweep_args, sweep_values, sweep_orders, sweep_axis,
                                     sweep_start, sweep_stop, sweep_count, sweep_threads);
        if (dist->parsed()) return run_dist_command(dist_args);
        if (validate->parsed()) return run_validate_command(validate_args);
        if (dump->parsed()) return run_dump_command(dump_args);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const mpcav::ConfigError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitUsage;
}
