#pragma once

// Command-line front end: simulate, sweep, scenario, spectrum, check.

#include "nhq/claims.hpp"
#include "nhq/io.hpp"
#include "nhq/scenarios.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace nhq {

namespace cli {

// Physics/grid flags shared by simulate, sweep and spectrum. Unset flags leave the config-file value alone.
struct CommonFlags {
    std::string config_path;
    std::optional<int> qubits;
    std::optional<double> omega;
    std::optional<double> gamma;
    std::optional<double> coupling;
    std::optional<double> delta;
    std::optional<double> tmax;
    std::optional<std::size_t> steps;
    std::optional<std::string> init;
    std::optional<std::string> out;
    std::optional<std::string> format;

    void attach(CLI::App& app) {
        app.add_option("--config", config_path, "JSON run configuration file");
        app.add_option("--qubits", qubits, "number of qubits");
        app.add_option("--omega", omega, "drive Omega on every qubit (units of J)");
        app.add_option("--gamma", gamma, "decay gamma on every qubit (units of J)");
        app.add_option("--coupling", coupling, "coupling on every pair (reference J = 1)");
        app.add_option("--delta", delta, "detuning on every qubit (units of J)");
        app.add_option("--tmax", tmax, "final time Jt");
        app.add_option("--steps", steps, "number of time steps (grid has steps + 1 points)");
        app.add_option("--init", init, "initial state: all-f | spin-coherent:PHI | ghz");
        add_output(app);
    }

    void add_output(CLI::App& app) {
        app.add_option("--out", out, "output path (default: stdout)");
        app.add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));
    }

    // Config file (if any) with flag overrides applied, validated.
    RunConfigFile resolve() const {
        RunConfigFile c;
        if (!config_path.empty()) {
            c = load_run_config(config_path);
        } else {
            const int n = qubits.value_or(3);
            require_qubit_count(n);
            c.system = SystemConfig::symmetric(n, 0.0, 0.0);
        }
        if (qubits && *qubits != c.system.n_qubits) {
            // Changing the register size resets per-qubit vectors to the uniform form of qubit 1's values.
            require_qubit_count(*qubits);
            const auto& s = c.system;
            const double j = s.n_qubits > 1 ? s.coupling[0][1] : 1.0;
            c.system = SystemConfig::symmetric(*qubits, s.omega.front(), s.gamma.front(), j, s.delta.front());
        }
        if (omega) apply_parameter(c.system, Parameter::omega, *omega);
        if (gamma) apply_parameter(c.system, Parameter::gamma, *gamma);
        if (coupling) apply_parameter(c.system, Parameter::coupling, *coupling);
        if (delta) apply_parameter(c.system, Parameter::delta, *delta);
        if (tmax) c.time_grid.t_max = *tmax;
        if (steps) c.time_grid.steps = *steps;
        if (init) c.initial_state = InitialState::parse(*init);
        if (out) c.output.path = *out;
        if (format) c.output.format = parse_format(*format);
        c.system.validate();
        if (!(c.time_grid.t_max >= 0.0) || !std::isfinite(c.time_grid.t_max)) {
            throw ValidationError("tmax ≥ 0", "tmax = " + std::to_string(c.time_grid.t_max));
        }
        if (c.time_grid.steps == 0) throw ValidationError("steps ≥ 1", "steps = 0");
        return c;
    }
};

// "gamma=0:12:121" -> axis over 121 points.
inline SweepAxis parse_vary(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw InvalidArgument("--vary expects NAME=START:STOP:POINTS, got '" + text + "'");
    SweepAxis axis{parse_parameter(text.substr(0, eq)), {}};
    std::stringstream ss(text.substr(eq + 1));
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(ss, part, ':')) parts.push_back(part);
    if (parts.size() != 3) throw InvalidArgument("--vary expects NAME=START:STOP:POINTS, got '" + text + "'");
    try {
        const double start = std::stod(parts[0]);
        const double stop = std::stod(parts[1]);
        const long points = std::stol(parts[2]);
        if (points < 1) throw InvalidArgument("--vary needs at least one point");
        axis.values = linspace(start, stop, static_cast<std::size_t>(points));
    } catch (const std::logic_error&) {
        throw InvalidArgument("--vary has a non-numeric field: '" + text + "'");
    }
    return axis;
}

inline void emit_table(const SweepResult& result, const OutputSpec& output, std::ostream& out) {
    if (output.path.empty()) {
        write_table(result, output.format, out);
    } else {
        write_table(result, output.format, output.path);
    }
}

inline ScenarioSpec spec_from_config(const RunConfigFile& c) {
    ScenarioSpec spec;
    spec.name = "custom";
    spec.config = c.system;
    spec.times = c.time_grid.points();
    spec.initial_state = c.initial_state;
    spec.observables = c.observables;
    return spec;
}

inline void print_claims(const std::vector<ClaimResult>& results, std::ostream& out) {
    for (const auto& r : results) {
        out << (r.passed ? "PASS " : "FAIL ") << r.id << "  measured=" << format_number(r.measured) << "  bound "
            << r.bound << "  (" << r.description << ")\n";
    }
}

} // namespace cli

// Entry point of the nhq tool. Returns the process exit status (see ExitCode).
inline int cli_main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Non-Hermitian all-to-all qubit entanglement simulator", "nhq"};
    app.require_subcommand(1);

    cli::CommonFlags simulate_flags;
    auto* simulate = app.add_subcommand("simulate", "evolve one configuration and tabulate observables over time");
    simulate_flags.attach(*simulate);

    cli::CommonFlags sweep_flags;
    std::vector<std::string> vary;
    auto* sweep = app.add_subcommand("sweep", "evolve a configuration for every value of swept parameters");
    sweep_flags.attach(*sweep);
    sweep->add_option("--vary", vary, "NAME=START:STOP:POINTS with NAME in omega, gamma, coupling, delta")
        ->required();

    cli::CommonFlags scenario_flags;
    std::string scenario_name;
    std::size_t gamma_points = Resolution{}.gamma_points;
    std::optional<std::size_t> scenario_steps;
    auto* scenario = app.add_subcommand("scenario", "run a named experiment");
    scenario->add_option("name", scenario_name, "scenario name")->required()->check(CLI::IsMember(scenario_names()));
    scenario->add_option("--steps", scenario_steps, "time steps over Jt in [0, 4pi] (default 1000)");
    scenario->add_option("--gamma-points", gamma_points, "points of the gamma sweeps (default 101)");
    scenario_flags.add_output(*scenario);

    cli::CommonFlags spectrum_flags;
    std::optional<double> tolerance;
    auto* spec_cmd = app.add_subcommand("spectrum", "eigenvalues of H and passive-PT classification");
    spectrum_flags.attach(*spec_cmd);
    spec_cmd->add_option("--tolerance", tolerance, "absolute tolerance on residual imaginary parts "
                                                   "(default 1e-6 x spectral radius)");

    std::optional<std::string> check_format;
    auto* check = app.add_subcommand("check", "evaluate every published claim; exit 0 iff all pass");
    check->add_option("--format", check_format, "report format")->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : static_cast<int>(ExitCode::usage);
    }

    try {
        if (simulate->parsed()) {
            const auto config = simulate_flags.resolve();
            cli::emit_table(run_scenario(cli::spec_from_config(config)), config.output, out);
        } else if (sweep->parsed()) {
            const auto config = sweep_flags.resolve();
            auto spec = cli::spec_from_config(config);
            for (const auto& v : vary) spec.axes.push_back(cli::parse_vary(v));
            cli::emit_table(run_scenario(spec), config.output, out);
        } else if (scenario->parsed()) {
            Resolution res;
            if (scenario_steps) {
                if (*scenario_steps == 0) throw ValidationError("steps ≥ 1", "steps = 0");
                res.time_points = *scenario_steps + 1;
            }
            if (gamma_points < 2) throw ValidationError("gamma-points ≥ 2", std::to_string(gamma_points));
            res.gamma_points = gamma_points;
            OutputSpec output;
            if (scenario_flags.out) output.path = *scenario_flags.out;
            if (scenario_flags.format) output.format = parse_format(*scenario_flags.format);
            cli::emit_table(run_scenario(named_scenario(scenario_name, res)), output, out);
        } else if (spec_cmd->parsed()) {
            const auto config = spectrum_flags.resolve();
            const Operator h = build_hamiltonian(config.system);
            const auto probe = spectrum(h, 1.0);
            const double tol = tolerance.value_or(1e-6 * std::max(probe.spectral_radius, 1e-300));
            const auto report = spectrum(h, tol);
            if (config.output.path.empty()) {
                write_spectrum(report, config.output.format, out);
            } else {
                std::ofstream file(config.output.path, std::ios::binary);
                if (!file) throw IoError(config.output.path, "cannot open for writing");
                write_spectrum(report, config.output.format, file);
                if (!file) throw IoError(config.output.path, "write failed");
            }
        } else if (check->parsed()) {
            const auto results = check_claims();
            if (check_format.value_or("text") == "json") {
                ordered_json arr = ordered_json::array();
                for (const auto& r : results) {
                    arr.push_back({{"id", r.id},
                                   {"passed", r.passed},
                                   {"measured", r.measured},
                                   {"bound", r.bound},
                                   {"description", r.description}});
                }
                out << arr.dump(2) << '\n';
            } else {
                cli::print_claims(results, out);
            }
            const bool all = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
            return all ? 0 : static_cast<int>(ExitCode::numerical);
        }
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::io);
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::validation);
    } catch (const PostSelectionExtinct& e) {
        err << "error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::numerical);
    } catch (const NumericalFailure& e) {
        err << "error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::numerical);
    }
    return 0;
}

} // namespace nhq
