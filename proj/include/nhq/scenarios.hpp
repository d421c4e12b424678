#pragma once

// Named parameter sweeps reproducing the strong-driving (3 qubits), strong-coupling
// (3 qubits) and four-qubit entropy experiments, plus user-defined sweeps.

#include "nhq/entanglement.hpp"
#include "nhq/evolution.hpp"
#include "nhq/qubit_model.hpp"

#include <algorithm>
#include <cmath>
#include <atomic>
#include <exception>
#include <thread>
#include <limits>
#include <optional>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

namespace nhq {

inline constexpr const char* kArtifactVersion = "1.0.0";

enum class Observable { tau, entropy, fidelity, survival, spectrum };

inline std::string to_string(Observable o) {
    switch (o) {
    case Observable::tau:
        return "tau";
    case Observable::entropy:
        return "entropy";
    case Observable::fidelity:
        return "fidelity";
    case Observable::survival:
        return "survival";
    case Observable::spectrum:
        return "spectrum";
    }
    return {};
}

inline Observable parse_observable(std::string_view text) {
    for (auto o : {Observable::tau, Observable::entropy, Observable::fidelity, Observable::survival,
                   Observable::spectrum}) {
        if (text == to_string(o)) return o;
    }
    throw InvalidArgument("unknown observable '" + std::string(text) + "'");
}

inline const std::vector<Observable>& default_observables() {
    static const std::vector<Observable> all = {Observable::tau, Observable::entropy, Observable::fidelity,
                                                Observable::survival};
    return all;
}

// A uniformly applied parameter swept over a list of values.
enum class Parameter { omega, gamma, coupling, delta };

inline std::string to_string(Parameter p) {
    switch (p) {
    case Parameter::omega:
        return "Omega";
    case Parameter::gamma:
        return "gamma";
    case Parameter::coupling:
        return "J";
    case Parameter::delta:
        return "delta";
    }
    return {};
}

inline Parameter parse_parameter(std::string_view text) {
    if (text == "omega" || text == "Omega") return Parameter::omega;
    if (text == "gamma") return Parameter::gamma;
    if (text == "coupling" || text == "J") return Parameter::coupling;
    if (text == "delta") return Parameter::delta;
    throw InvalidArgument("unknown sweep parameter '" + std::string(text) + "'");
}

// Sets `p` to `value` on every qubit (or every pair, for the coupling).
inline void apply_parameter(SystemConfig& config, Parameter p, double value) {
    const auto n = static_cast<std::size_t>(config.n_qubits);
    switch (p) {
    case Parameter::omega:
        config.omega.assign(n, value);
        break;
    case Parameter::gamma:
        config.gamma.assign(n, value);
        break;
    case Parameter::delta:
        config.delta.assign(n, value);
        break;
    case Parameter::coupling:
        config.coupling.assign(n, std::vector<double>(n, value));
        for (std::size_t j = 0; j < n; ++j) config.coupling[j][j] = 0.0;
        break;
    }
}

struct SweepAxis {
    Parameter parameter;
    std::vector<double> values;
};

using Metadata = std::vector<std::pair<std::string, std::string>>;

struct ScenarioSpec {
    std::string name = "custom";
    SystemConfig config;           // template; swept parameters overwrite it
    std::vector<SweepAxis> axes;   // outermost first
    std::vector<double> times;     // Jt values, ascending
    InitialState initial_state;
    std::vector<Observable> observables = default_observables();
    Metadata notes;                // assumptions surfaced in the result metadata
};

struct SweepRow {
    std::vector<double> parameters; // one per axis
    double time = 0.0;
    std::vector<double> values;     // one per observable column; NaN when extinct
    bool extinct = false;
};

struct SweepResult {
    std::vector<std::string> parameter_names;
    std::vector<std::string> observable_names;
    std::vector<SweepRow> rows;
    Metadata metadata;

    // Parameter columns, "Jt", observable columns, "extinct".
    std::vector<std::string> column_names() const {
        std::vector<std::string> out = parameter_names;
        out.emplace_back("Jt");
        out.insert(out.end(), observable_names.begin(), observable_names.end());
        out.emplace_back("extinct");
        return out;
    }
};

struct Resolution {
    std::size_t time_points = 1001; // uniform over Jt in [0, 4 pi]
    std::size_t gamma_points = 101; // for the gamma sweeps at fixed Jt
};

inline std::vector<double> linspace(double lo, double hi, std::size_t points) {
    if (points == 0) return {};
    if (points == 1) return {lo};
    std::vector<double> out(points);
    for (std::size_t i = 0; i < points; ++i) {
        out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    }
    return out;
}

inline const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names = {"fig2a", "fig2b", "fig2c", "fig2d", "fig3a",
                                                   "fig3b", "fig3c", "fig3d", "fig4a", "fig4b"};
    return names;
}

// The fully determined parameter set of a named experiment.
inline ScenarioSpec named_scenario(const std::string& name, const Resolution& res = {}) {
    constexpr double pi = std::numbers::pi;
    const auto time_grid = uniform_grid(4.0 * pi, res.time_points);
    const std::vector<double> strong_drive = {10.0, 50.0, 100.0};
    const std::vector<double> weak_drive = {0.0, 0.01, 0.1, 0.5};

    ScenarioSpec spec;
    spec.name = name;
    spec.notes.emplace_back("time_grid", "uniform Jt in [0, 4pi], " + std::to_string(res.time_points) + " points");

    auto strong_driving = [&](double gamma) {
        spec.config = SystemConfig::symmetric(3, 0.0, 0.0);
        spec.axes = {{Parameter::omega, strong_drive}, {Parameter::gamma, {gamma}}};
        spec.times = time_grid;
        spec.initial_state = InitialState{InitialState::Kind::all_f};
    };
    auto strong_coupling = [&](double gamma) {
        spec.config = SystemConfig::symmetric(3, 0.0, 0.0);
        spec.axes = {{Parameter::omega, weak_drive}, {Parameter::gamma, {gamma}}};
        spec.times = time_grid;
        spec.initial_state = InitialState{InitialState::Kind::spin_coherent, kSpinCoherentPhase};
    };
    auto four_qubit = [&](double gamma) {
        spec.config = SystemConfig::symmetric(4, 0.0, 0.0);
        spec.axes = {{Parameter::omega, strong_drive}, {Parameter::gamma, {gamma}}};
        spec.times = time_grid;
        spec.initial_state = InitialState{InitialState::Kind::all_f};
        spec.observables = {Observable::entropy, Observable::fidelity, Observable::survival};
        spec.notes.emplace_back("initial_state_assumption",
                                "4-qubit initial state assumed all-f, as for 3 qubits");
    };

    if (name == "fig2a") {
        strong_driving(0.0);
    } else if (name == "fig2b") {
        strong_driving(1.0);
    } else if (name == "fig2c") {
        strong_driving(6.0);
    } else if (name == "fig2d") {
        strong_driving(0.0);
        spec.axes[1].values = linspace(0.0, 12.0, res.gamma_points);
        spec.times = {pi};
        spec.notes = {{"gamma_grid", "gamma/J in [0, 12], " + std::to_string(res.gamma_points) +
                                         " points (chosen range)"},
                      {"time", "Jt = pi"}};
    } else if (name == "fig3a") {
        strong_coupling(0.0);
    } else if (name == "fig3b") {
        strong_coupling(0.1);
    } else if (name == "fig3c") {
        strong_coupling(0.25);
    } else if (name == "fig3d") {
        strong_coupling(0.0);
        spec.axes[1].values = linspace(0.0, 0.5, res.gamma_points);
        spec.times = {pi / 2.0};
        spec.notes = {{"gamma_grid", "gamma/J in [0, 0.5], " + std::to_string(res.gamma_points) +
                                         " points (chosen range)"},
                      {"time", "Jt = pi/2"}};
    } else if (name == "fig4a") {
        four_qubit(0.0);
    } else if (name == "fig4b") {
        four_qubit(6.0);
    } else {
        throw InvalidArgument("unknown scenario '" + name + "'");
    }
    return spec;
}

namespace detail {

inline std::vector<std::string> observable_columns(const std::vector<Observable>& observables, int n) {
    std::vector<std::string> cols;
    auto wants = [&](Observable o) { return std::find(observables.begin(), observables.end(), o) != observables.end(); };
    if (wants(Observable::tau) && n == 3) cols.emplace_back("tau");
    if (wants(Observable::entropy))
        for (int j = 1; j <= n; ++j) cols.push_back("S" + std::to_string(j));
    if (wants(Observable::fidelity) && n >= 2) {
        cols.emplace_back("fidelity_ghz");
        cols.emplace_back("fidelity_local_phases");
    }
    if (wants(Observable::survival)) cols.emplace_back("survival");
    if (wants(Observable::spectrum)) {
        cols.emplace_back("pt_symmetric");
        cols.emplace_back("imag_spread");
    }
    return cols;
}

struct PointValues {
    std::vector<double> values;
    bool extinct = false;
};

inline PointValues observe(const std::vector<Observable>& observables, const StateVector& psi, double time,
                           double survival, const SpectrumReport* spec) {
    auto wants = [&](Observable o) { return std::find(observables.begin(), observables.end(), o) != observables.end(); };
    const EntanglementReport r = report(psi, time, survival);
    const int n = psi.n_qubits();
    PointValues out;
    if (wants(Observable::tau) && n == 3) out.values.push_back(*r.tau);
    if (wants(Observable::entropy)) out.values.insert(out.values.end(), r.entropies.begin(), r.entropies.end());
    if (wants(Observable::fidelity) && n >= 2) {
        out.values.push_back(r.fidelity_ghz);
        out.values.push_back(r.fidelity_ghz_up_to_local_phases);
    }
    if (wants(Observable::survival)) out.values.push_back(survival);
    if (spec) {
        out.values.push_back(spec->is_pt_symmetric_phase ? 1.0 : 0.0);
        out.values.push_back(spec->imag_spread);
    }
    return out;
}

// All rows for one point of the parameter grid.
inline std::vector<SweepRow> run_point(const ScenarioSpec& spec, const std::vector<double>& params,
                                       std::size_t n_columns) {
    SystemConfig config = spec.config;
    for (std::size_t a = 0; a < spec.axes.size(); ++a) apply_parameter(config, spec.axes[a].parameter, params[a]);
    const Operator h = build_hamiltonian(config);
    const StateVector psi0 = spec.initial_state.make(config.n_qubits);

    std::optional<SpectrumReport> spectrum_report;
    if (std::find(spec.observables.begin(), spec.observables.end(), Observable::spectrum) != spec.observables.end()) {
        const auto probe = spectrum(h, 1.0);
        spectrum_report = spectrum(h, 1e-6 * std::max(probe.spectral_radius, 1e-300));
    }
    const SpectrumReport* sr = spectrum_report ? &*spectrum_report : nullptr;

    std::vector<SweepRow> rows;
    rows.reserve(spec.times.size());
    auto extinct_row = [&](double t) {
        return SweepRow{params, t, std::vector<double>(n_columns, std::numeric_limits<double>::quiet_NaN()), true};
    };
    try {
        for (const auto& point : time_series(h, psi0, spec.times)) {
            auto v = observe(spec.observables, point.state, point.time, point.survival, sr);
            rows.push_back({params, point.time, std::move(v.values), false});
        }
    } catch (const PostSelectionExtinct&) {
        // Keep what resolves and flag the remainder.
        rows.clear();
        for (double t : spec.times) {
            try {
                const auto evolved = evolve(h, psi0, t);
                const auto normalized = normalize(evolved.state);
                auto v = observe(spec.observables, normalized.state, t, normalized.survival, sr);
                rows.push_back({params, t, std::move(v.values), false});
            } catch (const PostSelectionExtinct&) {
                rows.push_back(extinct_row(t));
            }
        }
    }
    return rows;
}

} // namespace detail

inline void validate_spec(const ScenarioSpec& spec) {
    spec.config.validate();
    if (spec.times.empty()) throw InvalidArgument("scenario needs at least one time point");
    if (spec.times.front() < 0.0) throw InvalidArgument("time grid must start at t >= 0");
    for (std::size_t i = 1; i < spec.times.size(); ++i) {
        if (!(spec.times[i] > spec.times[i - 1])) throw InvalidArgument("time grid must be strictly ascending");
    }
    for (const auto& axis : spec.axes) {
        if (axis.values.empty()) throw InvalidArgument("sweep axis " + to_string(axis.parameter) + " is empty");
        for (std::size_t i = 1; i < axis.values.size(); ++i) {
            if (!(axis.values[i] > axis.values[i - 1])) {
                throw InvalidArgument("sweep axis " + to_string(axis.parameter) + " must be strictly ascending");
            }
        }
        if (axis.parameter == Parameter::gamma && axis.values.front() < 0.0) {
            throw ValidationError("gamma ≥ 0", "sweep starts at " + std::to_string(axis.values.front()));
        }
    }
}

// Evaluates every (parameter tuple, time) point. Parameter points run
// concurrently; rows come back in lexicographic (parameters, time) order.
inline SweepResult run_scenario(const ScenarioSpec& spec) {
    validate_spec(spec);

    SweepResult result;
    for (const auto& axis : spec.axes) result.parameter_names.push_back(to_string(axis.parameter));
    result.observable_names = detail::observable_columns(spec.observables, spec.config.n_qubits);

    std::vector<std::vector<double>> points = {{}};
    for (const auto& axis : spec.axes) {
        std::vector<std::vector<double>> next;
        for (const auto& prefix : points) {
            for (double v : axis.values) {
                auto p = prefix;
                p.push_back(v);
                next.push_back(std::move(p));
            }
        }
        points = std::move(next);
    }

    const std::size_t n_columns = result.observable_names.size();
    std::vector<std::vector<SweepRow>> blocks(points.size());
    std::vector<std::exception_ptr> errors(points.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < points.size(); i = next++) {
            try {
                blocks[i] = detail::run_point(spec, points[i], n_columns);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t n_threads =
        std::min<std::size_t>(points.size(), std::max(1u, std::thread::hardware_concurrency()));
    {
        std::vector<std::jthread> pool;
        for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
        worker();
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (errors[i]) std::rethrow_exception(errors[i]);
        result.rows.insert(result.rows.end(), std::make_move_iterator(blocks[i].begin()),
                           std::make_move_iterator(blocks[i].end()));
    }

    std::size_t extinct = 0;
    for (const auto& r : result.rows) extinct += r.extinct ? 1 : 0;

    result.metadata = {{"scenario", spec.name},
                       {"artifact_version", kArtifactVersion},
                       {"n_qubits", std::to_string(spec.config.n_qubits)},
                       {"initial_state", spec.initial_state.to_string()},
                       {"time_points", std::to_string(spec.times.size())},
                       {"parameter_points", std::to_string(points.size())},
                       {"extinct_rows", std::to_string(extinct)},
                       {"units", "rates in units of J; time is Jt; entropy in nats"}};
    result.metadata.insert(result.metadata.end(), spec.notes.begin(), spec.notes.end());
    return result;
}

} // namespace nhq
