#pragma once

// Run configuration files (JSON) and table output (CSV / JSON).

#include "nhq/evolution.hpp"
#include "nhq/qubit_model.hpp"
#include "nhq/scenarios.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace nhq {

using nlohmann::ordered_json;

enum class TableFormat { csv, json };

inline TableFormat parse_format(std::string_view text) {
    if (text == "csv") return TableFormat::csv;
    if (text == "json") return TableFormat::json;
    throw InvalidArgument("unknown output format '" + std::string(text) + "' (expected csv or json)");
}

inline std::string to_string(TableFormat f) { return f == TableFormat::csv ? "csv" : "json"; }

struct TimeGrid {
    double t_max = 4.0 * std::numbers::pi; // Jt
    std::size_t steps = 1000;              // intervals; steps + 1 points

    std::vector<double> points() const { return uniform_grid(t_max, steps + 1); }
    bool operator==(const TimeGrid&) const = default;
};

struct OutputSpec {
    std::string path; // empty: stdout
    TableFormat format = TableFormat::csv;
    bool operator==(const OutputSpec&) const = default;
};

struct RunConfigFile {
    SystemConfig system;
    InitialState initial_state;
    TimeGrid time_grid;
    std::vector<Observable> observables = default_observables();
    OutputSpec output;
    bool operator==(const RunConfigFile&) const = default;
};

inline ordered_json to_json(const RunConfigFile& c) {
    ordered_json observables = ordered_json::array();
    for (auto o : c.observables) observables.push_back(to_string(o));
    return ordered_json{
        {"n_qubits", c.system.n_qubits},
        {"delta", c.system.delta},
        {"gamma", c.system.gamma},
        {"omega", c.system.omega},
        {"coupling", c.system.coupling},
        {"initial_state", c.initial_state.to_string()},
        {"time_grid", {{"tmax", c.time_grid.t_max}, {"steps", c.time_grid.steps}}},
        {"observables", observables},
        {"output", {{"path", c.output.path}, {"format", to_string(c.output.format)}}},
    };
}

// Missing keys fall back to defaults; scalar "delta"/"gamma"/"omega"/"coupling"
// are broadcast to every qubit (pair). The result is validated.
inline RunConfigFile run_config_from_json(const ordered_json& j) {
    try {
        RunConfigFile c;
        c.system.n_qubits = j.at("n_qubits").get<int>();
        require_qubit_count(c.system.n_qubits);
        const auto n = static_cast<std::size_t>(c.system.n_qubits);
        auto per_qubit = [&](const char* key, double fallback) {
            if (!j.contains(key)) return std::vector<double>(n, fallback);
            const auto& v = j.at(key);
            if (v.is_number()) return std::vector<double>(n, v.get<double>());
            return v.get<std::vector<double>>();
        };
        c.system.delta = per_qubit("delta", 0.0);
        c.system.gamma = per_qubit("gamma", 0.0);
        c.system.omega = per_qubit("omega", 0.0);
        if (!j.contains("coupling") || j.at("coupling").is_number()) {
            const double jv = j.contains("coupling") ? j.at("coupling").get<double>() : 1.0;
            apply_parameter(c.system, Parameter::coupling, jv);
        } else {
            c.system.coupling = j.at("coupling").get<std::vector<std::vector<double>>>();
        }
        if (j.contains("initial_state")) c.initial_state = InitialState::parse(j.at("initial_state").get<std::string>());
        if (j.contains("time_grid")) {
            const auto& g = j.at("time_grid");
            if (g.contains("tmax")) c.time_grid.t_max = g.at("tmax").get<double>();
            if (g.contains("steps")) c.time_grid.steps = g.at("steps").get<std::size_t>();
        }
        if (j.contains("observables")) {
            c.observables.clear();
            for (const auto& o : j.at("observables")) c.observables.push_back(parse_observable(o.get<std::string>()));
        }
        if (j.contains("output")) {
            const auto& o = j.at("output");
            if (o.contains("path")) c.output.path = o.at("path").get<std::string>();
            if (o.contains("format")) c.output.format = parse_format(o.at("format").get<std::string>());
        }
        c.system.validate();
        if (!(c.time_grid.t_max >= 0.0) || !std::isfinite(c.time_grid.t_max)) {
            throw ValidationError("tmax ≥ 0", "tmax = " + std::to_string(c.time_grid.t_max));
        }
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("malformed run configuration: ") + e.what());
    }
}

inline std::string serialize(const RunConfigFile& c) { return to_json(c).dump(2); }

inline RunConfigFile parse_run_config(std::string_view text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidArgument(std::string("run configuration is not valid JSON: ") + e.what());
    }
    return run_config_from_json(j);
}

inline RunConfigFile load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path, "cannot open configuration file");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_run_config(buffer.str());
}

// 12 significant digits, shortest form ("%.12g").
inline std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// The number a table cell holds once rendered; JSON output uses the same rounding as CSV.
inline double rendered_value(double v) { return std::isfinite(v) ? std::stod(format_number(v)) : v; }

namespace detail {

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline std::vector<double> row_cells(const SweepRow& row) {
    std::vector<double> cells = row.parameters;
    cells.push_back(row.time);
    cells.insert(cells.end(), row.values.begin(), row.values.end());
    cells.push_back(row.extinct ? 1.0 : 0.0);
    return cells;
}

inline ordered_json json_number(double v) { return std::isfinite(v) ? ordered_json(rendered_value(v)) : ordered_json(nullptr); }

} // namespace detail

inline void write_csv(const SweepResult& result, std::ostream& out) {
    const auto columns = result.column_names();
    for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << detail::csv_field(columns[c]);
    out << "\r\n";
    for (const auto& row : result.rows) {
        const auto cells = detail::row_cells(row);
        for (std::size_t c = 0; c < cells.size(); ++c) {
            out << (c ? "," : "") << (c + 1 == cells.size() ? (row.extinct ? "1" : "0") : format_number(cells[c]));
        }
        out << "\r\n";
    }
}

inline ordered_json to_json(const SweepResult& result) {
    ordered_json meta = ordered_json::object();
    for (const auto& [k, v] : result.metadata) meta[k] = v;
    ordered_json rows = ordered_json::array();
    const auto columns = result.column_names();
    for (const auto& row : result.rows) {
        const auto cells = detail::row_cells(row);
        ordered_json record = ordered_json::object();
        for (std::size_t c = 0; c + 1 < cells.size(); ++c) record[columns[c]] = detail::json_number(cells[c]);
        record["extinct"] = row.extinct;
        rows.push_back(std::move(record));
    }
    return ordered_json{{"metadata", meta}, {"columns", columns}, {"rows", rows}};
}

inline void write_json(const SweepResult& result, std::ostream& out) { out << to_json(result).dump(2) << '\n'; }

inline void write_table(const SweepResult& result, TableFormat format, std::ostream& out) {
    if (format == TableFormat::csv) {
        write_csv(result, out);
    } else {
        write_json(result, out);
    }
}

// Writes to `path`; throws IoError naming the path on failure.
inline void write_table(const SweepResult& result, TableFormat format, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path, "cannot open for writing");
    write_table(result, format, out);
    out.flush();
    if (!out) throw IoError(path, "write failed");
}

inline ordered_json to_json(const SpectrumReport& report) {
    ordered_json values = ordered_json::array();
    for (const Complex& z : report.eigenvalues) values.push_back({{"re", z.real()}, {"im", z.imag()}});
    return ordered_json{{"eigenvalues", values},
                        {"is_pt_symmetric_phase", report.is_pt_symmetric_phase},
                        {"imag_spread", report.imag_spread},
                        {"max_imag_residual", report.max_imag_residual},
                        {"spectral_radius", report.spectral_radius}};
}

inline void write_spectrum(const SpectrumReport& report, TableFormat format, std::ostream& out) {
    if (format == TableFormat::json) {
        out << to_json(report).dump(2) << '\n';
        return;
    }
    out << "re,im\r\n";
    for (const Complex& z : report.eigenvalues) out << format_number(z.real()) << ',' << format_number(z.imag()) << "\r\n";
}

} // namespace nhq
