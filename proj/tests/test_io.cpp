#include "nhq/io.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <random>
#include <sstream>

using namespace nhq;

namespace {

SweepResult small_result() {
    SweepResult r;
    r.parameter_names = {"gamma"};
    r.observable_names = {"tau", "survival"};
    r.rows = {{{0.0}, 0.0, {0.0, 1.0}, false},
              {{0.0}, 0.5, {0.6931471805599, 0.999}, false},
              {{12.0}, 3.14159265358979, {std::nan(""), std::nan("")}, true}};
    r.metadata = {{"scenario", "custom"}, {"note", "a, \"quoted\" value"}};
    return r;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start < text.size()) {
        const auto end = text.find("\r\n", start);
        out.push_back(text.substr(start, end - start));
        if (end == std::string::npos) break;
        start = end + 2;
    }
    return out;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(field);
    return out;
}

} // namespace

TEST(FormatNumber, TwelveSignificantDigits) {
    EXPECT_EQ(format_number(0.6931471805599), "0.69314718056");
    EXPECT_EQ(format_number(1.0), "1");
    EXPECT_EQ(format_number(0.0), "0");
    EXPECT_EQ(format_number(1e-20), "1e-20");
    EXPECT_EQ(format_number(std::nan("")), "nan");
    EXPECT_EQ(format_number(-INFINITY), "-inf");
}

TEST(RunConfig, RoundTripsThroughJson) {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> u(0.0, 20.0);
    std::uniform_int_distribution<int> qubits(1, 6);
    std::uniform_int_distribution<int> steps(1, 5000);
    for (int trial = 0; trial < 100; ++trial) {
        RunConfigFile c;
        const int n = qubits(rng);
        c.system = SystemConfig::symmetric(n, 0.0, 0.0);
        for (int j = 0; j < n; ++j) {
            const auto uj = static_cast<std::size_t>(j);
            c.system.delta[uj] = u(rng) - 10.0;
            c.system.gamma[uj] = u(rng);
            c.system.omega[uj] = u(rng);
            for (int k = j + 1; k < n; ++k) {
                const auto uk = static_cast<std::size_t>(k);
                c.system.coupling[uj][uk] = c.system.coupling[uk][uj] = u(rng);
            }
        }
        c.initial_state = trial % 3 == 0   ? InitialState{InitialState::Kind::all_f}
                          : trial % 3 == 1 ? InitialState{InitialState::Kind::spin_coherent, u(rng)}
                                           : InitialState{InitialState::Kind::ghz};
        if (c.initial_state.kind == InitialState::Kind::ghz && n < 2) c.initial_state = {};
        c.time_grid.t_max = u(rng);
        c.time_grid.steps = static_cast<std::size_t>(steps(rng));
        c.observables = {Observable::survival, Observable::tau};
        c.output.path = trial % 2 ? "out.json" : "";
        c.output.format = trial % 2 ? TableFormat::json : TableFormat::csv;
        EXPECT_EQ(parse_run_config(serialize(c)), c) << serialize(c);
    }
}

TEST(RunConfig, ScalarsBroadcastAndDefaultsApply) {
    const auto c = parse_run_config(R"({"n_qubits": 3, "omega": 10, "gamma": 1})");
    EXPECT_EQ(c.system, SystemConfig::symmetric(3, 10.0, 1.0));
    EXPECT_EQ(c.initial_state.kind, InitialState::Kind::all_f);
    EXPECT_EQ(c.time_grid.steps, 1000u);
    EXPECT_EQ(c.observables, default_observables());
}

TEST(RunConfig, RejectsInvalidContent) {
    EXPECT_THROW(parse_run_config("{not json"), InvalidArgument);
    EXPECT_THROW(parse_run_config(R"({"omega": 1})"), InvalidArgument);
    EXPECT_THROW(parse_run_config(R"({"n_qubits": 3, "gamma": -1})"), ValidationError);
    EXPECT_THROW(parse_run_config(R"({"n_qubits": 3, "gamma": [1, 2]})"), ValidationError);
    EXPECT_THROW(parse_run_config(R"({"n_qubits": 13})"), InvalidArgument);
    EXPECT_THROW(parse_run_config(R"({"n_qubits": 3, "observables": ["purity"]})"), InvalidArgument);
}

TEST(RunConfig, MissingFileNamesThePath) {
    const std::string path = "/nonexistent/dir/run.json";
    try {
        load_run_config(path);
        FAIL() << "expected IoError";
    } catch (const IoError& e) {
        EXPECT_NE(std::string(e.what()).find(path), std::string::npos);
    }
}

TEST(Csv, HeaderOnlyForEmptyResult) {
    SweepResult r;
    r.observable_names = {"tau"};
    std::ostringstream out;
    write_csv(r, out);
    EXPECT_EQ(out.str(), "Jt,tau,extinct\r\n");
}

TEST(Csv, RowsUseCrlfAndTwelveDigits) {
    std::ostringstream out;
    write_csv(small_result(), out);
    const auto lines = split_lines(out.str());
    ASSERT_EQ(lines.size(), 4u);
    EXPECT_EQ(lines[0], "gamma,Jt,tau,survival,extinct");
    EXPECT_EQ(lines[2], "0,0.5,0.69314718056,0.999,0");
    EXPECT_EQ(lines[3], "12,3.14159265359,nan,nan,1");
}

TEST(Csv, QuotesFieldsThatNeedIt) {
    SweepResult r;
    r.observable_names = {"a,b", "q\"x"};
    std::ostringstream out;
    write_csv(r, out);
    EXPECT_EQ(out.str(), "Jt,\"a,b\",\"q\"\"x\",extinct\r\n");
}

TEST(Json, ThreeRowRoundTrip) {
    const auto r = small_result();
    const auto j = ordered_json::parse(to_json(r).dump());
    EXPECT_EQ(j.at("columns").get<std::vector<std::string>>(), r.column_names());
    ASSERT_EQ(j.at("rows").size(), 3u);
    EXPECT_EQ(j.at("metadata").at("note").get<std::string>(), "a, \"quoted\" value");
    for (std::size_t i = 0; i < 3; ++i) {
        const auto& row = j.at("rows")[i];
        EXPECT_EQ(row.at("extinct").get<bool>(), r.rows[i].extinct);
        EXPECT_EQ(row.at("Jt").get<double>(), rendered_value(r.rows[i].time));
        for (std::size_t k = 0; k < r.observable_names.size(); ++k) {
            const double v = r.rows[i].values[k];
            if (std::isnan(v)) {
                EXPECT_TRUE(row.at(r.observable_names[k]).is_null());
            } else {
                EXPECT_EQ(row.at(r.observable_names[k]).get<double>(), rendered_value(v));
            }
        }
    }
}

TEST(Tables, CsvAndJsonCarryIdenticalValues) {
    const auto r = small_result();
    std::ostringstream csv;
    write_csv(r, csv);
    const auto lines = split_lines(csv.str());
    const auto j = to_json(r);
    const auto cols = r.column_names();
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        const auto fields = split_fields(lines[i + 1]);
        for (std::size_t c = 0; c + 1 < cols.size(); ++c) {
            const auto& jv = j.at("rows")[i].at(cols[c]);
            if (jv.is_null()) {
                EXPECT_EQ(fields[c], "nan");
            } else {
                EXPECT_EQ(std::stod(fields[c]), jv.get<double>()) << cols[c];
            }
        }
    }
}

TEST(Tables, WriteToPathAndReportBadPath) {
    const auto path = (std::filesystem::temp_directory_path() / "nhq_io_test.csv").string();
    write_table(small_result(), TableFormat::csv, path);
    EXPECT_TRUE(std::filesystem::exists(path));
    std::filesystem::remove(path);

    const std::string bad = "/nonexistent/dir/out.csv";
    try {
        write_table(small_result(), TableFormat::csv, bad);
        FAIL() << "expected IoError";
    } catch (const IoError& e) {
        EXPECT_NE(std::string(e.what()).find(bad), std::string::npos);
    }
}

TEST(Spectrum, JsonAndCsvOutput) {
    SpectrumReport s;
    s.eigenvalues = {{-1.0, -0.5}, {1.0, -0.5}};
    s.is_pt_symmetric_phase = true;
    s.spectral_radius = std::abs(Complex(1.0, -0.5));
    const auto j = to_json(s);
    EXPECT_EQ(j.at("eigenvalues")[1].at("re").get<double>(), 1.0);
    EXPECT_TRUE(j.at("is_pt_symmetric_phase").get<bool>());
    std::ostringstream out;
    write_spectrum(s, TableFormat::csv, out);
    EXPECT_EQ(out.str(), "re,im\r\n-1,-0.5\r\n1,-0.5\r\n");
}

TEST(Formats, Parse) {
    EXPECT_EQ(parse_format("csv"), TableFormat::csv);
    EXPECT_EQ(parse_format("json"), TableFormat::json);
    EXPECT_THROW(parse_format("xml"), InvalidArgument);
}
