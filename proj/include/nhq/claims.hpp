#pragma once

// Machine-checkable versions of the published numerical claims plus the
// invariant suites that back the figure curves carrying no printed numbers.

#include "nhq/entanglement.hpp"
#include "nhq/evolution.hpp"
#include "nhq/qubit_model.hpp"
#include "nhq/scenarios.hpp"
#include "nhq/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

namespace nhq {

struct ClaimResult {
    std::string id;
    std::string description;
    bool passed = false;
    double measured = 0.0;
    std::string bound; // e.g. ">= 0.9999"
};

namespace claims {

inline constexpr double pi = std::numbers::pi;

// Normalized state at time t for a symmetric configuration.
inline NormalizedState state_at(int n, double omega, double gamma, double t, const StateVector& psi0) {
    const Operator h = build_hamiltonian(SystemConfig::symmetric(n, omega, gamma));
    return normalize(evolve(h, psi0, t).state);
}

inline std::string fmt_bound(const char* op, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s %.12g", op, v);
    return buf;
}

inline ClaimResult at_least(std::string id, std::string description, double measured, double threshold) {
    return {std::move(id), std::move(description), measured >= threshold, measured, fmt_bound(">=", threshold)};
}

inline ClaimResult below(std::string id, std::string description, double measured, double threshold) {
    return {std::move(id), std::move(description), measured < threshold, measured, fmt_bound("<", threshold)};
}

inline ClaimResult at_most(std::string id, std::string description, double measured, double threshold) {
    return {std::move(id), std::move(description), measured <= threshold, measured, fmt_bound("<=", threshold)};
}

// The default 1001-point grid over Jt in [0, 4 pi]; index i + 500 is Jt + 2 pi.
inline const std::vector<double>& period_grid() {
    static const std::vector<double> grid = uniform_grid(4.0 * pi, 1001);
    return grid;
}

// max_t |f(t) - f(t + 2 pi)| over the first half of the period grid.
template <class F>
double period_mismatch(const std::vector<TimePoint>& series, F&& observable) {
    double worst = 0.0;
    const std::size_t half = (series.size() - 1) / 2;
    for (std::size_t i = 0; i + half < series.size(); ++i) {
        worst = std::max(worst, std::abs(observable(series[i].state) - observable(series[i + half].state)));
    }
    return worst;
}

struct ParamSet {
    int n;
    double omega;
    double gamma;
    StateVector psi0;
};

// Every (Omega, gamma) curve of the three figures.
inline std::vector<ParamSet> figure_parameter_sets() {
    std::vector<ParamSet> sets;
    for (double g : {0.0, 1.0, 6.0})
        for (double o : {10.0, 50.0, 100.0}) sets.push_back({3, o, g, all_f_state(3)});
    for (double g : {0.0, 0.1, 0.25})
        for (double o : {0.0, 0.01, 0.1, 0.5}) sets.push_back({3, o, g, spin_coherent_state(kSpinCoherentPhase, 3)});
    for (double g : {0.0, 6.0})
        for (double o : {10.0, 50.0, 100.0}) sets.push_back({4, o, g, all_f_state(4)});
    return sets;
}

} // namespace claims

// Evaluates every acceptance criterion. Failures are reported as data.
inline std::vector<ClaimResult> check_claims() {
    using namespace claims;
    std::vector<ClaimResult> out;
    const StateVector fff = all_f_state(3);
    const StateVector ffff = all_f_state(4);
    const StateVector ghz3 = ghz_state(3);
    const StateVector ghz4 = ghz_state(4);

    // 1, 2: strong driving at Jt = pi.
    {
        const auto s0 = state_at(3, 100.0, 0.0, pi, fff);
        out.push_back(at_least("3q-tau-gamma0", "3 qubits, Omega=100J, gamma=0, Jt=pi: three-tangle",
                               three_tangle(s0.state), 0.999));
        out.push_back(at_least("3q-F-gamma0", "3 qubits, Omega=100J, gamma=0, Jt=pi: GHZ fidelity up to local phases",
                               optimize_local_phases(s0.state, ghz3).best_fidelity, 0.9999));
        const auto s6 = state_at(3, 100.0, 6.0, pi, fff);
        out.push_back(at_least("3q-F-gamma6", "3 qubits, Omega=100J, gamma=6J, Jt=pi: GHZ fidelity up to local phases",
                               optimize_local_phases(s6.state, ghz3).best_fidelity, 0.999));
    }

    // 3: tau(Jt) = tau(Jt + 2 pi) in the strong-driving regime.
    for (double omega : {10.0, 50.0, 100.0}) {
        const auto series = time_series(build_hamiltonian(SystemConfig::symmetric(3, omega, 0.0)), fff, period_grid());
        char id[48];
        std::snprintf(id, sizeof id, "tau-period-Omega%g", omega);
        out.push_back(below(id, "gamma=0: max |tau(Jt) - tau(Jt + 2pi)| on the 1001-point grid",
                            period_mismatch(series, [](const StateVector& s) { return three_tangle(s); }), 1e-6));
    }

    // 4: plateau of tau over gamma in [0, 6J] at Omega = 100J, Jt = pi.
    {
        double worst = 1.0;
        for (double g : linspace(0.0, 6.0, 121)) worst = std::min(worst, three_tangle(state_at(3, 100.0, g, pi, fff).state));
        out.push_back(at_least("tau-plateau", "Omega=100J, Jt=pi: min tau over gamma in [0, 6J] (121 points)", worst, 0.99));
    }

    // 5: revival of tau(gamma) at Omega = 10J, Jt = pi.
    {
        const auto gammas = linspace(0.0, 12.0, 121);
        std::vector<double> tau;
        for (double g : gammas) tau.push_back(three_tangle(state_at(3, 10.0, g, pi, fff).state));
        double location = std::numeric_limits<double>::quiet_NaN();
        bool found = false;
        for (std::size_t i = 1; i + 1 < tau.size(); ++i) {
            if (tau[i] > tau[i - 1] && tau[i] > tau[i + 1]) {
                const bool inside = gammas[i] >= 7.0 && gammas[i] <= 11.0;
                if (!found || inside) location = gammas[i];
                found = found || inside;
            }
        }
        out.push_back({"fig2d-revival", "Omega=10J, Jt=pi: interior local maximum of tau(gamma), gamma in [0, 12J]",
                       found, location, "in [7, 11]"});
    }

    // 6: strong coupling maxima at Jt = pi/2 and 3 pi/2.
    {
        const auto& grid = period_grid();
        const auto series = time_series(build_hamiltonian(SystemConfig::symmetric(3, 0.0, 0.0)),
                                        spin_coherent_state(kSpinCoherentPhase, 3), grid);
        const double step = grid[1] - grid[0];
        auto argmax_in = [&](double lo, double hi) {
            double best = -1.0, at = 0.0;
            for (const auto& p : series) {
                if (p.time < lo - 1e-12 || p.time > hi + 1e-12) continue;
                const double t = three_tangle(p.state);
                if (t > best) {
                    best = t;
                    at = p.time;
                }
            }
            return at;
        };
        const double miss =
            std::max(std::abs(argmax_in(0.0, pi) - pi / 2.0), std::abs(argmax_in(pi, 2.0 * pi) - 3.0 * pi / 2.0));
        out.push_back(at_most("fig3-maxima",
                              "Omega=0, gamma=0, spin coherent: distance of tau argmax on [0,pi] and [pi,2pi] "
                              "from pi/2 and 3pi/2",
                              miss, step));
    }

    // 7: passive-PT classification in the strong coupling regime.
    {
        const auto report = spectrum(build_hamiltonian(SystemConfig::symmetric(3, 0.1, 0.1)), 1.0);
        out.push_back(at_most("pt-phase",
                              "J=1, Omega=0.1J, gamma=0.1J: max residual |Im| after mean-shift removal / spectral radius",
                              report.max_imag_residual / report.spectral_radius, 1e-6));
    }

    // 8: four-qubit entropy plateau and period.
    {
        const auto s = state_at(4, 100.0, 0.0, pi, ffff);
        double worst = 0.0;
        for (int j = 1; j <= 4; ++j) {
            const int keep[] = {j};
            worst = std::max(worst,
                             std::abs(von_neumann_entropy(reduced_density_matrix(s.state, keep)) - std::log(2.0)) /
                                 std::log(2.0));
        }
        out.push_back(at_most("4q-entropy", "4 qubits, Omega=100J, gamma=0, Jt=pi: max_j |S_j - ln2| / ln2", worst, 0.01));

        const auto series = time_series(build_hamiltonian(SystemConfig::symmetric(4, 100.0, 0.0)), ffff, period_grid());
        const double mismatch = period_mismatch(series, [](const StateVector& st) {
            double m = 0.0;
            for (int j = 1; j <= 4; ++j) {
                const int keep[] = {j};
                m = std::max(m, von_neumann_entropy(reduced_density_matrix(st, keep)));
            }
            return m;
        });
        out.push_back(below("4q-entropy-period", "4 qubits, Omega=100J, gamma=0: max |S(Jt) - S(Jt + 2pi)|", mismatch, 1e-6));
    }

    // 9: Z(3 pi/4) on qubit 1 at Jt = pi.
    for (auto [gamma, threshold, id] : {std::tuple{0.0, 0.998, "4q-F-gamma0"}, std::tuple{6.0, 0.99, "4q-F-gamma6"}}) {
        const auto s = state_at(4, 100.0, gamma, pi, ffff);
        out.push_back(at_least(id, "4 qubits, Omega=100J, Jt=pi: GHZ fidelity after Z(3pi/4) on qubit 1",
                               fidelity(apply_local_phase(s.state, 1, 3.0 * pi / 4.0), ghz4), threshold));
    }

    const auto sets = figure_parameter_sets();
    const auto& grid = period_grid();

    // 10a, 10b: norm non-increase and the unitary limit, evaluated by direct propagation.
    {
        double worst_increase = 0.0, worst_unitary = 0.0;
        for (const auto& set : sets) {
            const Operator h = build_hamiltonian(SystemConfig::symmetric(set.n, set.omega, set.gamma));
            const Operator step = propagator(h, grid[1] - grid[0]);
            StateVector psi = set.psi0;
            double previous = 1.0;
            for (std::size_t i = 1; i < grid.size(); ++i) {
                psi = step.apply(psi);
                const double survival = psi.squared_norm();
                worst_increase = std::max(worst_increase, survival - previous);
                if (set.gamma == 0.0) worst_unitary = std::max(worst_unitary, std::abs(survival - 1.0));
                previous = survival;
            }
            if (set.gamma == 0.0) {
                const Matrix u = propagator(h, 2.0 * pi).entries();
                const Matrix defect = u.adjoint() * u - Matrix::Identity(u.rows(), u.cols());
                worst_unitary = std::max(worst_unitary, defect.cwiseAbs().maxCoeff());
            }
        }
        out.push_back(at_most("prop-norm", "max survival increase between grid points, all figure curves",
                              worst_increase, 1e-9));
        out.push_back(at_most("prop-unitary", "gamma=0: max |survival - 1| and max |U^dag U - I|", worst_unitary, 1e-9));
    }

    // 10c: evolve vs the 10^4-substep Taylor oracle on the 3-qubit figure sets.
    {
        double worst = 0.0;
        for (const auto& set : sets) {
            if (set.n != 3) continue;
            const Operator h = build_hamiltonian(SystemConfig::symmetric(set.n, set.omega, set.gamma));
            for (double t : {pi / 2.0, pi, 2.0 * pi}) {
                const auto direct = evolve(h, set.psi0, t).state.amplitudes();
                const auto oracle = validation::substep_evolve(h, set.psi0, t).amplitudes();
                worst = std::max(worst, (direct - oracle).cwiseAbs().maxCoeff());
            }
        }
        out.push_back(at_most("prop-oracle", "max |amplitude difference| evolve vs 10^4-substep oracle", worst, 1e-8));
    }

    // 10d: local-unitary invariance of tau.
    {
        std::mt19937_64 rng(20240601);
        double worst = 0.0;
        for (int trial = 0; trial < 1000; ++trial) {
            StateVector psi = validation::random_state(3, rng);
            const double before = three_tangle(psi);
            for (int j = 1; j <= 3; ++j) psi = apply_single_qubit_op(psi, validation::random_unitary(rng), j);
            psi = normalize(psi).state;
            worst = std::max(worst, std::abs(three_tangle(psi) - before));
        }
        out.push_back(at_most("prop-lu-invariance", "max |tau(psi) - tau(U1 U2 U3 psi)| over 1000 random draws", worst, 1e-9));
    }

    // 10e: closed-form tangle values.
    {
        double worst = std::max(std::abs(three_tangle(ghz3) - 1.0), std::abs(three_tangle(validation::w_state())));
        for (double theta : linspace(0.0, pi / 2.0, 13)) {
            Vector v = Vector::Zero(8);
            v(0) = std::cos(theta);
            v(7) = std::sin(theta);
            const double expected = std::pow(std::sin(2.0 * theta), 2);
            worst = std::max(worst, std::abs(three_tangle(StateVector(3, v)) - expected));
        }
        out.push_back(at_most("prop-tau-values", "max error of tau(GHZ)=1, tau(W)=0, tau(cos|eee>+sin|fff>)=sin^2 2theta",
                              worst, 1e-10));
    }

    // 10f: GHZ two-qubit marginals are unentangled.
    {
        double worst = 0.0;
        const DensityMatrix rho = density_matrix(ghz3);
        for (auto pair : {std::array{1, 2}, std::array{1, 3}, std::array{2, 3}}) {
            worst = std::max(worst, pairwise_concurrence(partial_trace(rho, pair)));
        }
        out.push_back(at_most("prop-ghz-concurrence", "max concurrence of GHZ(3) two-qubit marginals", worst, 1e-9));
    }

    // 10g: symmetric configurations give identical single-qubit entropies.
    {
        double worst = 0.0;
        for (const auto& set : sets) {
            const Operator h = build_hamiltonian(SystemConfig::symmetric(set.n, set.omega, set.gamma));
            for (double t : {0.5, pi / 2.0, pi, 2.5}) {
                const auto s = normalize(evolve(h, set.psi0, t).state);
                const auto r = report(s.state, t, s.survival);
                const auto [lo, hi] = std::minmax_element(r.entropies.begin(), r.entropies.end());
                worst = std::max(worst, *hi - *lo);
            }
        }
        out.push_back(at_most("prop-permutation", "max spread S_max - S_min across qubits, symmetric configs", worst, 1e-9));
    }

    return out;
}

// Values recorded alongside the claims for context; not pass/fail criteria.
struct Supplement {
    std::string id;
    std::string description;
    double value;
};

inline std::vector<Supplement> claim_supplements() {
    using namespace claims;
    std::vector<Supplement> out;
    const StateVector ghz3 = ghz_state(3);
    const StateVector ghz4 = ghz_state(4);
    for (double gamma : {0.0, 6.0}) {
        const auto s = state_at(3, 100.0, gamma, pi, all_f_state(3));
        char id[48];
        std::snprintf(id, sizeof id, "3q-F-raw-gamma%g", gamma);
        out.push_back({id, "3 qubits, Omega=100J, Jt=pi: bare GHZ fidelity", fidelity(s.state, ghz3)});
        // The strong-drive state is a GHZ state in the sigma_y eigenbasis; map |+i> -> |e>, |-i> -> |f>.
        Matrix2 to_y;
        to_y << 1.0, -kI, 1.0, kI;
        to_y /= std::numbers::sqrt2;
        StateVector rotated = s.state;
        for (int j = 1; j <= 3; ++j) rotated = apply_single_qubit_op(rotated, to_y, j);
        std::snprintf(id, sizeof id, "3q-F-ybasis-gamma%g", gamma);
        out.push_back({id, "same, after rotating every qubit from the sigma_y basis then best local phases",
                       optimize_local_phases(rotated, ghz3).best_fidelity});
    }
    for (double gamma : {0.0, 6.0}) {
        const auto s = state_at(4, 100.0, gamma, pi, all_f_state(4));
        const auto fit = optimize_local_phases(s.state, ghz4);
        char id[48];
        std::snprintf(id, sizeof id, "4q-F-best-phase-gamma%g", gamma);
        double total = 0.0;
        for (double p : fit.phases) total += p;
        out.push_back({id, "4 qubits, Omega=100J, Jt=pi: GHZ fidelity with optimized Z phases", fit.best_fidelity});
        std::snprintf(id, sizeof id, "4q-best-total-phase-gamma%g", gamma);
        out.push_back({id, "sum of optimized Z phases (radians, mod 2pi)", std::fmod(total, 2.0 * pi)});
    }
    return out;
}

} // namespace nhq
