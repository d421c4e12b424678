#pragma once

// Entanglement diagnostics: reduced states, von Neumann entropy, three-tangle,
// fidelity, two-qubit concurrence and diagonal local-phase corrections.

#include "nhq/evolution.hpp"
#include "nhq/qubit_model.hpp"
#include "nhq/types.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

namespace nhq {

// Eigenvalues at or below this are treated as zero in entropies and concurrences.
inline constexpr double kEigenvalueFloor = 1e-12;

namespace detail {

// Positions (0-based, in `labels`) of the kept qubits; rejects empty, duplicate or unknown labels.
inline std::vector<int> kept_positions(std::span<const int> labels, std::span<const int> keep) {
    if (keep.empty()) throw InvalidArgument("partial trace: keep set is empty");
    std::vector<int> positions;
    for (std::size_t p = 0; p < labels.size(); ++p) {
        const int label = labels[p];
        const auto hits = std::count(keep.begin(), keep.end(), label);
        if (hits > 1) throw InvalidArgument("partial trace: duplicate qubit " + std::to_string(label));
        if (hits == 1) positions.push_back(static_cast<int>(p));
    }
    if (positions.size() != keep.size()) throw InvalidArgument("partial trace: keep set is not a subset of labels");
    return positions;
}

// Splits basis index `i` of an m-qubit register into (kept, traced) local indices.
inline std::pair<std::size_t, std::size_t> split_index(std::size_t i, int m, std::span<const int> kept_pos) {
    std::size_t kept = 0;
    std::size_t traced = 0;
    std::size_t next_kept = 0;
    for (int p = 0; p < m; ++p) {
        const std::size_t bit = (i >> (m - 1 - p)) & 1u;
        if (next_kept < kept_pos.size() && kept_pos[next_kept] == p) {
            kept = (kept << 1) | bit;
            ++next_kept;
        } else {
            traced = (traced << 1) | bit;
        }
    }
    return {kept, traced};
}

inline Eigen::VectorXd hermitian_eigenvalues(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericalFailure("Hermitian eigen-solver did not converge");
    return solver.eigenvalues();
}

} // namespace detail

// Traces out every qubit of `rho` not listed in `keep`. Retained qubits keep their original order.
inline DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
    const int m = rho.n_qubits();
    if (rho.entries.rows() != static_cast<Eigen::Index>(dimension_of(m)) || rho.entries.cols() != rho.entries.rows()) {
        throw InvalidArgument("density matrix size does not match its qubit labels");
    }
    const auto kept_pos = detail::kept_positions(rho.qubit_labels, keep);
    const auto k = static_cast<int>(kept_pos.size());
    const std::size_t d = dimension_of(m);

    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dimension_of(k)), static_cast<Eigen::Index>(dimension_of(k)));
    std::vector<std::pair<std::size_t, std::size_t>> parts(d);
    for (std::size_t i = 0; i < d; ++i) parts[i] = detail::split_index(i, m, kept_pos);
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            if (parts[r].second != parts[c].second) continue;
            out(static_cast<Eigen::Index>(parts[r].first), static_cast<Eigen::Index>(parts[c].first)) +=
                rho.entries(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        }
    }

    std::vector<int> labels;
    for (int p : kept_pos) labels.push_back(rho.qubit_labels[static_cast<std::size_t>(p)]);
    return {std::move(out), std::move(labels)};
}

// Reduced state of a pure state on `keep` without forming the full density matrix.
inline DensityMatrix reduced_density_matrix(const StateVector& psi, std::span<const int> keep) {
    const int n = psi.n_qubits();
    const auto all = DensityMatrix::all_labels(n);
    const auto kept_pos = detail::kept_positions(all, keep);
    const auto k = static_cast<int>(kept_pos.size());

    Matrix schmidt = Matrix::Zero(static_cast<Eigen::Index>(dimension_of(k)),
                                  static_cast<Eigen::Index>(dimension_of(n - k)));
    for (std::size_t i = 0; i < psi.dim(); ++i) {
        const auto [kept, traced] = detail::split_index(i, n, kept_pos);
        schmidt(static_cast<Eigen::Index>(kept), static_cast<Eigen::Index>(traced)) = psi[i];
    }
    std::vector<int> labels;
    for (int p : kept_pos) labels.push_back(p + 1);
    return {schmidt * schmidt.adjoint(), std::move(labels)};
}

// -Tr[rho ln rho] in nats.
inline double von_neumann_entropy(const DensityMatrix& rho) {
    const Eigen::VectorXd lambda = detail::hermitian_eigenvalues(rho.entries);
    double s = 0.0;
    for (double l : lambda) {
        if (l > kEigenvalueFloor) s -= l * std::log(l);
    }
    return std::clamp(s, 0.0, std::log(static_cast<double>(rho.entries.rows())));
}

// Coffman-Kundu-Wootters residual tangle of a pure three-qubit state,
// tau = 4 |d1 - 2 d2 + 4 d3|.
inline double three_tangle(const StateVector& psi) {
    if (psi.n_qubits() != 3) {
        throw InvalidArgument("three-tangle needs 3 qubits, got " + std::to_string(psi.n_qubits()));
    }
    require_normalized(psi, "three-tangle input");
    const Complex eee = psi.amplitude("eee"), eef = psi.amplitude("eef"), efe = psi.amplitude("efe"),
                  eff = psi.amplitude("eff"), fee = psi.amplitude("fee"), fef = psi.amplitude("fef"),
                  ffe = psi.amplitude("ffe"), fff = psi.amplitude("fff");

    auto sq = [](Complex z) { return z * z; };
    const Complex d1 = sq(eee * fff) + sq(eef * ffe) + sq(efe * fef) + sq(fee * eff);
    const Complex d2 = eee * fff * (eff * fee + fef * efe + ffe * eef) + eff * fee * fef * efe +
                       eff * fee * ffe * eef + fef * efe * ffe * eef;
    const Complex d3 = eee * ffe * fef * eff + fff * eef * efe * fee;
    return std::clamp(4.0 * std::abs(d1 - 2.0 * d2 + 4.0 * d3), 0.0, 1.0 + 1e-9);
}

// |<psi|target>|^2.
inline double fidelity(const StateVector& psi, const StateVector& target) {
    if (psi.dim() != target.dim()) throw InvalidArgument("fidelity: dimension mismatch");
    require_normalized(psi, "fidelity argument");
    require_normalized(target, "fidelity target");
    return std::clamp(std::norm(psi.amplitudes().dot(target.amplitudes())), 0.0, 1.0 + 1e-9);
}

// Applies a 2x2 operator to qubit j (1-based) of psi.
inline StateVector apply_single_qubit_op(const StateVector& psi, const Matrix2& op, int j) {
    const int n = psi.n_qubits();
    if (j < 1 || j > n) throw InvalidArgument("qubit index " + std::to_string(j) + " out of range");
    const std::size_t mask = std::size_t{1} << qubit_shift(j, n);
    Vector out(psi.amplitudes().size());
    for (std::size_t i = 0; i < psi.dim(); ++i) {
        if (i & mask) continue;
        const Complex e = psi[i];
        const Complex f = psi[i | mask];
        out(static_cast<Eigen::Index>(i)) = op(0, 0) * e + op(0, 1) * f;
        out(static_cast<Eigen::Index>(i | mask)) = op(1, 0) * e + op(1, 1) * f;
    }
    return {n, std::move(out)};
}

// Z(phi) = diag(e^{i phi}, 1) on qubit j.
inline Matrix2 phase_gate(double phi) { return Matrix2(Eigen::Vector2cd(std::polar(1.0, phi), 1.0).asDiagonal()); }

inline StateVector apply_local_phase(const StateVector& psi, int j, double phi) {
    return apply_single_qubit_op(psi, phase_gate(phi), j);
}

struct LocalPhaseFit {
    std::vector<double> phases; // per qubit, radians in [0, 2 pi)
    double best_fidelity = 0.0;
};

// Maximizes F((x)_j Z(phi_j) psi, target): coarse grid over [0, 2 pi)^n, then
// exact coordinate ascent (each single-phase subproblem |A e^{i phi} + B|^2 has
// the closed-form optimum phi = arg B - arg A) until no phase moves by more
// than 1e-4.
inline LocalPhaseFit optimize_local_phases(const StateVector& psi, const StateVector& target, int grid_points = 8) {
    if (psi.dim() != target.dim()) throw InvalidArgument("local phase fit: dimension mismatch");
    if (grid_points < 8) throw InvalidArgument("local phase fit: grid_points must be >= 8");
    const int n = psi.n_qubits();
    const std::size_t d = psi.dim();
    constexpr double two_pi = 2.0 * std::numbers::pi;

    // overlap terms conj(target_i) psi_i; the phase on term i is sum_j phi_j [qubit j of i is e]
    std::vector<Complex> terms(d);
    for (std::size_t i = 0; i < d; ++i) terms[i] = std::conj(target[i]) * psi[i];

    auto overlap = [&](const std::vector<double>& phases) {
        Complex sum = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            double angle = 0.0;
            for (int j = 1; j <= n; ++j)
                if (qubit_is_e(i, j, n)) angle += phases[static_cast<std::size_t>(j - 1)];
            sum += terms[i] * std::polar(1.0, angle);
        }
        return std::norm(sum);
    };

    std::vector<double> best(static_cast<std::size_t>(n), 0.0);
    double best_value = overlap(best);

    // Full grid only while it stays cheap; coordinate ascent covers larger registers.
    const double grid_cost = std::pow(static_cast<double>(grid_points), n) * static_cast<double>(d);
    if (grid_cost <= 5e7) {
        std::vector<int> counter(static_cast<std::size_t>(n), 0);
        std::vector<double> phases(static_cast<std::size_t>(n), 0.0);
        while (true) {
            for (std::size_t j = 0; j < counter.size(); ++j) phases[j] = two_pi * counter[j] / grid_points;
            const double value = overlap(phases);
            if (value > best_value) {
                best_value = value;
                best = phases;
            }
            std::size_t j = 0;
            while (j < counter.size() && ++counter[j] == grid_points) counter[j++] = 0;
            if (j == counter.size()) break;
        }
    }

    for (int sweep = 0; sweep < 200; ++sweep) {
        double largest_move = 0.0;
        for (int q = 1; q <= n; ++q) {
            const auto uq = static_cast<std::size_t>(q - 1);
            Complex with_e = 0.0, without_e = 0.0;
            for (std::size_t i = 0; i < d; ++i) {
                double angle = 0.0;
                for (int j = 1; j <= n; ++j)
                    if (j != q && qubit_is_e(i, j, n)) angle += best[static_cast<std::size_t>(j - 1)];
                const Complex t = terms[i] * std::polar(1.0, angle);
                (qubit_is_e(i, q, n) ? with_e : without_e) += t;
            }
            if (std::abs(with_e) == 0.0 || std::abs(without_e) == 0.0) continue;
            const double optimum = std::remainder(std::arg(without_e) - std::arg(with_e), two_pi);
            const double move = std::abs(std::remainder(optimum - best[uq], two_pi));
            const std::vector<double> previous = best;
            best[uq] = optimum;
            const double value = overlap(best);
            if (value >= best_value) {
                best_value = value;
                largest_move = std::max(largest_move, move);
            } else {
                best = previous;
            }
        }
        if (largest_move < 1e-4) break;
    }

    for (double& p : best) {
        p = std::fmod(p, two_pi);
        if (p < 0.0) p += two_pi;
        if (p >= two_pi) p = 0.0;
    }
    return {std::move(best), std::clamp(best_value, 0.0, 1.0 + 1e-9)};
}

// Wootters concurrence of a two-qubit density matrix.
inline double pairwise_concurrence(const DensityMatrix& rho2) {
    if (rho2.entries.rows() != 4 || rho2.entries.cols() != 4) {
        throw InvalidArgument("concurrence needs a 4x4 two-qubit density matrix");
    }
    Matrix yy(4, 4);
    const Matrix2 y = ops::sigma_y();
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) yy(r, c) = y(r / 2, c / 2) * y(r % 2, c % 2);
    const Matrix flipped = yy * rho2.entries.conjugate() * yy;

    // Eigenvalues of sqrt(rho) rho~ sqrt(rho) are the squared lambda_i and the matrix is Hermitian.
    Eigen::SelfAdjointEigenSolver<Matrix> rho_solver(rho2.entries);
    if (rho_solver.info() != Eigen::Success) throw NumericalFailure("Hermitian eigen-solver did not converge");
    const Eigen::VectorXd clamped = rho_solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const Matrix sqrt_rho = rho_solver.eigenvectors() * clamped.cast<Complex>().asDiagonal() *
                            rho_solver.eigenvectors().adjoint();
    const Matrix r = sqrt_rho * flipped * sqrt_rho;
    Eigen::VectorXd lambda = detail::hermitian_eigenvalues(Matrix((r + r.adjoint()) / 2.0));
    std::vector<double> roots;
    for (double l : lambda) roots.push_back(l > kEigenvalueFloor ? std::sqrt(l) : 0.0);
    std::sort(roots.begin(), roots.end(), std::greater<>());
    return std::clamp(roots[0] - roots[1] - roots[2] - roots[3], 0.0, 1.0);
}

struct EntanglementReport {
    double time = 0.0;
    std::optional<double> tau; // three qubits only
    std::vector<double> entropies;
    double fidelity_ghz = 0.0;
    double fidelity_ghz_up_to_local_phases = 0.0;
    double survival = 1.0;
};

inline EntanglementReport report(const StateVector& psi, double time, double survival) {
    require_normalized(psi, "report input");
    const int n = psi.n_qubits();
    EntanglementReport r;
    r.time = time;
    r.survival = survival;
    if (n == 3) r.tau = three_tangle(psi);
    for (int j = 1; j <= n; ++j) {
        const int keep[] = {j};
        r.entropies.push_back(von_neumann_entropy(reduced_density_matrix(psi, keep)));
    }
    if (n >= 2) {
        const StateVector ghz = ghz_state(n);
        r.fidelity_ghz = fidelity(psi, ghz);
        r.fidelity_ghz_up_to_local_phases = optimize_local_phases(psi, ghz).best_fidelity;
    }
    return r;
}

} // namespace nhq
