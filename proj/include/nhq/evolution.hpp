#pragma once

// Non-unitary propagation exp(-iHt), post-selected normalization and spectrum classification.

#include "nhq/qubit_model.hpp"
#include "nhq/types.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace nhq {

namespace detail {

// Diagonal Pade approximant r_m(A) = q_m(A)^{-1} p_m(A) with p_m(A) = U + V,
// q_m(A) = -U + V (U holds odd powers, V even powers). Coefficients and the
// backward-error thresholds theta_m are those of Higham's scaling-and-squaring
// method (SIAM J. Matrix Anal. Appl. 26, 2005).
inline constexpr std::array<double, 4> kPade3 = {120.0, 60.0, 12.0, 1.0};
inline constexpr std::array<double, 6> kPade5 = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
inline constexpr std::array<double, 8> kPade7 = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                                                 25200.0,    1512.0,    56.0,      1.0};
inline constexpr std::array<double, 10> kPade9 = {17643225600.0, 8821612800.0, 2075673600.0, 302702400.0,
                                                  30270240.0,    2162160.0,    110880.0,     3960.0,
                                                  90.0,          1.0};
inline constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0, 129060195264000.0,
    10559470521600.0,    670442572800.0,      33522128640.0,      1323241920.0,       40840800.0,
    960960.0,            16380.0,             182.0,              1.0};
inline constexpr std::array<double, 4> kTheta = {1.495585217958292e-2, 2.539398330063230e-1,
                                                 9.504178996162932e-1, 2.097847961257068e0};
inline constexpr double kTheta13 = 5.371920351148152e0;

inline double one_norm(const Matrix& a) { return a.cwiseAbs().colwise().sum().maxCoeff(); }

template <std::size_t N>
Matrix pade_low_order(const Matrix& a, const std::array<double, N>& b) {
    const auto d = a.rows();
    const Matrix ident = Matrix::Identity(d, d);
    const Matrix a2 = a * a;
    Matrix odd = b[1] * ident;
    Matrix even = b[0] * ident;
    Matrix power = ident;
    for (std::size_t k = 2; k < N; k += 2) {
        power = power * a2;
        even += b[k] * power;
        if (k + 1 < N) odd += b[k + 1] * power;
    }
    const Matrix u = a * odd;
    return (even - u).partialPivLu().solve(even + u);
}

inline Matrix pade13(const Matrix& a) {
    const auto& b = kPade13;
    const auto d = a.rows();
    const Matrix ident = Matrix::Identity(d, d);
    const Matrix a2 = a * a;
    const Matrix a4 = a2 * a2;
    const Matrix a6 = a4 * a2;
    const Matrix u =
        a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident);
    const Matrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident;
    return (v - u).partialPivLu().solve(v + u);
}

} // namespace detail

// exp(A) by scaling and squaring with a diagonal Pade approximant. Valid for
// non-normal and defective A; no eigendecomposition is involved.
inline Matrix matrix_exponential(const Matrix& a) {
    if (a.rows() != a.cols()) throw InvalidArgument("matrix exponential needs a square matrix");
    if (!a.allFinite()) throw InvalidArgument("matrix exponential of non-finite matrix");
    if (a.rows() == 0) return a;

    const double norm = detail::one_norm(a);
    if (norm <= detail::kTheta[0]) return detail::pade_low_order(a, detail::kPade3);
    if (norm <= detail::kTheta[1]) return detail::pade_low_order(a, detail::kPade5);
    if (norm <= detail::kTheta[2]) return detail::pade_low_order(a, detail::kPade7);
    if (norm <= detail::kTheta[3]) return detail::pade_low_order(a, detail::kPade9);

    const int squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm / detail::kTheta13))));
    Matrix result = detail::pade13(a / std::ldexp(1.0, squarings));
    for (int s = 0; s < squarings; ++s) result = result * result;
    if (!result.allFinite()) throw NumericalFailure("matrix exponential overflowed");
    return result;
}

inline Operator matrix_exponential(const Operator& a) { return {a.n_qubits(), matrix_exponential(a.entries())}; }

// exp(-iHt).
inline Operator propagator(const Operator& hamiltonian, double t) {
    return {hamiltonian.n_qubits(), matrix_exponential(Matrix(-kI * t * hamiltonian.entries()))};
}

struct PropagationResult {
    StateVector state;           // exp(-iHt)|psi0>, unnormalized
    double survival_probability; // <psi(t)|psi(t)>
    double time;                 // Jt
};

inline void require_same_register(const Operator& h, const StateVector& psi) {
    if (h.n_qubits() != psi.n_qubits()) {
        throw InvalidArgument("dimension mismatch: operator on " + std::to_string(h.n_qubits()) +
                              " qubits, state on " + std::to_string(psi.n_qubits()));
    }
}

inline void require_normalized(const StateVector& psi, const char* what) {
    if (!psi.is_normalized(1e-9)) {
        throw InvalidArgument(std::string(what) + " must be normalized (squared norm " +
                              std::to_string(psi.squared_norm()) + ")");
    }
}

inline PropagationResult evolve(const Operator& hamiltonian, const StateVector& psi0, double t) {
    require_same_register(hamiltonian, psi0);
    require_normalized(psi0, "initial state");
    StateVector state = propagator(hamiltonian, t).apply(psi0);
    const double survival = state.squared_norm();
    return {std::move(state), survival, t};
}

// Below this the squared norm no longer carries a meaningful direction in double precision.
inline constexpr double kExtinctionFloor = std::numeric_limits<double>::min();

struct NormalizedState {
    StateVector state;
    double survival; // squared norm of the input
};

// |psi> / sqrt(<psi|psi>).
inline NormalizedState normalize(const StateVector& psi) {
    const double survival = psi.squared_norm();
    if (!std::isfinite(survival)) throw NumericalFailure("state has non-finite norm");
    if (survival < kExtinctionFloor) throw PostSelectionExtinct(survival);
    return {StateVector(psi.n_qubits(), psi.amplitudes() / std::sqrt(survival)), survival};
}

// |psi><psi| over all qubits of the register.
inline DensityMatrix density_matrix(const StateVector& psi) {
    require_normalized(psi, "density matrix input");
    return {psi.amplitudes() * psi.amplitudes().adjoint(), DensityMatrix::all_labels(psi.n_qubits())};
}

struct TimePoint {
    double time;
    StateVector state; // normalized
    double survival;
};

inline bool is_uniform_grid(std::span<const double> grid) {
    if (grid.size() < 3) return true;
    const double step = grid[1] - grid[0];
    const double scale = std::max(std::abs(grid.back()), std::abs(step));
    for (std::size_t i = 2; i < grid.size(); ++i) {
        if (std::abs((grid[i] - grid[i - 1]) - step) > 1e-12 * scale) return false;
    }
    return true;
}

// Post-selected state at every grid time. The state is carried normalized from
// one grid point to the next and the survival accumulates multiplicatively, so
// strongly decaying trajectories keep full relative precision. Uniform grids
// reuse a single step propagator.
inline std::vector<TimePoint> time_series(const Operator& hamiltonian, const StateVector& psi0,
                                          std::span<const double> grid) {
    require_same_register(hamiltonian, psi0);
    require_normalized(psi0, "initial state");
    if (grid.empty()) return {};
    if (grid.front() < 0.0) throw InvalidArgument("time grid must start at t >= 0");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) throw InvalidArgument("time grid must be strictly ascending");
    }

    std::vector<TimePoint> out;
    out.reserve(grid.size());

    auto first = normalize(grid.front() == 0.0 ? psi0 : propagator(hamiltonian, grid.front()).apply(psi0));
    out.push_back({grid.front(), std::move(first.state), first.survival});

    const bool uniform = is_uniform_grid(grid);
    std::optional<Operator> step;
    if (uniform && grid.size() > 1) step = propagator(hamiltonian, grid[1] - grid[0]);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        auto next = normalize(step ? step->apply(out.back().state)
                                   : propagator(hamiltonian, grid[i] - grid[i - 1]).apply(out.back().state));
        const double survival = out.back().survival * next.survival;
        if (survival < kExtinctionFloor) throw PostSelectionExtinct(survival);
        out.push_back({grid[i], std::move(next.state), survival});
    }
    return out;
}

// n points evenly spaced over [0, t_max].
inline std::vector<double> uniform_grid(double t_max, std::size_t points) {
    if (points == 0) return {};
    if (points == 1) return {0.0};
    std::vector<double> grid(points);
    for (std::size_t i = 0; i < points; ++i) {
        grid[i] = t_max * static_cast<double>(i) / static_cast<double>(points - 1);
    }
    return grid;
}

struct SpectrumReport {
    std::vector<Complex> eigenvalues; // sorted by real part, then imaginary part
    bool is_pt_symmetric_phase = false;
    double imag_spread = 0.0;       // max - min imaginary part
    double max_imag_residual = 0.0; // max |Im(lambda) - mean Im(lambda)|
    double spectral_radius = 0.0;
};

// Classifies the passive-PT phase: after removing the mean imaginary part
// (the uniform decay shift from pure loss), every eigenvalue must be real
// within `tolerance`.
inline SpectrumReport spectrum(const Operator& hamiltonian, double tolerance) {
    if (!(tolerance > 0.0)) throw InvalidArgument("spectrum tolerance must be positive");
    Eigen::ComplexEigenSolver<Matrix> solver(hamiltonian.entries(), /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) throw NumericalFailure("eigenvalue solver did not converge");

    SpectrumReport report;
    const auto& values = solver.eigenvalues();
    report.eigenvalues.assign(values.data(), values.data() + values.size());
    std::sort(report.eigenvalues.begin(), report.eigenvalues.end(), [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });

    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    double mean = 0.0;
    for (const Complex& z : report.eigenvalues) {
        lo = std::min(lo, z.imag());
        hi = std::max(hi, z.imag());
        mean += z.imag();
        report.spectral_radius = std::max(report.spectral_radius, std::abs(z));
    }
    mean /= static_cast<double>(report.eigenvalues.size());
    for (const Complex& z : report.eigenvalues) {
        report.max_imag_residual = std::max(report.max_imag_residual, std::abs(z.imag() - mean));
    }
    report.imag_spread = hi - lo;
    report.is_pt_symmetric_phase = report.max_imag_residual <= tolerance;
    return report;
}

} // namespace nhq
