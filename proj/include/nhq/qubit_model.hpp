#pragma once

// All-to-all coupled lossy two-level qubits: parameters, Hamiltonian and named states.
//
//   H = sum_j (Delta_j - i gamma_j / 2) |e><e|_j + sum_j Omega_j X_j
//     + sum_{j<k} J_jk (s_j^dag s_k + s_j s_k^dag),      s_j = |e><f|_j,  X = s + s^dag
//
// All rates are in units of a reference coupling J; times are the dimensionless Jt.

#include "nhq/types.hpp"

#include <array>
#include <cstdio>
#include <charconv>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

namespace nhq {

// Default phase of the spin coherent initial state, 0.288 pi.
inline constexpr double kSpinCoherentPhase = 0.288 * std::numbers::pi;

struct SystemConfig {
    int n_qubits = 0;
    std::vector<double> delta;
    std::vector<double> gamma;
    std::vector<double> omega;
    std::vector<std::vector<double>> coupling; // n x n, symmetric, zero diagonal

    // Uniform parameters with identical coupling on every pair.
    static SystemConfig symmetric(int n, double omega, double gamma, double coupling = 1.0, double delta = 0.0) {
        require_qubit_count(n);
        const auto un = static_cast<std::size_t>(n);
        SystemConfig c;
        c.n_qubits = n;
        c.delta.assign(un, delta);
        c.gamma.assign(un, gamma);
        c.omega.assign(un, omega);
        c.coupling.assign(un, std::vector<double>(un, coupling));
        for (std::size_t j = 0; j < un; ++j) c.coupling[j][j] = 0.0;
        return c;
    }

    // Throws ValidationError naming the violated invariant.
    void validate() const {
        if (n_qubits < 1 || n_qubits > kMaxQubits) {
            throw ValidationError("1 ≤ n_qubits ≤ " + std::to_string(kMaxQubits),
                                  "n_qubits = " + std::to_string(n_qubits));
        }
        const auto un = static_cast<std::size_t>(n_qubits);
        auto check_len = [&](const std::vector<double>& v, const char* name) {
            if (v.size() != un) {
                throw ValidationError(std::string("len(") + name + ") == n_qubits",
                                      std::to_string(v.size()) + " values for " + std::to_string(un) + " qubits");
            }
            for (double x : v) {
                if (!std::isfinite(x)) throw ValidationError(std::string(name) + " finite", "non-finite value");
            }
        };
        check_len(delta, "delta");
        check_len(gamma, "gamma");
        check_len(omega, "omega");
        for (std::size_t j = 0; j < un; ++j) {
            if (gamma[j] < 0.0) {
                throw ValidationError("gamma ≥ 0",
                                      "gamma[" + std::to_string(j + 1) + "] = " + std::to_string(gamma[j]));
            }
        }
        if (coupling.size() != un) throw ValidationError("coupling is n x n", "wrong row count");
        for (std::size_t j = 0; j < un; ++j) {
            if (coupling[j].size() != un) throw ValidationError("coupling is n x n", "wrong column count");
            if (coupling[j][j] != 0.0) throw ValidationError("coupling[j][j] == 0", "nonzero diagonal");
            for (std::size_t k = 0; k < un; ++k) {
                if (!std::isfinite(coupling[j][k])) throw ValidationError("coupling finite", "non-finite value");
                if (coupling[j][k] != coupling[k][j]) {
                    throw ValidationError("coupling[j][k] == coupling[k][j]",
                                          "asymmetric at (" + std::to_string(j + 1) + ", " + std::to_string(k + 1) +
                                              ")");
                }
            }
        }
    }

    // All detunings, decays, drives and off-diagonal couplings equal.
    bool is_symmetric() const {
        auto all_equal = [](const std::vector<double>& v) {
            for (double x : v)
                if (x != v.front()) return false;
            return true;
        };
        if (delta.empty() || !all_equal(delta) || !all_equal(gamma) || !all_equal(omega)) return false;
        if (n_qubits < 2) return true;
        const double ref = coupling[0][1];
        for (std::size_t j = 0; j < coupling.size(); ++j)
            for (std::size_t k = 0; k < coupling.size(); ++k)
                if (j != k && coupling[j][k] != ref) return false;
        return true;
    }

    bool operator==(const SystemConfig&) const = default;
};

namespace ops {

// 2x2 matrices in the (|e>, |f>) basis.
inline Matrix2 identity() { return Matrix2::Identity(); }
inline Matrix2 lowering() { // |e><f|
    Matrix2 m = Matrix2::Zero();
    m(0, 1) = 1.0;
    return m;
}
inline Matrix2 raising() { return lowering().adjoint(); }
inline Matrix2 projector_e() { return lowering() * raising(); }
inline Matrix2 sigma_x() { return lowering() + raising(); }
inline Matrix2 sigma_y() {
    Matrix2 m = Matrix2::Zero();
    m(0, 1) = -kI;
    m(1, 0) = kI;
    return m;
}
inline Matrix2 sigma_z() { return Matrix2(Eigen::Vector2cd(1.0, -1.0).asDiagonal()); }

} // namespace ops

// I^(j-1) (x) op (x) I^(n-j).
inline Operator embed_single_qubit_op(const Matrix2& op, int j, int n) {
    require_qubit_count(n);
    if (j < 1 || j > n) {
        throw InvalidArgument("qubit index " + std::to_string(j) + " outside [1, " + std::to_string(n) + "]");
    }
    const std::size_t d = dimension_of(n);
    const int shift = qubit_shift(j, n);
    const std::size_t mask = std::size_t{1} << shift;
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t row = 0; row < d; ++row) {
        const std::size_t rest = row & ~mask;
        const auto r = static_cast<Eigen::Index>((row >> shift) & 1u);
        for (Eigen::Index c = 0; c < 2; ++c) {
            const std::size_t col = rest | (static_cast<std::size_t>(c) << shift);
            m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = op(r, c);
        }
    }
    return {n, std::move(m)};
}

inline Operator build_hamiltonian(const SystemConfig& config) {
    config.validate();
    const int n = config.n_qubits;
    const std::size_t d = dimension_of(n);
    Matrix h = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    auto at = [&h](std::size_t r, std::size_t c) -> Complex& {
        return h(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    };

    for (std::size_t i = 0; i < d; ++i) {
        for (int j = 1; j <= n; ++j) {
            const auto uj = static_cast<std::size_t>(j - 1);
            const std::size_t bit_j = std::size_t{1} << qubit_shift(j, n);
            if (qubit_is_e(i, j, n)) at(i, i) += Complex(config.delta[uj], -config.gamma[uj] / 2.0);
            at(i ^ bit_j, i) += config.omega[uj];

            // Exchange moves an excitation between j and k; nonzero only when they differ.
            for (int k = j + 1; k <= n; ++k) {
                const double jk = config.coupling[uj][static_cast<std::size_t>(k - 1)];
                if (jk == 0.0 || qubit_is_e(i, j, n) == qubit_is_e(i, k, n)) continue;
                const std::size_t bit_k = std::size_t{1} << qubit_shift(k, n);
                at(i ^ bit_j ^ bit_k, i) += jk;
            }
        }
    }
    return {n, std::move(h)};
}

// Normalized tensor product of per-qubit (amp_e, amp_f) pairs; qubit 1 first.
inline StateVector product_state(std::span<const std::array<Complex, 2>> per_qubit) {
    const int n = static_cast<int>(per_qubit.size());
    require_qubit_count(n);
    Vector amps = Vector::Ones(1);
    for (const auto& pair : per_qubit) {
        const double norm = std::sqrt(std::norm(pair[0]) + std::norm(pair[1]));
        if (!(norm > 0.0)) throw InvalidArgument("single-qubit state has zero norm");
        Vector next(amps.size() * 2);
        for (Eigen::Index i = 0; i < amps.size(); ++i) {
            next(2 * i) = amps(i) * pair[0] / norm;
            next(2 * i + 1) = amps(i) * pair[1] / norm;
        }
        amps = std::move(next);
    }
    return {n, std::move(amps)};
}

inline StateVector uniform_product_state(Complex amp_e, Complex amp_f, int n) {
    require_qubit_count(n);
    const std::vector<std::array<Complex, 2>> pairs(static_cast<std::size_t>(n), {amp_e, amp_f});
    return product_state(pairs);
}

// (|f> + e^{i phi}|e>)^(x)n, normalized.
inline StateVector spin_coherent_state(double phi = kSpinCoherentPhase, int n = 3) {
    return uniform_product_state(std::polar(1.0, phi), 1.0, n);
}

inline StateVector all_f_state(int n) { return StateVector::basis(n, dimension_of(n) - 1); }

// (|e...e> + |f...f>)/sqrt(2).
inline StateVector ghz_state(int n) {
    if (n < 2) throw InvalidArgument("GHZ state needs at least 2 qubits");
    require_qubit_count(n);
    Vector amps = Vector::Zero(static_cast<Eigen::Index>(dimension_of(n)));
    amps(0) = amps(amps.size() - 1) = 1.0 / std::numbers::sqrt2;
    return {n, std::move(amps)};
}

// Named initial-state selector: "all-f", "spin-coherent:PHI" (PHI in radians), "ghz".
struct InitialState {
    enum class Kind { all_f, spin_coherent, ghz };

    Kind kind = Kind::all_f;
    double phi = kSpinCoherentPhase;

    static InitialState parse(std::string_view text) {
        if (text == "all-f") return {Kind::all_f, kSpinCoherentPhase};
        if (text == "ghz") return {Kind::ghz, kSpinCoherentPhase};
        constexpr std::string_view prefix = "spin-coherent";
        if (text.substr(0, prefix.size()) == prefix) {
            auto rest = text.substr(prefix.size());
            if (rest.empty()) return {Kind::spin_coherent, kSpinCoherentPhase};
            if (rest.front() == ':') {
                rest.remove_prefix(1);
                double phi = 0.0;
                const auto [end, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), phi);
                if (ec == std::errc{} && end == rest.data() + rest.size() && std::isfinite(phi)) {
                    return {Kind::spin_coherent, phi};
                }
            }
        }
        throw InvalidArgument("unknown initial state '" + std::string(text) +
                              "' (expected all-f, spin-coherent:PHI or ghz)");
    }

    std::string to_string() const {
        switch (kind) {
        case Kind::all_f:
            return "all-f";
        case Kind::ghz:
            return "ghz";
        case Kind::spin_coherent: {
            char buf[40];
            std::snprintf(buf, sizeof buf, "spin-coherent:%.17g", phi);
            return buf;
        }
        }
        return {};
    }

    StateVector make(int n) const {
        switch (kind) {
        case Kind::all_f:
            return all_f_state(n);
        case Kind::ghz:
            return ghz_state(n);
        case Kind::spin_coherent:
            return spin_coherent_state(phi, n);
        }
        throw InvalidArgument("bad initial state kind");
    }

    bool operator==(const InitialState& other) const {
        return kind == other.kind && (kind != Kind::spin_coherent || phi == other.phi);
    }
};

} // namespace nhq
