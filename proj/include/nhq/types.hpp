#pragma once

// Core value types shared by every module.
//
// Basis convention: a basis index i in [0, 2^n) is read as n bits with qubit 1
// the most significant bit. Bit value 0 is |e>, bit value 1 is |f>. For n = 3,
// index 0 is |eee> and index 7 is |fff>. Qubit indices in the public API are
// 1-based.

#include "nhq/error.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <numeric>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nhq {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Matrix2 = Eigen::Matrix2cd;

inline constexpr Complex kI{0.0, 1.0};

// Dense matrices are used throughout; 12 qubits is a 4096-dimensional space.
inline constexpr int kMaxQubits = 12;

inline void require_qubit_count(int n, int min_n = 1) {
    if (n < min_n || n > kMaxQubits) {
        throw InvalidArgument("qubit count " + std::to_string(n) + " outside [" + std::to_string(min_n) + ", " +
                              std::to_string(kMaxQubits) + "]");
    }
}

inline constexpr std::size_t dimension_of(int n_qubits) { return std::size_t{1} << n_qubits; }

// Bit shift that addresses qubit j (1-based) in an n-qubit basis index.
inline constexpr int qubit_shift(int j, int n) { return n - j; }

// True iff qubit j of basis index `index` is |e>.
inline constexpr bool qubit_is_e(std::size_t index, int j, int n) {
    return ((index >> qubit_shift(j, n)) & 1u) == 0;
}

// "eef" -> 1. Throws on characters other than 'e' / 'f'.
inline std::size_t basis_index(std::string_view labels) {
    std::size_t index = 0;
    for (char c : labels) {
        if (c != 'e' && c != 'f') {
            throw InvalidArgument("basis label must consist of 'e' and 'f': " + std::string(labels));
        }
        index = (index << 1) | (c == 'f' ? 1u : 0u);
    }
    return index;
}

inline std::string basis_label(std::size_t index, int n) {
    std::string out(static_cast<std::size_t>(n), 'e');
    for (int j = 1; j <= n; ++j) {
        if (!qubit_is_e(index, j, n)) out[static_cast<std::size_t>(j - 1)] = 'f';
    }
    return out;
}

// Complex amplitude vector over the 2^n bare basis; not necessarily normalized.
class StateVector {
public:
    StateVector(int n_qubits, Vector amplitudes) : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
        require_qubit_count(n_qubits_);
        if (static_cast<std::size_t>(amplitudes_.size()) != dimension_of(n_qubits_)) {
            throw InvalidArgument("state vector length " + std::to_string(amplitudes_.size()) + " != 2^" +
                                  std::to_string(n_qubits_));
        }
    }

    static StateVector basis(int n_qubits, std::size_t index) {
        require_qubit_count(n_qubits);
        if (index >= dimension_of(n_qubits)) throw InvalidArgument("basis index out of range");
        Vector amps = Vector::Zero(static_cast<Eigen::Index>(dimension_of(n_qubits)));
        amps(static_cast<Eigen::Index>(index)) = 1.0;
        return {n_qubits, std::move(amps)};
    }

    static StateVector basis(std::string_view labels) {
        return basis(static_cast<int>(labels.size()), basis_index(labels));
    }

    int n_qubits() const noexcept { return n_qubits_; }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(amplitudes_.size()); }
    const Vector& amplitudes() const noexcept { return amplitudes_; }

    Complex operator[](std::size_t index) const { return amplitudes_(static_cast<Eigen::Index>(index)); }
    Complex amplitude(std::string_view labels) const { return (*this)[basis_index(labels)]; }

    double squared_norm() const { return amplitudes_.squaredNorm(); }

    bool is_normalized(double tol = 1e-9) const { return std::abs(squared_norm() - 1.0) <= tol; }

private:
    int n_qubits_;
    Vector amplitudes_;
};

// Dense 2^n x 2^n complex operator (Hamiltonian, propagator, gate).
class Operator {
public:
    Operator(int n_qubits, Matrix entries) : n_qubits_(n_qubits), entries_(std::move(entries)) {
        require_qubit_count(n_qubits_);
        const auto d = static_cast<Eigen::Index>(dimension_of(n_qubits_));
        if (entries_.rows() != d || entries_.cols() != d) {
            throw InvalidArgument("operator must be 2^n x 2^n");
        }
    }

    int n_qubits() const noexcept { return n_qubits_; }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
    const Matrix& entries() const noexcept { return entries_; }
    Complex operator()(std::size_t row, std::size_t col) const {
        return entries_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
    }

    StateVector apply(const StateVector& psi) const {
        if (psi.n_qubits() != n_qubits_) throw InvalidArgument("operator/state dimension mismatch");
        return {n_qubits_, entries_ * psi.amplitudes()};
    }

private:
    int n_qubits_;
    Matrix entries_;
};

// Density matrix over an ordered subset of qubits. qubit_labels are the 1-based
// indices of the retained qubits in the original register; the first label is
// the most significant bit of the local basis index.
struct DensityMatrix {
    Matrix entries;
    std::vector<int> qubit_labels;

    int n_qubits() const noexcept { return static_cast<int>(qubit_labels.size()); }

    static std::vector<int> all_labels(int n) {
        std::vector<int> labels(static_cast<std::size_t>(n));
        std::iota(labels.begin(), labels.end(), 1);
        return labels;
    }
};

} // namespace nhq
