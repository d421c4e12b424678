#pragma once

// Independent reference routes used by the claim checker and the test suites.
// Nothing here goes through the Pade exponential.

#include "nhq/qubit_model.hpp"
#include "nhq/types.hpp"

#include <Eigen/QR>

#include <cmath>
#include <random>

namespace nhq::validation {

// exp(A) by plain Taylor summation; only sensible for ||A|| well below 1.
inline Matrix taylor_exponential(const Matrix& a, int max_terms = 60) {
    Matrix sum = Matrix::Identity(a.rows(), a.cols());
    Matrix term = sum;
    for (int k = 1; k <= max_terms; ++k) {
        term = term * a / static_cast<double>(k);
        sum += term;
        if (term.cwiseAbs().maxCoeff() < 1e-18 * sum.cwiseAbs().maxCoeff()) break;
    }
    return sum;
}

// (exp(-iH t/N))^N |psi0>, applied as N matrix-vector products.
inline StateVector substep_evolve(const Operator& hamiltonian, const StateVector& psi0, double t, int substeps = 10000) {
    const Matrix step = taylor_exponential(Matrix(-kI * (t / substeps) * hamiltonian.entries()));
    Vector v = psi0.amplitudes();
    for (int s = 0; s < substeps; ++s) v = step * v;
    return {psi0.n_qubits(), std::move(v)};
}

// Haar-random single-qubit unitary (QR of a complex Ginibre matrix with phase fix).
template <class Rng>
Matrix2 random_unitary(Rng& rng) {
    std::normal_distribution<double> g;
    Matrix2 z;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) z(r, c) = Complex(g(rng), g(rng));
    Eigen::HouseholderQR<Matrix2> qr(z);
    Matrix2 q = qr.householderQ();
    const Matrix2 rr = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int c = 0; c < 2; ++c) {
        const Complex d = rr(c, c);
        if (std::abs(d) > 0.0) q.col(c) *= d / std::abs(d);
    }
    return q;
}

// Haar-random normalized n-qubit state.
template <class Rng>
StateVector random_state(int n, Rng& rng) {
    std::normal_distribution<double> g;
    Vector v(static_cast<Eigen::Index>(dimension_of(n)));
    for (auto& x : v) x = Complex(g(rng), g(rng));
    v.normalize();
    return {n, std::move(v)};
}

// (|eef> + |efe> + |fee>)/sqrt(3).
inline StateVector w_state() {
    Vector v = Vector::Zero(8);
    v(static_cast<Eigen::Index>(basis_index("eef"))) = v(static_cast<Eigen::Index>(basis_index("efe"))) =
        v(static_cast<Eigen::Index>(basis_index("fee"))) = 1.0 / std::sqrt(3.0);
    return {3, std::move(v)};
}

} // namespace nhq::validation
