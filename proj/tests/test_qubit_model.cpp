#include "nhq/qubit_model.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <random>

using namespace nhq;
using nhq::testing::kron_hamiltonian;
using nhq::testing::max_abs;

namespace {

Matrix dense(const Operator& op) { return op.entries(); }

} // namespace

TEST(BasisConvention, QubitOneIsMostSignificantAndEIsZero) {
    EXPECT_EQ(basis_index("eee"), 0u);
    EXPECT_EQ(basis_index("fff"), 7u);
    EXPECT_EQ(basis_index("eef"), 1u);
    EXPECT_EQ(basis_index("fee"), 4u);
    EXPECT_EQ(basis_label(6, 3), "ffe");
    EXPECT_THROW(basis_index("exf"), InvalidArgument);
}

TEST(EmbedSingleQubitOp, IdentityEmbedsToIdentity) {
    const auto m = embed_single_qubit_op(ops::identity(), 2, 3);
    EXPECT_LT(max_abs(dense(m) - Matrix::Identity(8, 8)), 1e-15);
}

TEST(EmbedSingleQubitOp, SingleQubitRegisterReturnsOperatorItself) {
    const auto m = embed_single_qubit_op(ops::sigma_x(), 1, 1);
    EXPECT_LT(max_abs(dense(m) - Matrix(ops::sigma_x())), 1e-15);
}

TEST(EmbedSingleQubitOp, ProjectorOnSecondQubitOfTwo) {
    const auto m = embed_single_qubit_op(ops::projector_e(), 2, 2);
    EXPECT_EQ(m(basis_index("ee"), basis_index("ee")), Complex(1.0));
    EXPECT_EQ(m(basis_index("ef"), basis_index("ef")), Complex(0.0));
    EXPECT_EQ(m(basis_index("fe"), basis_index("fe")), Complex(1.0));
    EXPECT_EQ(m(basis_index("ff"), basis_index("ff")), Complex(0.0));
}

TEST(EmbedSingleQubitOp, MatchesKroneckerProduct) {
    std::mt19937 rng(7);
    std::normal_distribution<double> g;
    for (int n = 1; n <= 4; ++n) {
        for (int j = 1; j <= n; ++j) {
            Matrix2 op;
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c) op(r, c) = Complex(g(rng), g(rng));
            EXPECT_LT(max_abs(dense(embed_single_qubit_op(op, j, n)) - nhq::testing::kron_embed(op, j, n)), 1e-15);
        }
    }
}

TEST(EmbedSingleQubitOp, RejectsQubitOutOfRange) {
    EXPECT_THROW(embed_single_qubit_op(ops::sigma_x(), 0, 3), InvalidArgument);
    EXPECT_THROW(embed_single_qubit_op(ops::sigma_x(), 4, 3), InvalidArgument);
}

TEST(BuildHamiltonian, SingleQubitDrive) {
    const auto h = build_hamiltonian(SystemConfig::symmetric(1, 5.0, 0.0));
    EXPECT_EQ(h(0, 0), Complex(0.0));
    EXPECT_EQ(h(0, 1), Complex(5.0));
    EXPECT_EQ(h(1, 0), Complex(5.0));
    EXPECT_EQ(h(1, 1), Complex(0.0));
}

TEST(BuildHamiltonian, LossOnlyIsDiagonalCountingExcitedQubits) {
    const auto h = build_hamiltonian(SystemConfig::symmetric(3, 0.0, 2.0, 0.0));
    EXPECT_EQ(h(basis_index("eee"), basis_index("eee")), Complex(0.0, -3.0));
    EXPECT_EQ(h(basis_index("fff"), basis_index("fff")), Complex(0.0));
    EXPECT_EQ(h(basis_index("eef"), basis_index("eef")), Complex(0.0, -2.0));
    Matrix off = dense(h);
    off.diagonal().setZero();
    EXPECT_EQ(max_abs(off), 0.0);
}

TEST(BuildHamiltonian, ExchangeSwapsExcitation) {
    const auto h = build_hamiltonian(SystemConfig::symmetric(2, 0.0, 0.0, 1.0));
    EXPECT_EQ(h(basis_index("ef"), basis_index("fe")), Complex(1.0));
    EXPECT_EQ(h(basis_index("fe"), basis_index("ef")), Complex(1.0));
    EXPECT_EQ(dense(h).diagonal().cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ(h(basis_index("ee"), basis_index("ff")), Complex(0.0));
}

TEST(BuildHamiltonian, MatchesKroneckerAssemblyForGeneralConfigs) {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    for (int n = 1; n <= 5; ++n) {
        SystemConfig c = SystemConfig::symmetric(n, 0.0, 0.0);
        for (int j = 0; j < n; ++j) {
            c.delta[j] = u(rng) - 1.5;
            c.gamma[j] = u(rng);
            c.omega[j] = u(rng);
            for (int k = j + 1; k < n; ++k) c.coupling[j][k] = c.coupling[k][j] = u(rng);
        }
        const Matrix expected = kron_hamiltonian(n, c.delta, c.gamma, c.omega, c.coupling);
        EXPECT_LT(max_abs(dense(build_hamiltonian(c)) - expected), 1e-14) << "n = " << n;
    }
}

TEST(BuildHamiltonian, HermitianWithoutLoss) {
    for (int n = 2; n <= 5; ++n) {
        const Matrix h = dense(build_hamiltonian(SystemConfig::symmetric(n, 3.7, 0.0, 1.3, 0.4)));
        EXPECT_LT(max_abs(h - h.adjoint()), 1e-12);
    }
}

TEST(BuildHamiltonian, AntiHermitianPartIsTheLossProjectors) {
    SystemConfig c = SystemConfig::symmetric(4, 2.0, 0.0, 1.0);
    c.gamma = {0.3, 1.0, 0.0, 2.5};
    const Matrix h = dense(build_hamiltonian(c));
    Matrix expected = Matrix::Zero(16, 16);
    for (int j = 1; j <= 4; ++j) {
        expected += -kI * c.gamma[static_cast<std::size_t>(j - 1)] * dense(embed_single_qubit_op(ops::projector_e(), j, 4));
    }
    EXPECT_LT(max_abs((h - h.adjoint()) - expected), 1e-12);
}

TEST(BuildHamiltonian, SymmetricConfigCommutesWithQubitPermutations) {
    for (int n : {3, 4}) {
        const Matrix h = dense(build_hamiltonian(SystemConfig::symmetric(n, 1.7, 0.6, 1.0, 0.2)));
        std::vector<int> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 1);
        do {
            const Matrix p = nhq::testing::qubit_permutation(perm);
            EXPECT_LT(max_abs(p * h - h * p), 1e-12);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
}

TEST(BuildHamiltonian, LinearInEachParameter) {
    auto h = [](double omega, double gamma, double j, double delta) {
        return dense(build_hamiltonian(SystemConfig::symmetric(3, omega, gamma, j, delta)));
    };
    const double base[4] = {1.1, 0.7, 0.9, 0.3};
    for (int p = 0; p < 4; ++p) {
        double lo[4] = {base[0], base[1], base[2], base[3]};
        double mid[4] = {base[0], base[1], base[2], base[3]};
        double hi[4] = {base[0], base[1], base[2], base[3]};
        lo[p] = 0.0;
        hi[p] = 2.0 * base[p];
        const Matrix a = h(lo[0], lo[1], lo[2], lo[3]);
        const Matrix b = h(mid[0], mid[1], mid[2], mid[3]);
        const Matrix c = h(hi[0], hi[1], hi[2], hi[3]);
        EXPECT_LT(max_abs((c - b) - (b - a)), 1e-14) << "parameter " << p;
    }
}

TEST(SystemConfig, ValidationNamesTheViolatedInvariant) {
    SystemConfig c = SystemConfig::symmetric(3, 1.0, 1.0);
    c.gamma[1] = -1.0;
    try {
        c.validate();
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        EXPECT_EQ(e.invariant(), "gamma ≥ 0");
    }

    c = SystemConfig::symmetric(3, 1.0, 1.0);
    c.coupling[0][2] = 2.0;
    EXPECT_THROW(c.validate(), ValidationError);

    c = SystemConfig::symmetric(3, 1.0, 1.0);
    c.coupling[1][1] = 0.5;
    EXPECT_THROW(c.validate(), ValidationError);

    c = SystemConfig::symmetric(3, 1.0, 1.0);
    c.omega.pop_back();
    EXPECT_THROW(c.validate(), ValidationError);
    EXPECT_THROW(build_hamiltonian(c), ValidationError);
}

TEST(SystemConfig, SymmetricPredicate) {
    SystemConfig c = SystemConfig::symmetric(3, 1.0, 0.5, 1.0);
    EXPECT_TRUE(c.is_symmetric());
    c.omega[2] = 1.5;
    EXPECT_FALSE(c.is_symmetric());
    c = SystemConfig::symmetric(3, 1.0, 0.5, 1.0);
    c.coupling[0][1] = c.coupling[1][0] = 2.0;
    EXPECT_FALSE(c.is_symmetric());
}

TEST(ProductState, AllFIsTheLastBasisState) {
    const std::vector<std::array<Complex, 2>> pairs(3, {0.0, 1.0});
    const auto psi = product_state(pairs);
    EXPECT_EQ(psi[basis_index("fff")], Complex(1.0));
    EXPECT_NEAR(psi.squared_norm(), 1.0, 1e-15);
}

TEST(ProductState, UniformSuperpositionOfTwoQubits) {
    const double h = 1.0 / std::numbers::sqrt2;
    const std::vector<std::array<Complex, 2>> pairs(2, {h, h});
    const auto psi = product_state(pairs);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(psi[i] - Complex(0.5)), 0.0, 1e-15);
}

TEST(ProductState, ComplexAmplitudesExpandAsProduct) {
    const double h = 1.0 / std::numbers::sqrt2;
    const std::vector<std::array<Complex, 2>> pairs(3, {h, kI * h});
    const auto psi = product_state(pairs);
    const double scale = 1.0 / (2.0 * std::numbers::sqrt2);
    EXPECT_NEAR(std::abs(psi.amplitude("eee") - Complex(scale)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(psi.amplitude("fff") - kI * kI * kI * scale), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(psi.amplitude("eff") - kI * kI * scale), 0.0, 1e-15);
}

TEST(ProductState, NormalizesEachPairAndRejectsZero) {
    const std::vector<std::array<Complex, 2>> pairs = {{{3.0, 4.0}}, {{0.0, 2.0}}};
    const auto psi = product_state(pairs);
    EXPECT_NEAR(psi.squared_norm(), 1.0, 1e-15);
    EXPECT_NEAR(psi.amplitude("ef").real(), 0.6, 1e-15);
    const std::vector<std::array<Complex, 2>> bad = {{{1.0, 0.0}}, {{0.0, 0.0}}};
    EXPECT_THROW(product_state(bad), InvalidArgument);
}

TEST(SpinCoherentState, ZeroPhaseSingleQubit) {
    const auto psi = spin_coherent_state(0.0, 1);
    EXPECT_NEAR(std::abs(psi[0] - Complex(1.0 / std::numbers::sqrt2)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(psi[1] - Complex(1.0 / std::numbers::sqrt2)), 0.0, 1e-15);
}

TEST(SpinCoherentState, DefaultPhaseThreeQubits) {
    const auto psi = spin_coherent_state();
    EXPECT_NEAR(kSpinCoherentPhase, 0.288 * std::numbers::pi, 1e-15);
    EXPECT_NEAR(psi.squared_norm(), 1.0, 1e-12);
    const Complex expected = std::polar(1.0, 3.0 * kSpinCoherentPhase) / (2.0 * std::numbers::sqrt2);
    EXPECT_NEAR(std::abs(psi.amplitude("eee") - expected), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(psi.amplitude("fff") - Complex(1.0 / (2.0 * std::numbers::sqrt2))), 0.0, 1e-15);
}

TEST(SpinCoherentState, PhasePiTwoQubits) {
    const auto psi = spin_coherent_state(std::numbers::pi, 2);
    const Complex expected[4] = {0.5, -0.5, -0.5, 0.5};
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(psi[i] - expected[i]), 0.0, 1e-15);
}

TEST(GhzState, CornersOnly) {
    for (int n = 2; n <= 8; ++n) {
        const auto psi = ghz_state(n);
        EXPECT_NEAR(psi.squared_norm(), 1.0, 1e-15);
        EXPECT_NEAR(psi[0].real(), 1.0 / std::numbers::sqrt2, 1e-15);
        EXPECT_NEAR(psi[psi.dim() - 1].real(), 1.0 / std::numbers::sqrt2, 1e-15);
        EXPECT_NEAR(psi.amplitudes().segment(1, static_cast<Eigen::Index>(psi.dim()) - 2).norm(), 0.0, 1e-15);
    }
    EXPECT_THROW(ghz_state(1), InvalidArgument);
}

TEST(StateVector, RejectsWrongLengthAndOversizedRegisters) {
    EXPECT_THROW(StateVector(3, Vector::Zero(7)), InvalidArgument);
    EXPECT_THROW(StateVector::basis(kMaxQubits + 1, 0), InvalidArgument);
}

TEST(InitialState, ParsesSelectors) {
    EXPECT_EQ(InitialState::parse("all-f").kind, InitialState::Kind::all_f);
    EXPECT_EQ(InitialState::parse("ghz").kind, InitialState::Kind::ghz);
    const auto sc = InitialState::parse("spin-coherent:0.5");
    EXPECT_EQ(sc.kind, InitialState::Kind::spin_coherent);
    EXPECT_EQ(sc.phi, 0.5);
    EXPECT_EQ(InitialState::parse(sc.to_string()), sc);
    EXPECT_EQ(InitialState::parse("spin-coherent").phi, kSpinCoherentPhase);
    EXPECT_THROW(InitialState::parse("spin-coherent:abc"), InvalidArgument);
    EXPECT_THROW(InitialState::parse("bell"), InvalidArgument);
}
