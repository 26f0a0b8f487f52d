#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qdmap/linalg.hpp"
#include "qdmap/random.hpp"

using namespace qdmap;

namespace {

constexpr double kTight = 1e-12;

} // namespace

TEST(Linalg, PauliAlgebra) {
    const Complex i(0.0, 1.0);
    for (int k = 1; k <= 3; ++k) {
        EXPECT_LT(max_abs(pauli(k) * pauli(k) - identity(2)), kTight);
        EXPECT_NEAR(std::abs(pauli(k).trace()), 0.0, kTight);
    }
    EXPECT_LT(max_abs(commutator(pauli(1), pauli(2)) - 2.0 * i * pauli(3)), kTight);
    EXPECT_LT(max_abs(anticommutator(pauli(1), pauli(3))), kTight);
    EXPECT_THROW(pauli(4), DimensionError);
}

TEST(Linalg, SigmaPlusConvention) {
    // |2><1| raises the first basis vector to the second.
    EXPECT_EQ(sigma_plus()(1, 0), Complex(1.0));
    EXPECT_EQ(sigma_plus()(0, 1), Complex(0.0));
    EXPECT_LT(max_abs(sigma_minus() - sigma_plus().adjoint()), kTight);
    EXPECT_LT(max_abs(sigma_plus() - 0.5 * (pauli(1) - Complex(0, 1) * pauli(2))), kTight);
}

TEST(Linalg, TensorMatchesOracle) {
    Rng rng(1);
    const ComplexMatrix a = complex_gaussian(2, 3, rng);
    const ComplexMatrix b = complex_gaussian(3, 2, rng);
    EXPECT_LT(max_abs(tensor(a, b) - oracle::kron(a, b)), kTight);
}

TEST(Linalg, PartialTracesOfProducts) {
    Rng rng(2);
    const ComplexMatrix a = random_mixed_state(2, rng).matrix();
    const ComplexMatrix b = random_mixed_state(3, rng).matrix();
    const ComplexMatrix ab = tensor(a, b);
    EXPECT_LT(max_abs(partial_trace_first(ab, 2, 3) - b), kTight);
    EXPECT_LT(max_abs(partial_trace_second(ab, 2, 3) - a), kTight);
    EXPECT_THROW(partial_trace_first(ab, 2, 2), DimensionError);
}

TEST(Linalg, HermitianSpectrumMatchesJacobi) {
    Rng rng(3);
    for (std::size_t n : {2u, 3u, 4u, 9u}) {
        const ComplexMatrix h = random_hermitian(n, rng);
        const RealVector ev = hermitian_eigenvalues(h);
        const auto ref = oracle::hermitian_eigenvalues(h);
        for (std::size_t k = 0; k < n; ++k)
            EXPECT_NEAR(ev(static_cast<Eigen::Index>(k)), ref[k], 1e-10);
    }
}

TEST(Linalg, EigenvectorsDiagonalize) {
    Rng rng(4);
    const ComplexMatrix h = random_hermitian(5, rng);
    const HermitianEigen es = hermitian_eigs(h);
    EXPECT_LT(max_abs(es.vectors.adjoint() * es.vectors - identity(5)), 1e-12);
    EXPECT_LT(max_abs(es.vectors * es.values.cast<Complex>().asDiagonal() * es.vectors.adjoint() - h), 1e-10);
    ComplexMatrix bad = h;
    bad(0, 1) += 1.0;
    EXPECT_THROW(hermitian_eigs(bad), NotHermitian);
}

TEST(Linalg, TraceNormMatchesOracle) {
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const ComplexMatrix h = random_hermitian(2, rng);
        EXPECT_NEAR(trace_norm(h), oracle::trace_norm(h), 1e-12);
        const ComplexMatrix g = complex_gaussian(3, 3, rng);
        EXPECT_NEAR(trace_norm(g), oracle::trace_norm(g), 1e-10);
    }
}

TEST(Linalg, TraceNormIsUnitarilyInvariant) {
    Rng rng(6);
    const ComplexMatrix x = complex_gaussian(4, 4, rng);
    const ComplexMatrix u = haar_unitary(4, rng);
    const ComplexMatrix v = haar_unitary(4, rng);
    EXPECT_NEAR(trace_norm(u * x * v), trace_norm(x), 1e-10);
}

TEST(Linalg, RotationExponential) {
    // exp(-i theta/2 s_k) = cos(theta/2) I - i sin(theta/2) s_k
    const Complex i(0.0, 1.0);
    for (double theta : {0.1, 1.0, 3.0, 10.0})
        for (int k = 1; k <= 3; ++k) {
            const ComplexMatrix ref = std::cos(theta / 2) * identity(2) - i * std::sin(theta / 2) * pauli(k);
            EXPECT_LT(max_abs(matrix_exp(-i * (theta / 2) * pauli(k)) - ref), 1e-13);
        }
}

TEST(Linalg, ExponentialMatchesTaylorOracle) {
    Rng rng(7);
    for (std::size_t n : {2u, 4u, 9u}) {
        const ComplexMatrix a = complex_gaussian(n, n, rng);
        const ComplexMatrix e = matrix_exp(a);
        EXPECT_LT(max_abs(e - oracle::expm(a)) / max_abs(e), 1e-12);
    }
}

TEST(Linalg, ExponentialProperties) {
    Rng rng(8);
    const ComplexMatrix a = complex_gaussian(3, 3, rng);
    EXPECT_LT(max_abs(matrix_exp(a) * matrix_exp(-a) - identity(3)), 1e-11);
    EXPECT_NEAR(std::abs(matrix_exp(a).determinant() - std::exp(a.trace())), 0.0,
                1e-10 * std::abs(std::exp(a.trace())));
    const ComplexMatrix h = random_hermitian(3, rng);
    EXPECT_TRUE(is_unitary(matrix_exp(Complex(0, 1) * h)));
}

TEST(Linalg, VectorizationIsColumnStacking) {
    Rng rng(9);
    const ComplexMatrix x = complex_gaussian(3, 3, rng);
    const ComplexVector v = vectorize(x);
    EXPECT_EQ(v(1), x(1, 0));
    EXPECT_EQ(v(3), x(0, 1));
    EXPECT_EQ(devectorize(v), x);
    EXPECT_THROW(devectorize(ComplexVector::Zero(5)), DimensionError);

    // vec(A X B) = (B^T (x) A) vec(X)
    const ComplexMatrix a = complex_gaussian(3, 3, rng);
    const ComplexMatrix b = complex_gaussian(3, 3, rng);
    const ComplexVector lhs = vectorize(a * x * b);
    const ComplexVector rhs = tensor(b.transpose(), a) * v;
    EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Linalg, DensityMatrixValidation) {
    EXPECT_NO_THROW(DensityMatrix::maximally_mixed(3));
    ComplexMatrix m(2, 2);
    m << 0.5, 0.0, 0.0, 0.6;
    EXPECT_THROW(DensityMatrix{m}, NotAState);
    m << 1.2, 0.0, 0.0, -0.2;
    EXPECT_THROW(DensityMatrix{m}, NotAState);
    m << 0.5, 0.1, 0.2, 0.5;
    EXPECT_THROW(DensityMatrix{m}, NotAState);
    EXPECT_THROW(DensityMatrix{ComplexMatrix::Zero(2, 3)}, DimensionError);
}

TEST(Linalg, BlochRoundTrip) {
    Rng rng(10);
    for (int trial = 0; trial < 20; ++trial) {
        const DensityMatrix rho = random_mixed_state(2, rng);
        const BlochVector b = state_to_bloch(rho.matrix());
        EXPECT_LE(b.norm(), 1.0 + 1e-12);
        EXPECT_LT(max_abs(bloch_to_state(b).matrix() - rho.matrix()), 1e-12);
    }
    EXPECT_THROW(bloch_to_state({1.0, 1.0, 0.0}), NotAState);
}

TEST(Linalg, TraceDistanceOfOrthogonalStates) {
    const DensityMatrix up = bloch_to_state({0, 0, 1});
    const DensityMatrix down = bloch_to_state({0, 0, -1});
    EXPECT_NEAR(trace_distance(up, down), 1.0, kTight);
    EXPECT_NEAR(trace_distance(up, up), 0.0, kTight);
    EXPECT_NEAR(trace_distance(up, DensityMatrix::maximally_mixed(2)), 0.5, kTight);
}

TEST(Random, SamplersAreDeterministicAndValid) {
    Rng a(11), b(11);
    EXPECT_EQ(haar_unitary(3, a), haar_unitary(3, b));
    Rng rng(12);
    for (int trial = 0; trial < 10; ++trial) {
        EXPECT_TRUE(is_unitary(haar_unitary(4, rng)));
        const ComplexMatrix rho = random_mixed_state(3, rng).matrix();
        EXPECT_GE(oracle::min_eigenvalue(rho), -1e-12);
        EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
        const ComplexMatrix psi = random_pure_state(3, rng).matrix();
        EXPECT_NEAR((psi * psi).trace().real(), 1.0, 1e-12);
    }
}
