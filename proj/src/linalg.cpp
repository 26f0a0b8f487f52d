#include "qdmap/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace qdmap {

namespace {

void require_square(const ComplexMatrix& a, const char* where) {
    if (a.rows() != a.cols()) {
        std::ostringstream os;
        os << where << ": expected a square matrix, got " << a.rows() << "x" << a.cols();
        throw DimensionError(os.str());
    }
}

} // namespace

ComplexMatrix identity(std::size_t n) {
    return ComplexMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}

ComplexMatrix elementary(std::size_t n, std::size_t i, std::size_t j) {
    if (i >= n || j >= n)
        throw DimensionError("elementary: index out of range");
    ComplexMatrix e = ComplexMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0;
    return e;
}

ComplexMatrix pauli(int k) {
    ComplexMatrix s(2, 2);
    const Complex i(0.0, 1.0);
    switch (k) {
    case 0: s << 1.0, 0.0, 0.0, 1.0; break;
    case 1: s << 0.0, 1.0, 1.0, 0.0; break;
    case 2: s << 0.0, -i, i, 0.0; break;
    case 3: s << 1.0, 0.0, 0.0, -1.0; break;
    default: throw DimensionError("pauli: index must be 0..3");
    }
    return s;
}

ComplexMatrix sigma_plus() {
    ComplexMatrix s = ComplexMatrix::Zero(2, 2);
    s(1, 0) = 1.0;
    return s;
}

ComplexMatrix sigma_minus() {
    ComplexMatrix s = ComplexMatrix::Zero(2, 2);
    s(0, 1) = 1.0;
    return s;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    return Eigen::kroneckerProduct(a, b).eval();
}

ComplexMatrix partial_trace_first(const ComplexMatrix& x, std::size_t n, std::size_t m) {
    const auto nm = static_cast<Eigen::Index>(n * m);
    if (x.rows() != nm || x.cols() != nm)
        throw DimensionError("partial_trace_first: matrix side must equal n*m");
    const auto mi = static_cast<Eigen::Index>(m);
    ComplexMatrix out = ComplexMatrix::Zero(mi, mi);
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(n); ++i)
        out += x.block(i * mi, i * mi, mi, mi);
    return out;
}

ComplexMatrix partial_trace_second(const ComplexMatrix& x, std::size_t n, std::size_t m) {
    const auto nm = static_cast<Eigen::Index>(n * m);
    if (x.rows() != nm || x.cols() != nm)
        throw DimensionError("partial_trace_second: matrix side must equal n*m");
    const auto ni = static_cast<Eigen::Index>(n);
    const auto mi = static_cast<Eigen::Index>(m);
    ComplexMatrix out = ComplexMatrix::Zero(ni, ni);
    for (Eigen::Index i = 0; i < ni; ++i)
        for (Eigen::Index j = 0; j < ni; ++j)
            out(i, j) = x.block(i * mi, j * mi, mi, mi).trace();
    return out;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b + b * a; }

bool is_square(const ComplexMatrix& a) noexcept { return a.rows() == a.cols(); }

bool is_hermitian(const ComplexMatrix& a, double tol) {
    if (!is_square(a))
        return false;
    return max_abs(a - a.adjoint()) <= tol;
}

bool is_unitary(const ComplexMatrix& u, double tol) {
    if (!is_square(u))
        return false;
    return max_abs(u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())) <= tol;
}

bool all_finite(const ComplexMatrix& a) noexcept { return a.allFinite(); }

double max_abs(const ComplexMatrix& a) {
    if (a.size() == 0)
        return 0.0;
    return a.cwiseAbs().maxCoeff();
}

RealVector singular_values(const ComplexMatrix& a) {
    Eigen::JacobiSVD<ComplexMatrix> svd(a);
    return svd.singularValues();
}

double operator_norm(const ComplexMatrix& a) {
    if (a.size() == 0)
        return 0.0;
    return singular_values(a)(0);
}

double trace_norm(const ComplexMatrix& a) {
    require_square(a, "trace_norm");
    if (is_hermitian(a, 0.0)) {
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a, Eigen::EigenvaluesOnly);
        return es.eigenvalues().cwiseAbs().sum();
    }
    return singular_values(a).sum();
}

HermitianEigen hermitian_eigs(const ComplexMatrix& a, double tol) {
    require_square(a, "hermitian_eigs");
    if (!is_hermitian(a, tol))
        throw NotHermitian("hermitian_eigs: matrix is not Hermitian within tolerance");
    // Symmetrize so that the solver sees an exactly Hermitian input.
    const ComplexMatrix h = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
    return {es.eigenvalues(), es.eigenvectors()};
}

RealVector hermitian_eigenvalues(const ComplexMatrix& a, double tol) {
    require_square(a, "hermitian_eigenvalues");
    if (!is_hermitian(a, tol))
        throw NotHermitian("hermitian_eigenvalues: matrix is not Hermitian within tolerance");
    const ComplexMatrix h = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

double min_eigenvalue(const ComplexMatrix& a, double tol) { return hermitian_eigenvalues(a, tol)(0); }

ComplexMatrix matrix_exp(const ComplexMatrix& a) {
    require_square(a, "matrix_exp");
    if (a.size() == 0)
        return a;
    return a.exp();
}

ComplexVector vectorize(const ComplexMatrix& a) {
    return Eigen::Map<const ComplexVector>(a.data(), a.size());
}

ComplexMatrix devectorize(const ComplexVector& v) {
    const auto len = v.size();
    const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(len))));
    if (n * n != len)
        throw DimensionError("devectorize: length " + std::to_string(len) + " is not a perfect square");
    return Eigen::Map<const ComplexMatrix>(v.data(), n, n);
}

double BlochVector::norm() const { return std::sqrt(x1 * x1 + x2 * x2 + x3 * x3); }

DensityMatrix::DensityMatrix(ComplexMatrix m, const Tolerances& tol) : m_(std::move(m)) {
    if (!is_square(m_) || m_.rows() == 0)
        throw DimensionError("DensityMatrix: expected a non-empty square matrix");
    if (!all_finite(m_))
        throw NotAState("DensityMatrix: non-finite entries");
    if (!is_hermitian(m_, tol.herm))
        throw NotAState("DensityMatrix: not Hermitian");
    if (std::abs(m_.trace() - Complex(1.0)) > tol.trace)
        throw NotAState("DensityMatrix: trace differs from 1");
    const double lo = min_eigenvalue(m_, tol.herm);
    if (lo < -tol.psd)
        throw NotAState("DensityMatrix: negative eigenvalue " + std::to_string(lo));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t n) {
    return DensityMatrix(identity(n) / static_cast<double>(n));
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
    const double nrm = psi.norm();
    if (nrm == 0.0)
        throw NotAState("DensityMatrix::pure: zero vector");
    const ComplexVector u = psi / nrm;
    return DensityMatrix(u * u.adjoint());
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim())
        throw DimensionError("trace_distance: dimension mismatch");
    return 0.5 * trace_norm(rho.matrix() - sigma.matrix());
}

DensityMatrix bloch_to_state(const BlochVector& v, double tol_psd) {
    if (v.norm() > 1.0 + tol_psd)
        throw NotAState("bloch_to_state: Bloch vector outside the unit ball");
    ComplexMatrix rho = 0.5 * (pauli(0) + v.x1 * pauli(1) + v.x2 * pauli(2) + v.x3 * pauli(3));
    Tolerances tol;
    tol.psd = tol_psd;
    return DensityMatrix(std::move(rho), tol);
}

BlochVector state_to_bloch(const ComplexMatrix& rho) {
    if (rho.rows() != 2 || rho.cols() != 2)
        throw DimensionError("state_to_bloch: qubit (2x2) matrix required");
    return {(rho * pauli(1)).trace().real(), (rho * pauli(2)).trace().real(),
            (rho * pauli(3)).trace().real()};
}

} // namespace qdmap
