// linalg.hpp - dense complex matrix foundation: Kronecker products, partial
// traces, spectral routines, trace norm, vectorization and exponentials.
//
// Vectorization is column-stacking throughout the library: vec(X)[i + j*n]
// = X(i, j), and the map X -> A X B has matrix transpose(B) (x) A.

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "qdmap/errors.hpp"

namespace qdmap {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Default tolerances; every routine taking a tolerance accepts an override.
struct Tolerances {
    double herm = 1e-10;
    double trace = 1e-10;
    double psd = 1e-9;
    double eig = 1e-10;
    double exp = 1e-12;
};

inline constexpr Tolerances kDefaultTol{};

// Elementary matrices and the qubit operators used across the library.
// sigma_plus follows the |2><1| convention (entry (1,0) in 0-based indexing).
ComplexMatrix identity(std::size_t n);
ComplexMatrix elementary(std::size_t n, std::size_t i, std::size_t j);
ComplexMatrix pauli(int k); // k = 0..3, sigma_0 = I
ComplexMatrix sigma_plus();
ComplexMatrix sigma_minus();

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

// Trace over the first (n-dimensional) factor of an (n*m)x(n*m) matrix.
ComplexMatrix partial_trace_first(const ComplexMatrix& x, std::size_t n, std::size_t m);
// Trace over the second (m-dimensional) factor.
ComplexMatrix partial_trace_second(const ComplexMatrix& x, std::size_t n, std::size_t m);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b);

bool is_square(const ComplexMatrix& a) noexcept;
bool is_hermitian(const ComplexMatrix& a, double tol = kDefaultTol.herm);
bool is_unitary(const ComplexMatrix& u, double tol = 1e-10);
bool all_finite(const ComplexMatrix& a) noexcept;

double max_abs(const ComplexMatrix& a); // entrywise max-norm
double operator_norm(const ComplexMatrix& a); // largest singular value
RealVector singular_values(const ComplexMatrix& a);

// Sum of singular values. Hermitian inputs take the eigenvalue route.
double trace_norm(const ComplexMatrix& a);

struct HermitianEigen {
    RealVector values; // ascending
    ComplexMatrix vectors; // columns are orthonormal eigenvectors
};

// Throws NotHermitian when a deviates from its adjoint by more than tol.
HermitianEigen hermitian_eigs(const ComplexMatrix& a, double tol = kDefaultTol.herm);
RealVector hermitian_eigenvalues(const ComplexMatrix& a, double tol = kDefaultTol.herm);
double min_eigenvalue(const ComplexMatrix& a, double tol = kDefaultTol.herm);

// Scaling-and-squaring Padé exponential.
ComplexMatrix matrix_exp(const ComplexMatrix& a);

ComplexVector vectorize(const ComplexMatrix& a);
ComplexMatrix devectorize(const ComplexVector& v);

struct BlochVector {
    double x1 = 0.0;
    double x2 = 0.0;
    double x3 = 0.0;

    double norm() const;
    friend bool operator==(const BlochVector&, const BlochVector&) = default;
};

// Validated quantum state: Hermitian, PSD and unit trace within tolerance.
class DensityMatrix {
public:
    explicit DensityMatrix(ComplexMatrix m, const Tolerances& tol = kDefaultTol);

    static DensityMatrix maximally_mixed(std::size_t n);
    static DensityMatrix pure(const ComplexVector& psi);

    std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
    const ComplexMatrix& matrix() const noexcept { return m_; }

private:
    ComplexMatrix m_;
};

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

DensityMatrix bloch_to_state(const BlochVector& v, double tol_psd = kDefaultTol.psd);
// Accepts any 2x2 matrix; components are Re Tr(rho sigma_k).
BlochVector state_to_bloch(const ComplexMatrix& rho);

} // namespace qdmap
