#include "qdmap/random.hpp"

#include <cmath>

namespace qdmap {

ComplexMatrix complex_gaussian(std::size_t rows, std::size_t cols, Rng& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    ComplexMatrix z(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index j = 0; j < z.cols(); ++j)
        for (Eigen::Index i = 0; i < z.rows(); ++i) {
            const double re = g(rng);
            const double im = g(rng);
            z(i, j) = Complex(re, im) / std::sqrt(2.0);
        }
    return z;
}

ComplexMatrix haar_unitary(std::size_t n, Rng& rng) {
    const ComplexMatrix z = complex_gaussian(n, n, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < q.cols(); ++k) {
        const Complex d = r(k, k);
        const double a = std::abs(d);
        if (a > 0.0)
            q.col(k) *= d / a;
    }
    return q;
}

ComplexVector random_pure_vector(std::size_t n, Rng& rng) {
    ComplexVector v = complex_gaussian(n, 1, rng).col(0);
    return v / v.norm();
}

DensityMatrix random_pure_state(std::size_t n, Rng& rng) {
    return DensityMatrix::pure(random_pure_vector(n, rng));
}

DensityMatrix random_mixed_state(std::size_t n, Rng& rng) {
    const ComplexVector psi = random_pure_vector(n * n, rng);
    const ComplexMatrix joint = psi * psi.adjoint();
    ComplexMatrix rho = partial_trace_second(joint, n, n);
    rho = 0.5 * (rho + rho.adjoint());
    rho /= rho.trace().real();
    return DensityMatrix(std::move(rho));
}

ComplexMatrix random_hermitian(std::size_t n, Rng& rng) {
    const ComplexMatrix z = complex_gaussian(n, n, rng);
    return 0.5 * (z + z.adjoint());
}

double uniform(Rng& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    return u(rng);
}

} // namespace qdmap
