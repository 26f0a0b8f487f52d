// channel.hpp - linear maps on M_n as values: superoperator, Choi and Kraus
// representations, CP/TP/unital tests, duality, unitary dilations and the
// standard example maps.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "qdmap/execution.hpp"
#include "qdmap/linalg.hpp"
#include "qdmap/random.hpp"

namespace qdmap {

// Matrix of a linear map M_n -> M_n acting on column-stacked vectors.
class Superoperator {
public:
    Superoperator() = default;
    Superoperator(std::size_t n, ComplexMatrix m);

    static Superoperator identity(std::size_t n);
    static Superoperator zero(std::size_t n);
    // X -> a X b
    static Superoperator sandwich(const ComplexMatrix& a, const ComplexMatrix& b);

    // Tabulates an arbitrary linear action on the basis e_ij.
    template <class F>
    static Superoperator from_action(std::size_t n, F&& action) {
        const auto ni = static_cast<Eigen::Index>(n);
        ComplexMatrix m(ni * ni, ni * ni);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) {
                const ComplexMatrix img = action(elementary(n, i, j));
                m.col(static_cast<Eigen::Index>(i + j * n)) = vectorize(img);
            }
        return Superoperator(n, std::move(m));
    }

    std::size_t dim() const noexcept { return n_; }
    const ComplexMatrix& matrix() const noexcept { return m_; }

    ComplexMatrix apply(const ComplexMatrix& x) const;

    // Composition: (a * b)(X) = a(b(X)).
    friend Superoperator operator*(const Superoperator& a, const Superoperator& b);
    friend Superoperator operator+(const Superoperator& a, const Superoperator& b);
    friend Superoperator operator-(const Superoperator& a, const Superoperator& b);
    friend Superoperator operator*(double s, const Superoperator& a);
    friend Superoperator operator*(Complex s, const Superoperator& a);

private:
    std::size_t n_ = 0;
    ComplexMatrix m_;
};

ComplexMatrix apply(const Superoperator& phi, const ComplexMatrix& x);

Superoperator superop_commutator(const Superoperator& a, const Superoperator& b);

// (1_n (x) Phi)(P+_n) with Tr P+_n = 1.
class ChoiMatrix {
public:
    ChoiMatrix(std::size_t n, ComplexMatrix m);

    std::size_t dim() const noexcept { return n_; }
    const ComplexMatrix& matrix() const noexcept { return m_; }

private:
    std::size_t n_;
    ComplexMatrix m_;
};

ComplexMatrix max_entangled_projector(std::size_t n); // P+_n

ChoiMatrix choi_of(const Superoperator& phi);
Superoperator superop_from_choi(const ChoiMatrix& c);

bool is_hermiticity_preserving(const Superoperator& phi, double tol = 1e-10);

struct CpVerdict {
    bool cp = false;
    double min_eig = 0.0; // smallest eigenvalue of the Choi matrix

    explicit operator bool() const noexcept { return cp; }
};

// CP iff the Choi matrix has no eigenvalue below -tol. Throws
// NotHermiticityPreserving when the Choi matrix is not Hermitian.
CpVerdict is_cp(const Superoperator& phi, double tol = 1e-9);
double choi_min_eigenvalue(const Superoperator& phi);

bool is_tp(const Superoperator& phi, double tol = 1e-10);
bool is_unital(const Superoperator& phi, double tol = 1e-10);
double tp_defect(const Superoperator& phi); // max |Tr Phi(e_ij) - delta_ij|

// Hilbert-Schmidt adjoint: Tr[A^dagger Phi*(B)] = Tr[Phi(A)^dagger B].
Superoperator dual(const Superoperator& phi);

struct KrausSet {
    std::vector<ComplexMatrix> operators;

    std::size_t rank() const noexcept { return operators.size(); }
};

// K_a = sqrt(n * lambda_a) devec(v_a); eigenvalues <= tol are dropped.
// Throws NotCP when the Choi matrix has an eigenvalue below -tol.
KrausSet kraus_from_choi(const ChoiMatrix& c, double tol = 1e-10);
ChoiMatrix choi_from_kraus(const KrausSet& k);
Superoperator superop_from_kraus(const KrausSet& k);

// Phi(rho) = tr_E[U (rho (x) omega) U^dagger], system first, environment second.
Superoperator dilation_channel(const ComplexMatrix& u, const DensityMatrix& omega);
KrausSet dilation_kraus(const ComplexMatrix& u, const DensityMatrix& omega);

// Haar unitary on C^n (x) C^n, environment in |0><0|.
Superoperator random_cptp(std::size_t n, Rng& rng);

// Tensor product of maps on M_n (x) M_m.
Superoperator tensor_superop(const Superoperator& a, const Superoperator& b);

Superoperator transpose_map(std::size_t n);
Superoperator reduction_map(std::size_t n);
Superoperator diagonal_projector(std::size_t n);
Superoperator random_unitary_mix(std::span<const double> probabilities,
                                 std::span<const ComplexMatrix> unitaries);

struct PositivityVerdict {
    // false means NoCounterexampleFound, which does not certify positivity.
    bool counterexample = false;
    double min_eig = 0.0; // lowest eigenvalue of Phi(|x><x|) seen
    ComplexVector witness; // the unit vector |x> achieving min_eig
};

struct RefuteOptions {
    std::size_t samples = 200; // 10 * samples Nelder-Mead restarts
    std::uint64_t seed = 42;
    double tol = 1e-9;
    Exec exec = kDefaultExec;
};

PositivityVerdict positivity_refute(const Superoperator& phi, const RefuteOptions& opts = {});

} // namespace qdmap
