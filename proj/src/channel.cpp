#include "qdmap/channel.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "nelder_mead.hpp"

namespace qdmap {

Superoperator::Superoperator(std::size_t n, ComplexMatrix m) : n_(n), m_(std::move(m)) {
    const auto side = static_cast<Eigen::Index>(n * n);
    if (m_.rows() != side || m_.cols() != side) {
        std::ostringstream os;
        os << "Superoperator: expected " << side << "x" << side << " matrix for n=" << n << ", got "
           << m_.rows() << "x" << m_.cols();
        throw DimensionError(os.str());
    }
}

Superoperator Superoperator::identity(std::size_t n) { return {n, qdmap::identity(n * n)}; }

Superoperator Superoperator::zero(std::size_t n) {
    const auto side = static_cast<Eigen::Index>(n * n);
    return {n, ComplexMatrix::Zero(side, side)};
}

Superoperator Superoperator::sandwich(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (!is_square(a) || !is_square(b) || a.rows() != b.rows())
        throw DimensionError("Superoperator::sandwich: operands must be square and of equal size");
    return {static_cast<std::size_t>(a.rows()), tensor(b.transpose(), a)};
}

ComplexMatrix Superoperator::apply(const ComplexMatrix& x) const {
    const auto ni = static_cast<Eigen::Index>(n_);
    if (x.rows() != ni || x.cols() != ni)
        throw DimensionError("Superoperator::apply: operand dimension mismatch");
    const ComplexVector out = m_ * vectorize(x);
    return devectorize(out);
}

namespace {

void require_same_dim(const Superoperator& a, const Superoperator& b, const char* where) {
    if (a.dim() != b.dim())
        throw DimensionError(std::string(where) + ": superoperator dimension mismatch");
}

} // namespace

Superoperator operator*(const Superoperator& a, const Superoperator& b) {
    require_same_dim(a, b, "compose");
    return {a.n_, a.m_ * b.m_};
}

Superoperator operator+(const Superoperator& a, const Superoperator& b) {
    require_same_dim(a, b, "add");
    return {a.n_, a.m_ + b.m_};
}

Superoperator operator-(const Superoperator& a, const Superoperator& b) {
    require_same_dim(a, b, "subtract");
    return {a.n_, a.m_ - b.m_};
}

Superoperator operator*(double s, const Superoperator& a) { return {a.n_, s * a.m_}; }

Superoperator operator*(Complex s, const Superoperator& a) { return {a.n_, s * a.m_}; }

ComplexMatrix apply(const Superoperator& phi, const ComplexMatrix& x) { return phi.apply(x); }

Superoperator superop_commutator(const Superoperator& a, const Superoperator& b) {
    return a * b - b * a;
}

ChoiMatrix::ChoiMatrix(std::size_t n, ComplexMatrix m) : n_(n), m_(std::move(m)) {
    const auto side = static_cast<Eigen::Index>(n * n);
    if (m_.rows() != side || m_.cols() != side)
        throw DimensionError("ChoiMatrix: expected an n^2 x n^2 matrix");
}

ComplexMatrix max_entangled_projector(std::size_t n) {
    const auto ni = static_cast<Eigen::Index>(n);
    ComplexVector psi = ComplexVector::Zero(ni * ni);
    for (Eigen::Index k = 0; k < ni; ++k)
        psi(k * ni + k) = 1.0;
    psi /= std::sqrt(static_cast<double>(n));
    return psi * psi.adjoint();
}

ChoiMatrix choi_of(const Superoperator& phi) {
    const std::size_t n = phi.dim();
    const auto ni = static_cast<Eigen::Index>(n);
    ComplexMatrix c(ni * ni, ni * ni);
    for (Eigen::Index j = 0; j < ni; ++j)
        for (Eigen::Index i = 0; i < ni; ++i) {
            const ComplexVector col = phi.matrix().col(i + j * ni);
            c.block(i * ni, j * ni, ni, ni) = devectorize(col);
        }
    c /= static_cast<double>(n);
    return {n, std::move(c)};
}

Superoperator superop_from_choi(const ChoiMatrix& c) {
    const std::size_t n = c.dim();
    const auto ni = static_cast<Eigen::Index>(n);
    ComplexMatrix m(ni * ni, ni * ni);
    for (Eigen::Index j = 0; j < ni; ++j)
        for (Eigen::Index i = 0; i < ni; ++i) {
            const ComplexMatrix blk = static_cast<double>(n) * c.matrix().block(i * ni, j * ni, ni, ni);
            m.col(i + j * ni) = vectorize(blk);
        }
    return {n, std::move(m)};
}

bool is_hermiticity_preserving(const Superoperator& phi, double tol) {
    return is_hermitian(choi_of(phi).matrix(), tol);
}

double choi_min_eigenvalue(const Superoperator& phi) {
    const ChoiMatrix c = choi_of(phi);
    return min_eigenvalue(c.matrix(), std::numeric_limits<double>::infinity());
}

CpVerdict is_cp(const Superoperator& phi, double tol) {
    const ChoiMatrix c = choi_of(phi);
    if (!is_hermitian(c.matrix(), 1e-10))
        throw NotHermiticityPreserving("is_cp: map does not preserve Hermiticity");
    const double lo = min_eigenvalue(c.matrix(), 1e-10);
    return {lo >= -tol, lo};
}

namespace {

ComplexVector vec_identity(std::size_t n) { return vectorize(identity(n)); }

} // namespace

double tp_defect(const Superoperator& phi) {
    const ComplexVector vi = vec_identity(phi.dim());
    // Row vector of traces: Tr Phi(e_ij) for every basis column.
    const ComplexVector traces = phi.matrix().transpose() * vi;
    return (traces - vi).cwiseAbs().maxCoeff();
}

bool is_tp(const Superoperator& phi, double tol) { return tp_defect(phi) <= tol; }

bool is_unital(const Superoperator& phi, double tol) {
    const ComplexVector vi = vec_identity(phi.dim());
    return (phi.matrix() * vi - vi).cwiseAbs().maxCoeff() <= tol;
}

Superoperator dual(const Superoperator& phi) { return {phi.dim(), phi.matrix().adjoint()}; }

KrausSet kraus_from_choi(const ChoiMatrix& c, double tol) {
    const HermitianEigen es = hermitian_eigs(c.matrix(), 1e-10);
    if (es.values(0) < -tol)
        throw NotCP("kraus_from_choi: Choi matrix is not positive semidefinite", es.values(0));
    const double n = static_cast<double>(c.dim());
    KrausSet out;
    // Largest weight first.
    for (Eigen::Index k = es.values.size() - 1; k >= 0; --k) {
        const double lam = es.values(k);
        if (lam <= tol)
            continue;
        const ComplexVector v = es.vectors.col(k);
        out.operators.push_back(std::sqrt(n * lam) * devectorize(v));
    }
    return out;
}

Superoperator superop_from_kraus(const KrausSet& k) {
    if (k.operators.empty())
        throw DimensionError("superop_from_kraus: empty Kraus set");
    const auto n = static_cast<std::size_t>(k.operators.front().rows());
    Superoperator out = Superoperator::zero(n);
    for (const auto& op : k.operators)
        out = out + Superoperator::sandwich(op, op.adjoint());
    return out;
}

ChoiMatrix choi_from_kraus(const KrausSet& k) { return choi_of(superop_from_kraus(k)); }

namespace {

std::size_t system_dim(const ComplexMatrix& u, const DensityMatrix& omega) {
    if (!is_square(u))
        throw DimensionError("dilation: unitary must be square");
    const auto side = static_cast<std::size_t>(u.rows());
    const std::size_t m = omega.dim();
    if (side % m != 0)
        throw DimensionError("dilation: unitary side is not a multiple of the environment dimension");
    if (!is_unitary(u, 1e-10))
        throw NotUnitary("dilation: operator is not unitary");
    return side / m;
}

} // namespace

Superoperator dilation_channel(const ComplexMatrix& u, const DensityMatrix& omega) {
    const std::size_t n = system_dim(u, omega);
    const std::size_t m = omega.dim();
    return Superoperator::from_action(n, [&](const ComplexMatrix& x) {
        const ComplexMatrix joint = u * tensor(x, omega.matrix()) * u.adjoint();
        return partial_trace_second(joint, n, m);
    });
}

KrausSet dilation_kraus(const ComplexMatrix& u, const DensityMatrix& omega) {
    const std::size_t n = system_dim(u, omega);
    const std::size_t m = omega.dim();
    const auto ni = static_cast<Eigen::Index>(n);
    const HermitianEigen es = hermitian_eigs(omega.matrix());
    const ComplexMatrix basis = tensor(identity(n), es.vectors);
    // U expressed in the environment eigenbasis; block (a, b) of the
    // environment index is U_ab = (1 (x) <E_a|) U (1 (x) |E_b>).
    const ComplexMatrix ub = basis.adjoint() * u * basis;
    KrausSet out;
    for (std::size_t b = 0; b < m; ++b) {
        const double lam = es.values(static_cast<Eigen::Index>(b));
        if (lam <= 0.0)
            continue;
        for (std::size_t a = 0; a < m; ++a) {
            ComplexMatrix k(ni, ni);
            for (Eigen::Index i = 0; i < ni; ++i)
                for (Eigen::Index j = 0; j < ni; ++j)
                    k(i, j) = ub(i * static_cast<Eigen::Index>(m) + static_cast<Eigen::Index>(a),
                                 j * static_cast<Eigen::Index>(m) + static_cast<Eigen::Index>(b));
            out.operators.push_back(std::sqrt(lam) * k);
        }
    }
    return out;
}

Superoperator random_cptp(std::size_t n, Rng& rng) {
    const ComplexMatrix u = haar_unitary(n * n, rng);
    ComplexMatrix env = ComplexMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    env(0, 0) = 1.0;
    return dilation_channel(u, DensityMatrix(env));
}

Superoperator tensor_superop(const Superoperator& a, const Superoperator& b) {
    const std::size_t n = a.dim();
    const std::size_t m = b.dim();
    const std::size_t nm = n * m;
    const auto side = static_cast<Eigen::Index>(nm * nm);
    ComplexMatrix out(side, side);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            const ComplexMatrix ai = a.apply(elementary(n, i, j));
            for (std::size_t l = 0; l < m; ++l)
                for (std::size_t k = 0; k < m; ++k) {
                    const ComplexMatrix img = tensor(ai, b.apply(elementary(m, k, l)));
                    const std::size_t row = i * m + k;
                    const std::size_t col = j * m + l;
                    out.col(static_cast<Eigen::Index>(row + col * nm)) = vectorize(img);
                }
        }
    return {nm, std::move(out)};
}

Superoperator transpose_map(std::size_t n) {
    return Superoperator::from_action(n, [](const ComplexMatrix& x) -> ComplexMatrix { return x.transpose(); });
}

Superoperator reduction_map(std::size_t n) {
    if (n < 2)
        throw DimensionError("reduction_map: n must be at least 2");
    const double scale = 1.0 / static_cast<double>(n - 1);
    return Superoperator::from_action(n, [&](const ComplexMatrix& x) -> ComplexMatrix {
        return scale * (identity(n) * x.trace() - x);
    });
}

Superoperator diagonal_projector(std::size_t n) {
    return Superoperator::from_action(n, [](const ComplexMatrix& x) -> ComplexMatrix {
        return x.diagonal().asDiagonal();
    });
}

Superoperator random_unitary_mix(std::span<const double> probabilities,
                                 std::span<const ComplexMatrix> unitaries) {
    if (probabilities.empty() || probabilities.size() != unitaries.size())
        throw BadProbabilityVector("random_unitary_mix: need one probability per unitary");
    double total = 0.0;
    for (double p : probabilities) {
        if (!(p >= 0.0))
            throw BadProbabilityVector("random_unitary_mix: negative probability");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw BadProbabilityVector("random_unitary_mix: probabilities do not sum to 1");
    const auto n = static_cast<std::size_t>(unitaries.front().rows());
    Superoperator out = Superoperator::zero(n);
    for (std::size_t k = 0; k < unitaries.size(); ++k) {
        const ComplexMatrix& u = unitaries[k];
        if (static_cast<std::size_t>(u.rows()) != n || !is_unitary(u, 1e-10))
            throw NotUnitary("random_unitary_mix: operator " + std::to_string(k) + " is not unitary");
        out = out + probabilities[k] * Superoperator::sandwich(u, u.adjoint());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Positivity refutation

namespace {

struct Restart {
    double value = std::numeric_limits<double>::infinity();
    ComplexVector psi;
};

ComplexVector unpack(const std::vector<double>& p, std::size_t n) {
    ComplexVector v(static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < n; ++k)
        v(static_cast<Eigen::Index>(k)) = Complex(p[2 * k], p[2 * k + 1]);
    return v;
}

double min_output_eig(const Superoperator& phi, const ComplexVector& psi) {
    const double nrm = psi.norm();
    if (!(nrm > 1e-12))
        return std::numeric_limits<double>::infinity();
    const ComplexVector u = psi / nrm;
    const ComplexMatrix out = phi.apply(u * u.adjoint());
    return min_eigenvalue(0.5 * (out + out.adjoint()), std::numeric_limits<double>::infinity());
}

Restart run_restart(const Superoperator& phi, std::uint64_t seed, std::size_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    Rng rng(seq);
    const std::size_t n = phi.dim();
    const ComplexVector start = random_pure_vector(n, rng);
    std::vector<double> p(2 * n);
    for (std::size_t k = 0; k < n; ++k) {
        p[2 * k] = start(static_cast<Eigen::Index>(k)).real();
        p[2 * k + 1] = start(static_cast<Eigen::Index>(k)).imag();
    }
    auto objective = [&](const std::vector<double>& x) { return min_output_eig(phi, unpack(x, n)); };
    const auto res = detail::nelder_mead(objective, p, 0.25, 150 * 2 * n, 1e-13);
    ComplexVector psi = unpack(res.x, n);
    psi /= psi.norm();
    return {res.value, psi};
}

} // namespace

PositivityVerdict positivity_refute(const Superoperator& phi, const RefuteOptions& opts) {
    if (!is_hermiticity_preserving(phi))
        throw NotHermiticityPreserving("positivity_refute: map does not preserve Hermiticity");
    const std::size_t total = 10 * opts.samples;
    constexpr std::size_t kBlock = 64;

    PositivityVerdict verdict;
    verdict.min_eig = std::numeric_limits<double>::infinity();
    std::vector<Restart> block(kBlock);
    for (std::size_t begin = 0; begin < total; begin += kBlock) {
        const std::size_t count = std::min(kBlock, total - begin);
        if (opts.exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
            for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(count); ++k)
                block[static_cast<std::size_t>(k)] = run_restart(phi, opts.seed, begin + static_cast<std::size_t>(k));
        } else {
            for (std::size_t k = 0; k < count; ++k)
                block[k] = run_restart(phi, opts.seed, begin + k);
        }
        // Lowest restart index wins so the verdict is independent of threading.
        for (std::size_t k = 0; k < count; ++k) {
            if (block[k].value < verdict.min_eig) {
                verdict.min_eig = block[k].value;
                verdict.witness = block[k].psi;
            }
            if (block[k].value < -opts.tol) {
                verdict.counterexample = true;
                verdict.min_eig = block[k].value;
                verdict.witness = block[k].psi;
                return verdict;
            }
        }
    }
    return verdict;
}

} // namespace qdmap
