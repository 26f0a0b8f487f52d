#include "qdmap/generator.hpp"

#include <algorithm>
#include <limits>

namespace qdmap {

void GkslSpec::validate(double tol_herm) const {
    const auto n = static_cast<Eigen::Index>(dim);
    if (dim == 0)
        throw DimensionError("GkslSpec: dimension must be positive");
    if (hamiltonian.rows() != n || hamiltonian.cols() != n)
        throw DimensionError("GkslSpec: Hamiltonian has wrong shape");
    if (!is_hermitian(hamiltonian, tol_herm))
        throw NotHermitian("GkslSpec: Hamiltonian is not Hermitian");
    for (std::size_t k = 0; k < jumps.size(); ++k)
        if (jumps[k].op.rows() != n || jumps[k].op.cols() != n)
            throw DimensionError("GkslSpec: jump operator " + std::to_string(k) + " has wrong shape");
}

Superoperator hamiltonian_superop(const ComplexMatrix& h) {
    const auto n = static_cast<std::size_t>(h.rows());
    const ComplexMatrix id = identity(n);
    const Complex mi(0.0, -1.0);
    return {n, mi * (tensor(id, h) - tensor(h.transpose(), id))};
}

Superoperator dissipator_superop(const ComplexMatrix& v) {
    const auto n = static_cast<std::size_t>(v.rows());
    const ComplexMatrix id = identity(n);
    const ComplexMatrix vv = v.adjoint() * v;
    return {n, tensor(v.conjugate(), v) - 0.5 * (tensor(id, vv) + tensor(vv.transpose(), id))};
}

Superoperator gksl_build(const GkslSpec& spec, double t) {
    Superoperator l = hamiltonian_superop(spec.hamiltonian);
    for (const auto& j : spec.jumps)
        l = l + j.rate(t) * dissipator_superop(j.op);
    return l;
}

Superoperator gksl_integral(const GkslSpec& spec, double t) {
    Superoperator z = t * hamiltonian_superop(spec.hamiltonian);
    for (const auto& j : spec.jumps)
        z = z + j.rate.primitive(t) * dissipator_superop(j.op);
    return z;
}

const char* condition_name(GkslCondition c) {
    switch (c) {
    case GkslCondition::None: return "none";
    case GkslCondition::HermiticityPreserving: return "hermiticity_preserving";
    case GkslCondition::TraceAnnihilating: return "trace_annihilating";
    case GkslCondition::ConditionallyCP: return "conditional_cp";
    }
    return "unknown";
}

GkslVerdict is_gksl(const Superoperator& l, double tol) {
    const std::size_t n = l.dim();
    const ComplexMatrix c = choi_of(l).matrix();

    const double herm_dev = max_abs(c - c.adjoint());
    if (herm_dev > tol)
        return {false, GkslCondition::HermiticityPreserving, herm_dev};

    const ComplexVector vi = vectorize(identity(n));
    const double trace_dev = (l.matrix().adjoint() * vi).cwiseAbs().maxCoeff();
    if (trace_dev > tol)
        return {false, GkslCondition::TraceAnnihilating, trace_dev};

    const ComplexMatrix q = identity(n * n) - max_entangled_projector(n);
    const ComplexMatrix compressed = q * c * q;
    const double lo = min_eigenvalue(compressed, std::numeric_limits<double>::infinity());
    if (lo < -tol)
        return {false, GkslCondition::ConditionallyCP, lo};
    return {true, GkslCondition::None, lo};
}

Superoperator dual_generator(const Superoperator& l) { return dual(l); }

Generator as_generator(const GkslSpec& spec) {
    spec.validate();
    Generator g;
    g.dim = spec.dim;
    g.at = [spec](double t) { return gksl_build(spec, t); };
    g.integral = [spec](double t) { return gksl_integral(spec, t); };
    g.time_independent =
        std::all_of(spec.jumps.begin(), spec.jumps.end(), [](const Jump& j) { return j.rate.is_constant(); });
    g.label = "gksl";
    return g;
}

Generator constant_generator(Superoperator l, std::string label) {
    Generator g;
    g.dim = l.dim();
    g.at = [l](double) { return l; };
    g.integral = [l](double t) { return t * l; };
    g.time_independent = true;
    g.label = std::move(label);
    return g;
}

} // namespace qdmap
