// generator.hpp - GKSL generators: construction from a Hamiltonian plus
// rated jump operators, the Heisenberg-picture dual, and the three-condition
// legitimacy test for semigroup generators.

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qdmap/channel.hpp"
#include "qdmap/rate.hpp"

namespace qdmap {

struct Jump {
    ComplexMatrix op;
    RateFunction rate;
};

// H plus jump operators with attached rates. Rates may go negative; whether
// the resulting dynamics is legitimate is decided downstream.
struct GkslSpec {
    std::size_t dim = 0;
    ComplexMatrix hamiltonian;
    std::vector<Jump> jumps;

    // Throws DimensionError / NotHermitian on a malformed spec.
    void validate(double tol_herm = 1e-10) const;
};

// -i[H, .]
Superoperator hamiltonian_superop(const ComplexMatrix& h);
// V . V^dagger - 1/2 {V^dagger V, .}
Superoperator dissipator_superop(const ComplexMatrix& v);

Superoperator gksl_build(const GkslSpec& spec, double t);

// int_0^t L_u du, exact from the rate primitives.
Superoperator gksl_integral(const GkslSpec& spec, double t);

enum class GkslCondition { None, HermiticityPreserving, TraceAnnihilating, ConditionallyCP };

const char* condition_name(GkslCondition c);

struct GkslVerdict {
    bool gksl = false;
    GkslCondition failed = GkslCondition::None;
    // Deviation for the Hermiticity and trace checks; the most negative
    // eigenvalue of the compressed Choi matrix for the CCP check.
    double value = 0.0;

    explicit operator bool() const noexcept { return gksl; }
};

// (i) Hermiticity preserving, (ii) L*(I) = 0, (iii) Q C Q >= -tol where
// C = (1 (x) L)(P+) and Q = I - P+.
GkslVerdict is_gksl(const Superoperator& l, double tol = 1e-9);

Superoperator dual_generator(const Superoperator& l);

// A time-dependent generator t -> L_t. `integral`, when set, returns
// int_0^t L_u du exactly; engines fall back to quadrature otherwise.
struct Generator {
    std::size_t dim = 0;
    std::function<Superoperator(double)> at;
    std::function<Superoperator(double)> integral;
    bool time_independent = false;
    std::string label;
};

Generator as_generator(const GkslSpec& spec);
Generator constant_generator(Superoperator l, std::string label = "constant");

} // namespace qdmap
