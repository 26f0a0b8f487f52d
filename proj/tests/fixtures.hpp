// Shared scenario builders for the unit tests and the acceptance binary.

#pragma once

#include <numbers>

#include "qdmap/closed_forms.hpp"

namespace fixtures {

// Random Hamiltonian plus `jumps` random jump operators with nonnegative
// rates on [0, t_end]; every L_t is GKSL, so the dynamics is divisible.
inline qdmap::GkslSpec random_divisible_spec(std::size_t n, std::size_t jumps, double t_end, qdmap::Rng& rng) {
    qdmap::GkslSpec spec;
    spec.dim = n;
    spec.hamiltonian = qdmap::random_hermitian(n, rng);
    for (std::size_t k = 0; k < jumps; ++k)
        spec.jumps.push_back({qdmap::complex_gaussian(n, n, rng), qdmap::random_nonnegative_rate(rng, t_end)});
    return spec;
}

inline qdmap::Generator pure_decoherence(const qdmap::RateFunction& gamma) {
    return qdmap::as_generator(qdmap::pure_decoherence_spec(gamma));
}

inline qdmap::TimeGrid two_pi_grid() { return qdmap::TimeGrid(2.0 * std::numbers::pi, 6283); }

} // namespace fixtures
