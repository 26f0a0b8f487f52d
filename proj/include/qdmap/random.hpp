// random.hpp - seeded samplers for states, unitaries and Hermitian operators.
// The generator is always passed by reference; nothing here keeps state.

#pragma once

#include <cstdint>
#include <random>

#include "qdmap/linalg.hpp"

namespace qdmap {

using Rng = std::mt19937_64;

ComplexMatrix complex_gaussian(std::size_t rows, std::size_t cols, Rng& rng);

// Haar measure via QR of a complex Ginibre matrix with the phases of R's
// diagonal divided out.
ComplexMatrix haar_unitary(std::size_t n, Rng& rng);

ComplexVector random_pure_vector(std::size_t n, Rng& rng);
DensityMatrix random_pure_state(std::size_t n, Rng& rng);

// Reduced state of a random pure state on C^n (x) C^n.
DensityMatrix random_mixed_state(std::size_t n, Rng& rng);

// Entries of the GUE scale; not normalized.
ComplexMatrix random_hermitian(std::size_t n, Rng& rng);

double uniform(Rng& rng, double lo, double hi);

} // namespace qdmap
