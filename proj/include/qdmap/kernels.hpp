// kernels.hpp - the per-index scans behind the markovianity reports, each with
// a serial and an OpenMP path. Both paths fill the same output slots and
// produce bit-identical results.

#pragma once

#include <utility>
#include <vector>

#include "qdmap/channel.hpp"
#include "qdmap/execution.hpp"

namespace qdmap::kernels {

// Smallest Choi eigenvalue of every map.
std::vector<double> choi_min_eigenvalues(const std::vector<Superoperator>& maps, Exec exec = kDefaultExec);

std::vector<double> tp_defects(const std::vector<Superoperator>& maps, Exec exec = kDefaultExec);

// out[p][k] = 1/2 || maps[k](rho_p - sigma_p) ||_1
std::vector<std::vector<double>> pair_trace_distances(const std::vector<Superoperator>& maps,
                                                      const std::vector<std::pair<ComplexMatrix, ComplexMatrix>>& pairs,
                                                      Exec exec = kDefaultExec);

// out[x][k] = || (1 (x) maps[k])(X_x) ||_1 for Hermitian X_x on C^n (x) C^n.
std::vector<std::vector<double>> extended_trace_norms(const std::vector<Superoperator>& maps,
                                                      const std::vector<ComplexMatrix>& observables,
                                                      Exec exec = kDefaultExec);

} // namespace qdmap::kernels
