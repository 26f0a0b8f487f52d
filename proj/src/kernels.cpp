#include "qdmap/kernels.hpp"

#include <cstddef>

namespace qdmap::kernels {

namespace {

template <class F>
void for_each_index(std::size_t count, Exec exec, F&& body) {
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 8)
        for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(count); ++k)
            body(static_cast<std::size_t>(k));
    } else {
        for (std::size_t k = 0; k < count; ++k)
            body(k);
    }
}

double hermitian_trace_norm(const ComplexMatrix& a) { return trace_norm(0.5 * (a + a.adjoint())); }

} // namespace

std::vector<double> choi_min_eigenvalues(const std::vector<Superoperator>& maps, Exec exec) {
    std::vector<double> out(maps.size());
    for_each_index(maps.size(), exec, [&](std::size_t k) { out[k] = choi_min_eigenvalue(maps[k]); });
    return out;
}

std::vector<double> tp_defects(const std::vector<Superoperator>& maps, Exec exec) {
    std::vector<double> out(maps.size());
    for_each_index(maps.size(), exec, [&](std::size_t k) { out[k] = tp_defect(maps[k]); });
    return out;
}

std::vector<std::vector<double>> pair_trace_distances(const std::vector<Superoperator>& maps,
                                                      const std::vector<std::pair<ComplexMatrix, ComplexMatrix>>& pairs,
                                                      Exec exec) {
    std::vector<std::vector<double>> out(pairs.size(), std::vector<double>(maps.size()));
    for_each_index(pairs.size(), exec, [&](std::size_t p) {
        const ComplexMatrix diff = pairs[p].first - pairs[p].second;
        for (std::size_t k = 0; k < maps.size(); ++k)
            out[p][k] = 0.5 * hermitian_trace_norm(maps[k].apply(diff));
    });
    return out;
}

std::vector<std::vector<double>> extended_trace_norms(const std::vector<Superoperator>& maps,
                                                      const std::vector<ComplexMatrix>& observables, Exec exec) {
    std::vector<std::vector<double>> out(observables.size(), std::vector<double>(maps.size()));
    for_each_index(maps.size(), exec, [&](std::size_t k) {
        const Superoperator ext = tensor_superop(Superoperator::identity(maps[k].dim()), maps[k]);
        for (std::size_t x = 0; x < observables.size(); ++x)
            out[x][k] = hermitian_trace_norm(ext.apply(observables[x]));
    });
    return out;
}

} // namespace qdmap::kernels
