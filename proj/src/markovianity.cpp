#include "qdmap/markovianity.hpp"

#include <algorithm>
#include <limits>

#include "qdmap/kernels.hpp"
#include "qdmap/random.hpp"

namespace qdmap {

namespace {

DivisibilityReport summarize_steps(const TimeGrid& grid, std::vector<double> eigs, double tol) {
    DivisibilityReport r;
    r.times.resize(eigs.size());
    for (std::size_t k = 0; k < eigs.size(); ++k)
        r.times[k] = grid.time(k);
    r.worst_eig = eigs.empty() ? 0.0 : *std::min_element(eigs.begin(), eigs.end());
    for (std::size_t k = 0; k < eigs.size(); ++k)
        if (eigs[k] < -tol) {
            r.divisible = false;
            r.first_violation_time = r.times[k];
            r.violation_eig = eigs[k];
            break;
        }
    r.step_min_eig = std::move(eigs);
    return r;
}

} // namespace

DivisibilityReport divisibility_report(const Trajectory& traj, double tol, PropagatorSource source, Exec exec) {
    std::vector<Superoperator> props;
    if (source == PropagatorSource::StepPropagators) {
        props = traj.step_propagators;
    } else {
        props.reserve(traj.maps.size() - 1);
        for (std::size_t k = 0; k + 1 < traj.maps.size(); ++k)
            props.push_back(propagator_by_inversion(traj.maps[k + 1], traj.maps[k]));
    }
    return summarize_steps(traj.grid, kernels::choi_min_eigenvalues(props, exec), tol);
}

DivisibilityReport divisibility_report(const Generator& gen, const TimeGrid& grid, double tol) {
    std::vector<double> eigs(grid.steps());
    for (std::size_t k = 0; k < grid.steps(); ++k) {
        const GkslVerdict v = is_gksl(gen.at(grid.time(k) + 0.5 * grid.h()), tol);
        eigs[k] = v.failed == GkslCondition::ConditionallyCP || v.gksl ? v.value : -v.value;
    }
    return summarize_steps(grid, std::move(eigs), tol);
}

std::vector<StatePair> blp_sample_pairs(std::size_t n, std::size_t pairs, std::uint64_t seed) {
    Rng rng(seed);
    std::size_t drawn = 0;
    auto draw = [&]() -> ComplexMatrix {
        const bool mixed = (drawn++ % 2) == 0;
        return mixed ? random_mixed_state(n, rng).matrix() : random_pure_state(n, rng).matrix();
    };
    std::vector<StatePair> out;
    out.reserve(pairs + 1);
    const std::size_t half = pairs / 2;
    for (std::size_t p = 0; p < half; ++p) {
        ComplexMatrix a = draw();
        ComplexMatrix b = draw();
        out.push_back({std::move(a), std::move(b)});
    }
    for (std::size_t p = half; p < pairs; ++p)
        out.push_back({draw(), DensityMatrix::maximally_mixed(n).matrix()});
    if (n == 2)
        out.push_back({bloch_to_state({1.0, 0.0, 0.0}).matrix(), bloch_to_state({-1.0, 0.0, 0.0}).matrix()});
    return out;
}

BlpReport blp_report(const Trajectory& traj, const std::vector<StatePair>& pairs, double tol, Exec exec) {
    std::vector<std::pair<ComplexMatrix, ComplexMatrix>> raw;
    raw.reserve(pairs.size());
    for (const auto& p : pairs)
        raw.emplace_back(p.rho, p.sigma);
    const auto dist = kernels::pair_trace_distances(traj.maps, raw, exec);
    const double h = traj.grid.h();

    BlpReport r;
    r.pairs = pairs.size();
    r.max_slope.assign(pairs.size(), -std::numeric_limits<double>::infinity());
    r.worst_slope = -std::numeric_limits<double>::infinity();
    const std::size_t steps = traj.maps.size() - 1;
    for (std::size_t k = 0; k < steps; ++k)
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            const double slope = (dist[p][k + 1] - dist[p][k]) / h;
            r.max_slope[p] = std::max(r.max_slope[p], slope);
            r.worst_slope = std::max(r.worst_slope, slope);
            if (slope > tol && !r.backflow)
                r.backflow = Backflow{traj.grid.time(k), p, slope};
        }
    r.monotone = !r.backflow.has_value();
    return r;
}

BlpReport blp_report(const Trajectory& traj, std::size_t pairs, std::uint64_t seed, double tol, Exec exec) {
    return blp_report(traj, blp_sample_pairs(traj.dim(), pairs, seed), tol, exec);
}

const char* legitimacy_name(Legitimacy l) {
    switch (l) {
    case Legitimacy::CPTP: return "CPTP";
    case Legitimacy::NotCP: return "NotCP";
    case Legitimacy::NotTP: return "NotTP";
    }
    return "unknown";
}

LegitimacyReport legitimacy_report(const Trajectory& traj, double tol_cp, double tol_tp, Exec exec) {
    const auto eigs = kernels::choi_min_eigenvalues(traj.maps, exec);
    const auto defects = kernels::tp_defects(traj.maps, exec);
    LegitimacyReport r;
    r.points.resize(traj.maps.size());
    r.worst_eig = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < traj.maps.size(); ++k) {
        auto& pt = r.points[k];
        pt.t = traj.grid.time(k);
        pt.min_eig = eigs[k];
        pt.tp_defect = defects[k];
        if (eigs[k] < -tol_cp)
            pt.status = Legitimacy::NotCP;
        else if (defects[k] > tol_tp)
            pt.status = Legitimacy::NotTP;
        r.worst_eig = std::min(r.worst_eig, eigs[k]);
        if (pt.status != Legitimacy::CPTP && !r.first_failure)
            r.first_failure = k;
    }
    r.legitimate = !r.first_failure.has_value();
    return r;
}

MonotonicityReport observable_monotonicity_report(const Trajectory& traj, std::size_t observables,
                                                  std::uint64_t seed, double tol, Exec exec) {
    Rng rng(seed);
    const std::size_t n = traj.dim();
    std::vector<ComplexMatrix> xs;
    xs.reserve(observables);
    for (std::size_t x = 0; x < observables; ++x)
        xs.push_back(random_hermitian(n * n, rng));
    const auto norms = kernels::extended_trace_norms(traj.maps, xs, exec);
    const double h = traj.grid.h();

    MonotonicityReport r;
    r.observables = observables;
    r.worst_slope = -std::numeric_limits<double>::infinity();
    for (const auto& series : norms)
        for (std::size_t k = 0; k + 1 < series.size(); ++k)
            r.worst_slope = std::max(r.worst_slope, (series[k + 1] - series[k]) / h);
    r.monotone = r.worst_slope <= tol;
    return r;
}

const char* tier_name(Tier t) {
    switch (t) {
    case Tier::Illegitimate: return "ILLEGITIMATE";
    case Tier::LegitimateNonMarkovian: return "LEGITIMATE_NON_MARKOVIAN";
    case Tier::MarkovianDivisible: return "MARKOVIAN_DIVISIBLE";
    case Tier::MarkovianSemigroup: return "MARKOVIAN_SEMIGROUP";
    }
    return "unknown";
}

double constancy_defect(const Generator& gen, const TimeGrid& grid) {
    const Superoperator l0 = gen.at(grid.t0());
    double worst = 0.0;
    for (std::size_t k = 1; k <= grid.steps(); ++k)
        worst = std::max(worst, operator_norm((gen.at(grid.time(k)) - l0).matrix()));
    return worst;
}

ClassificationVerdict classify(const Generator& gen, const Trajectory& traj, const MarkovTolerances& tols,
                               Exec exec) {
    ClassificationVerdict v;
    v.legitimacy = legitimacy_report(traj, tols.cp, tols.tp, exec);
    if (!v.legitimacy.legitimate) {
        v.tier = Tier::Illegitimate;
        return v;
    }
    v.divisibility = divisibility_report(traj, tols.div, PropagatorSource::StepPropagators, exec);
    if (!v.divisibility->divisible) {
        v.tier = Tier::LegitimateNonMarkovian;
        return v;
    }
    v.constancy_defect = constancy_defect(gen, traj.grid);
    v.tier = *v.constancy_defect < tols.constancy ? Tier::MarkovianSemigroup : Tier::MarkovianDivisible;
    return v;
}

ClassificationVerdict classify(const Generator& gen, const TimeGrid& grid, const MarkovTolerances& tols, Exec exec) {
    return classify(gen, t_ordered_evolve(gen, grid, exec), tols, exec);
}

} // namespace qdmap
