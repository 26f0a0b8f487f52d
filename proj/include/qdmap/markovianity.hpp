// markovianity.hpp - CP-divisibility, trace-distance (BLP) monotonicity,
// legitimacy of the map family, and the four-tier classification.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qdmap/evolution.hpp"

namespace qdmap {

struct MarkovTolerances {
    double div = 1e-7;       // step Choi eigenvalue
    double blp = 1e-7;       // trace-distance slope
    double cp = 1e-8;        // legitimacy
    double tp = 1e-9;        // legitimacy
    double constancy = 1e-10;
    double gksl = 1e-9;      // generator-sampling divisibility mode
};

struct DivisibilityReport {
    // Step k covers [times[k], times[k] + h].
    std::vector<double> times;
    std::vector<double> step_min_eig;
    bool divisible = true;
    std::optional<double> first_violation_time;
    double violation_eig = 0.0; // eigenvalue at the first violation
    double worst_eig = 0.0;
};

enum class PropagatorSource { StepPropagators, Inversion };

DivisibilityReport divisibility_report(const Trajectory& traj, double tol = 1e-7,
                                       PropagatorSource source = PropagatorSource::StepPropagators,
                                       Exec exec = kDefaultExec);

// Same verdict from is_gksl on L sampled at each step midpoint. The stored
// eigenvalue is the compressed-Choi minimum, or minus the deviation when the
// Hermiticity or trace condition fails.
DivisibilityReport divisibility_report(const Generator& gen, const TimeGrid& grid, double tol = 1e-9);

struct StatePair {
    ComplexMatrix rho;
    ComplexMatrix sigma;
};

// Half (random, random), half (random, maximally mixed); random states
// alternate between reduced dilation states and pure states. Qubits also get
// the antipodal pair (+x, -x) appended.
std::vector<StatePair> blp_sample_pairs(std::size_t n, std::size_t pairs, std::uint64_t seed);

struct Backflow {
    double time = 0.0; // left end of the offending step
    std::size_t pair = 0;
    double rate = 0.0;
};

struct BlpReport {
    std::size_t pairs = 0;
    std::vector<double> max_slope; // per pair, over the grid
    double worst_slope = 0.0;
    bool monotone = true;
    std::optional<Backflow> backflow; // earliest step, then lowest pair index
};

BlpReport blp_report(const Trajectory& traj, const std::vector<StatePair>& pairs, double tol = 1e-7,
                     Exec exec = kDefaultExec);
BlpReport blp_report(const Trajectory& traj, std::size_t pairs = 100, std::uint64_t seed = 42, double tol = 1e-7,
                     Exec exec = kDefaultExec);

enum class Legitimacy { CPTP, NotCP, NotTP };

const char* legitimacy_name(Legitimacy l);

struct LegitimacyPoint {
    double t = 0.0;
    Legitimacy status = Legitimacy::CPTP;
    double min_eig = 0.0;
    double tp_defect = 0.0;
};

struct LegitimacyReport {
    std::vector<LegitimacyPoint> points;
    bool legitimate = true;
    std::optional<std::size_t> first_failure;
    double worst_eig = 0.0;
};

LegitimacyReport legitimacy_report(const Trajectory& traj, double tol_cp = 1e-8, double tol_tp = 1e-9,
                                   Exec exec = kDefaultExec);

struct MonotonicityReport {
    std::size_t observables = 0;
    double worst_slope = 0.0;
    bool monotone = true;
};

// Slopes of ||(1 (x) Lambda_t)(X)||_1 for random Hermitian X on C^n (x) C^n.
MonotonicityReport observable_monotonicity_report(const Trajectory& traj, std::size_t observables = 50,
                                                  std::uint64_t seed = 42, double tol = 1e-7,
                                                  Exec exec = kDefaultExec);

enum class Tier { Illegitimate, LegitimateNonMarkovian, MarkovianDivisible, MarkovianSemigroup };

const char* tier_name(Tier t);

struct ClassificationVerdict {
    Tier tier = Tier::Illegitimate;
    LegitimacyReport legitimacy;
    std::optional<DivisibilityReport> divisibility; // absent when illegitimate
    std::optional<double> constancy_defect;          // absent unless divisible
};

// max_k || L_{t_k} - L_{t_0} ||_2
double constancy_defect(const Generator& gen, const TimeGrid& grid);

ClassificationVerdict classify(const Generator& gen, const Trajectory& traj, const MarkovTolerances& tols = {},
                               Exec exec = kDefaultExec);
// Builds the trajectory with t_ordered_evolve first.
ClassificationVerdict classify(const Generator& gen, const TimeGrid& grid, const MarkovTolerances& tols = {},
                               Exec exec = kDefaultExec);

} // namespace qdmap
