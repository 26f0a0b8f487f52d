// evolution.hpp - dynamical maps Lambda_t from time-local generators:
// exact semigroup exponential, commutative exp(int L), and the time-ordered
// midpoint-exponential integrator.

#pragma once

#include <cstddef>
#include <vector>

#include "qdmap/execution.hpp"
#include "qdmap/generator.hpp"

namespace qdmap {

// Uniform grid t_k = t0 + k h, k = 0..steps.
class TimeGrid {
public:
    TimeGrid(double t_end, std::size_t steps, double t0 = 0.0);

    // 1000 steps per unit time, at least one step.
    static TimeGrid with_default_resolution(double t_end);

    double t0() const noexcept { return t0_; }
    double t_end() const noexcept { return t_end_; }
    std::size_t steps() const noexcept { return steps_; }
    double h() const noexcept { return (t_end_ - t0_) / static_cast<double>(steps_); }
    double time(std::size_t k) const noexcept { return t0_ + static_cast<double>(k) * h(); }
    std::vector<double> times() const;

private:
    double t0_;
    double t_end_;
    std::size_t steps_;
};

// maps[0] is the identity and maps[k+1] = step_propagators[k] * maps[k].
struct Trajectory {
    TimeGrid grid;
    std::vector<Superoperator> maps;
    std::vector<Superoperator> step_propagators;

    std::size_t dim() const noexcept { return maps.empty() ? 0 : maps.front().dim(); }
};

Trajectory semigroup_evolve(const Superoperator& l, const TimeGrid& grid, Exec exec = kDefaultExec);

// Largest operator norm of [L_t, L_u] over sampled time pairs (deterministic).
double commutation_defect(const Generator& gen, const TimeGrid& grid, std::size_t pairs = 64);

struct CommutativeOptions {
    bool auto_check = true;
    double tol = 1e-10;
    std::size_t pairs = 64;
    double tol_quad = 1e-10;
};

// Lambda_t = exp(int_0^t L_u du). Throws NotCommutative when auto_check is on
// and the commutation defect exceeds tol.
Trajectory commutative_evolve(const Generator& gen, const TimeGrid& grid, const CommutativeOptions& opts = {},
                              Exec exec = kDefaultExec);

// V_{t+h,t} = exp(h L_{t+h/2}), composed left to right.
Trajectory t_ordered_evolve(const Generator& gen, const TimeGrid& grid, Exec exec = kDefaultExec);

// Adaptive Simpson quadrature of int_a^b L_u du in the entrywise max-norm.
Superoperator integrate_generator(const Generator& gen, double a, double b, double tol = 1e-10);

inline constexpr double kCondMax = 1e12;

// Finite-difference estimate of dLambda/dt * Lambda^{-1} at grid index k:
// central differences inside the grid, second-order one-sided at the ends.
// Throws SingularMap when cond(Lambda_{t_k}) exceeds cond_max.
Superoperator local_generator_from_trajectory(const Trajectory& traj, std::size_t k, double cond_max = kCondMax);

// Lambda_t Lambda_s^{-1} with the same condition-number guard.
Superoperator propagator_by_inversion(const Superoperator& lambda_t, const Superoperator& lambda_s,
                                      double cond_max = kCondMax);

double condition_number(const ComplexMatrix& a);

} // namespace qdmap
