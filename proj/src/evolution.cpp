#include "qdmap/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "quadrature.hpp"

namespace qdmap {

TimeGrid::TimeGrid(double t_end, std::size_t steps, double t0) : t0_(t0), t_end_(t_end), steps_(steps) {
    if (steps_ < 1)
        throw Error("TimeGrid: steps must be >= 1");
    if (!(t_end_ > t0_) || !std::isfinite(t_end_) || !std::isfinite(t0_))
        throw Error("TimeGrid: t_end must be finite and greater than t0");
}

TimeGrid TimeGrid::with_default_resolution(double t_end) {
    const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(1000.0 * t_end)));
    return {t_end, steps};
}

std::vector<double> TimeGrid::times() const {
    std::vector<double> out(steps_ + 1);
    for (std::size_t k = 0; k <= steps_; ++k)
        out[k] = time(k);
    return out;
}

namespace {

Trajectory compose(const TimeGrid& grid, std::vector<Superoperator> steps, std::size_t n) {
    Trajectory traj{grid, {}, std::move(steps)};
    traj.maps.reserve(grid.steps() + 1);
    traj.maps.push_back(Superoperator::identity(n));
    for (const auto& v : traj.step_propagators)
        traj.maps.push_back(v * traj.maps.back());
    return traj;
}

template <class F>
std::vector<Superoperator> build_steps(std::size_t count, Exec exec, F&& make) {
    std::vector<Superoperator> out(count);
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(count); ++k)
            out[static_cast<std::size_t>(k)] = make(static_cast<std::size_t>(k));
    } else {
        for (std::size_t k = 0; k < count; ++k)
            out[k] = make(k);
    }
    return out;
}

Superoperator exp_superop(const Superoperator& l) { return {l.dim(), matrix_exp(l.matrix())}; }

} // namespace

Trajectory semigroup_evolve(const Superoperator& l, const TimeGrid& grid, Exec) {
    const Superoperator step = exp_superop(grid.h() * l);
    std::vector<Superoperator> steps(grid.steps(), step);
    return compose(grid, std::move(steps), l.dim());
}

double commutation_defect(const Generator& gen, const TimeGrid& grid, std::size_t pairs) {
    std::vector<std::pair<double, double>> samples;
    samples.emplace_back(grid.t0(), grid.t_end());
    samples.emplace_back(grid.time(grid.steps() / 2), grid.t_end());
    std::mt19937_64 rng(0x5eedULL);
    std::uniform_real_distribution<double> u(grid.t0(), grid.t_end());
    while (samples.size() < std::max<std::size_t>(pairs, 2)) {
        const double a = u(rng);
        const double b = u(rng);
        samples.emplace_back(a, b);
    }
    double worst = 0.0;
    for (const auto& [t, s] : samples) {
        const Superoperator c = superop_commutator(gen.at(t), gen.at(s));
        worst = std::max(worst, operator_norm(c.matrix()));
    }
    return worst;
}

Superoperator integrate_generator(const Generator& gen, double a, double b, double tol) {
    return detail::adaptive_simpson<Superoperator>(
        [&](double t) { return gen.at(t); }, a, b, tol, [](const Superoperator& d) { return max_abs(d.matrix()); },
        Superoperator::zero(gen.dim), detail::panels_for(a, b));
}

Trajectory commutative_evolve(const Generator& gen, const TimeGrid& grid, const CommutativeOptions& opts,
                              Exec exec) {
    if (opts.auto_check) {
        const double defect = commutation_defect(gen, grid, opts.pairs);
        if (defect > opts.tol) {
            std::ostringstream os;
            os << "commutative_evolve: generator family does not commute (defect " << defect << ")";
            throw NotCommutative(os.str(), defect);
        }
    }
    // Increment of int L over each step; exact when the generator carries
    // an analytic integral.
    auto increment = [&](std::size_t k) -> Superoperator {
        const double a = grid.time(k);
        const double b = grid.time(k + 1);
        if (gen.integral)
            return gen.integral(b) - gen.integral(a);
        return integrate_generator(gen, a, b, opts.tol_quad);
    };
    auto steps = build_steps(grid.steps(), exec, [&](std::size_t k) { return exp_superop(increment(k)); });
    return compose(grid, std::move(steps), gen.dim);
}

Trajectory t_ordered_evolve(const Generator& gen, const TimeGrid& grid, Exec exec) {
    const double h = grid.h();
    auto steps = build_steps(grid.steps(), exec, [&](std::size_t k) {
        const double mid = grid.time(k) + 0.5 * h;
        return exp_superop(h * gen.at(mid));
    });
    return compose(grid, std::move(steps), gen.dim);
}

double condition_number(const ComplexMatrix& a) {
    const RealVector s = singular_values(a);
    const double lo = s(s.size() - 1);
    if (lo == 0.0)
        return std::numeric_limits<double>::infinity();
    return s(0) / lo;
}

namespace {

ComplexMatrix right_divide(const ComplexMatrix& d, const ComplexMatrix& lambda, double cond_max) {
    const double cond = condition_number(lambda);
    if (!(cond <= cond_max)) {
        std::ostringstream os;
        os << "map is numerically singular (condition number " << cond << ")";
        throw SingularMap(os.str(), cond);
    }
    // X lambda = d  <=>  lambda^T X^T = d^T
    const ComplexMatrix xt = lambda.transpose().partialPivLu().solve(d.transpose());
    return xt.transpose();
}

} // namespace

Superoperator local_generator_from_trajectory(const Trajectory& traj, std::size_t k, double cond_max) {
    const std::size_t last = traj.maps.size() - 1;
    if (k > last)
        throw DimensionError("local_generator_from_trajectory: index beyond trajectory");
    if (last < 2)
        throw DimensionError("local_generator_from_trajectory: need at least two steps");
    const double h = traj.grid.h();
    const auto& m = traj.maps;
    ComplexMatrix d;
    if (k == 0)
        d = (-3.0 * m[0].matrix() + 4.0 * m[1].matrix() - m[2].matrix()) / (2.0 * h);
    else if (k == last)
        d = (3.0 * m[last].matrix() - 4.0 * m[last - 1].matrix() + m[last - 2].matrix()) / (2.0 * h);
    else
        d = (m[k + 1].matrix() - m[k - 1].matrix()) / (2.0 * h);
    return {traj.dim(), right_divide(d, m[k].matrix(), cond_max)};
}

Superoperator propagator_by_inversion(const Superoperator& lambda_t, const Superoperator& lambda_s,
                                      double cond_max) {
    return {lambda_t.dim(), right_divide(lambda_t.matrix(), lambda_s.matrix(), cond_max)};
}

} // namespace qdmap
