#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "qdmap/closed_forms.hpp"
#include "qdmap/markovianity.hpp"

using namespace qdmap;

namespace {

using oracle::CM;

const RateFunction kOne = RateFunction::constant(1.0);

CM oracle_l1() {
    return oracle::tabulate(2, [](const CM& x) {
        return oracle::lindblad_rhs(CM::Zero(2, 2), {{sigma_plus(), [](double) { return 1.0; }}}, 0.0, x);
    });
}

CM oracle_l2() {
    return oracle::tabulate(2, [](const CM& x) {
        return oracle::lindblad_rhs(CM::Zero(2, 2), {{sigma_minus(), [](double) { return 1.0; }}}, 0.0, x);
    });
}

// f = a1 - b1 where b1 l1 + b2 l2 = (d/dt e^{Z}) e^{-Z}, Z = A1 l1 + A2 l2,
// from a central difference and a least-squares split onto l1, l2.
double finite_difference_f(const WilcoxPair& pair, double t, double h = 1e-4) {
    const CM l1 = oracle_l1();
    const CM l2 = oracle_l2();
    auto lambda = [&](double s) {
        return oracle::expm(pair.a1.primitive(s) * l1 + pair.a2.primitive(s) * l2);
    };
    const CM deriv = (lambda(t + h) - lambda(t - h)) / (2.0 * h);
    const CM gen = deriv * lambda(t).inverse();
    auto inner = [](const CM& a, const CM& b) { return (a.adjoint() * b).trace().real(); };
    Eigen::Matrix2d g;
    g << inner(l1, l1), inner(l1, l2), inner(l2, l1), inner(l2, l2);
    const Eigen::Vector2d rhs(inner(l1, gen), inner(l2, gen));
    const Eigen::Vector2d b = g.ldlt().solve(rhs);
    return pair.a1(t) - b(0);
}

CM rk4_map(const std::function<CM(double, const CM&)>& rhs, double t, std::size_t steps) {
    return oracle::tabulate(2, [&](const CM& e) { return oracle::rk4(rhs, e, 0.0, t, steps); });
}

} // namespace

TEST(Semigroups, ProjectorAndInvolutionClosedForms) {
    const Superoperator proj = diagonal_projector(3);
    const Superoperator inv = sigma_z_conjugation();
    for (double gamma : {0.3, 2.0}) {
        const Trajectory a = semigroup_evolve(phi_generator(proj, gamma), TimeGrid(2.0, 4));
        const Trajectory b = semigroup_evolve(phi_generator(inv, gamma), TimeGrid(2.0, 4));
        for (std::size_t k = 0; k <= 4; ++k) {
            const double t = a.grid.time(k);
            EXPECT_LT(max_abs(a.maps[k].matrix() - projector_semigroup_map(proj, gamma, t).matrix()), 1e-12);
            EXPECT_LT(max_abs(b.maps[k].matrix() - involution_semigroup_map(inv, gamma, t).matrix()), 1e-12);
        }
    }
}

TEST(PureDecoherence, MapMatchesRk4) {
    const RateFunction gamma = RateFunction::sinusoidal(1.0, 1.0, 0.0);
    const GkslSpec spec = pure_decoherence_spec(gamma);
    std::vector<oracle::RatedJump> jumps;
    for (const auto& j : spec.jumps)
        jumps.push_back({j.op, [r = j.rate](double t) { return r(t); }});
    const CM ref = oracle::lindblad_map(spec.hamiltonian, jumps, 4.0, 4000);
    EXPECT_LT(max_abs(pure_decoherence_map(gamma, 4.0).matrix() - ref), 1e-10);
    // Coherence decays as e^{-Gamma}.
    const ComplexMatrix out = pure_decoherence_map(gamma, 1.3).apply(bloch_to_state({1, 0, 0}).matrix());
    EXPECT_NEAR(2.0 * out(0, 1).real(), std::exp(-gamma.primitive(1.3)), 1e-14);
}

TEST(PumpCool, SolutionMatchesRk4) {
    const PumpCoolParams p{1.3, 0.7, 0.3, 0.2};
    const ComplexMatrix h = 0.5 * p.omega * pauli(3);
    const std::vector<oracle::RatedJump> jumps{
        {sigma_plus(), [&](double) { return p.gamma1; }},
        {sigma_minus(), [&](double) { return p.gamma2; }},
        {pauli(3), [&](double) { return 0.5 * p.gamma; }}};
    Rng rng(1);
    for (int trial = 0; trial < 5; ++trial) {
        const DensityMatrix rho0 = random_mixed_state(2, rng);
        const CM ref = oracle::rk4([&](double t, const CM& r) { return oracle::lindblad_rhs(h, jumps, t, r); },
                                   rho0.matrix(), 0.0, 3.0, 3000);
        EXPECT_LT(max_abs(pump_cool_solution(p, rho0, 3.0).matrix() - ref), 1e-11);
    }
}

TEST(PumpCool, EquilibriumFollowsPauliEquations) {
    const PumpCoolParams p{1.0, 0.7, 0.3, 0.2};
    const auto eq = p.equilibrium();
    EXPECT_NEAR(eq[0], 0.3, 1e-15);
    EXPECT_NEAR(eq[1], 0.7, 1e-15);
    // Stationary under the generator.
    ComplexMatrix rho = ComplexMatrix::Zero(2, 2);
    rho(0, 0) = eq[0];
    rho(1, 1) = eq[1];
    EXPECT_LT(max_abs(gksl_build(pump_cool_spec(p), 0.0).apply(rho)), 1e-15);
    EXPECT_NEAR(p.eta(), 0.7, 1e-15);
    EXPECT_THROW((PumpCoolParams{1.0, -0.1, 0.3, 0.0}.equilibrium()), NegativeInput);
    EXPECT_THROW((PumpCoolParams{1.0, 0.0, 0.0, 0.0}.equilibrium()), NegativeInput);
}

TEST(RandomUnitary, MapMatchesCommutativeEvolution) {
    const std::array<RateFunction, 3> rates{RateFunction::constant(0.4), RateFunction::exponential(1.0, 0.5),
                                            RateFunction::polynomial({0.1, 0.3})};
    const Trajectory traj = commutative_evolve(as_generator(random_unitary_spec(rates)), TimeGrid(2.0, 20));
    const RandomUnitarySolution sol = random_unitary_map(rates, 2.0);
    EXPECT_LT(max_abs(traj.maps.back().matrix() - sol.map.matrix()), 1e-12);
    const double g1 = rates[0].primitive(2.0), g2 = rates[1].primitive(2.0), g3 = rates[2].primitive(2.0);
    EXPECT_NEAR(sol.lambda[0], std::exp(-g2 - g3), 1e-14);
    EXPECT_NEAR(sol.lambda[1], std::exp(-g1 - g3), 1e-14);
    EXPECT_NEAR(sol.lambda[2], std::exp(-g1 - g2), 1e-14);
    EXPECT_NEAR(sol.p[0] + sol.p[1] + sol.p[2] + sol.p[3], 1.0, 1e-14);
    for (int k = 1; k <= 3; ++k)
        EXPECT_LT(max_abs(sol.map.apply(pauli(k)) - sol.lambda[static_cast<std::size_t>(k - 1)] * pauli(k)), 1e-14);
    EXPECT_TRUE(is_unital(sol.map));
}

TEST(TraceGenerator, SolutionMatchesRk4) {
    TraceGenParams p;
    p.gamma = RateFunction::exponential(1.5, 0.3);
    p.omega = [](double t) -> ComplexMatrix {
        return 0.5 * identity(2) + 0.3 * std::cos(2.0 * t) * pauli(1) + 0.2 * std::sin(t) * pauli(3);
    };
    auto rhs = [&](double t, const CM& r) -> CM { return p.gamma(t) * (p.omega(t) * r.trace() - r); };
    Rng rng(2);
    const ComplexMatrix rho0 = random_mixed_state(2, rng).matrix();
    const TraceGenState s = trace_gen_solution(p, rho0, 2.0);
    EXPECT_LT(max_abs(s.rho - oracle::rk4(rhs, rho0, 0.0, 2.0, 4000)), 1e-11);
    ASSERT_TRUE(s.omega_bar.has_value());
    EXPECT_NEAR(s.omega_bar->trace().real(), 1.0, 1e-12);
    EXPECT_LT(max_abs(trace_gen_map(p, 2.0).matrix() - rk4_map(rhs, 2.0, 4000)), 1e-11);
    EXPECT_FALSE(trace_gen_solution(p, rho0, 0.0).omega_bar.has_value());
    EXPECT_LT(max_abs(trace_gen_solution(p, rho0, 0.0).rho - rho0), 1e-15);
}

TEST(TraceGenerator, ValidationRejectsBadOmega) {
    TraceGenParams p;
    p.gamma = kOne;
    p.omega = [](double) -> ComplexMatrix { return identity(2); };
    EXPECT_THROW(p.validate({0.0, 1.0}), Error);
    p.omega = [](double) -> ComplexMatrix { return sigma_plus() + 0.5 * identity(2); };
    EXPECT_THROW(p.validate({0.0}), NotHermitian);
}

TEST(TraceGenerator, CounterexampleScenarioProperties) {
    const TraceGenScenario sc = blp_counterexample_scenario();
    EXPECT_NEAR(sc.t_star, 0.125, 1e-12);
    EXPECT_NEAR(sc.omega_min_eig, 0.5 - 0.65, 1e-12);
    EXPECT_GT(sc.omega_bar_min_eig, 0.0);
    EXPECT_LT(oracle::min_eigenvalue(sc.params.omega(sc.t_star)), -0.1);
    EXPECT_EQ(sc.grid.steps(), 1000u);
}

TEST(LieAlgebra, DissipatorsAndCommutator) {
    const auto& d = qubit_dissipators();
    const CM l1 = oracle_l1();
    const CM l2 = oracle_l2();
    EXPECT_LT(max_abs(d.l1.matrix() - l1), 1e-15);
    EXPECT_LT(max_abs(d.l2.matrix() - l2), 1e-15);
    EXPECT_LT(max_abs(l1 * l2 - l2 * l1 - (l1 - l2)), 1e-15);
    // The commutator form [s+, rho s-] + [s+ rho, s-] is 2 l1.
    const CM comm_form = oracle::tabulate(2, [](const CM& x) -> CM {
        const CM sp = sigma_plus(), sm = sigma_minus();
        return (sp * x * sm - x * sm * sp) + (sp * x * sm - sm * sp * x);
    });
    EXPECT_LT(max_abs(comm_form - 2.0 * l1), 1e-15);
    EXPECT_LT(max_abs(d.l3.apply(sigma_plus()) + 2.0 * sigma_plus()), 1e-15);
    EXPECT_LT(max_abs(d.l0.apply(sigma_plus()) - Complex(0, 2) * sigma_plus()), 1e-15);
}

TEST(LieAlgebra, WronskianTermMatchesFiniteDifference) {
    const WilcoxPair pair{kOne, RateFunction::polynomial({0.0, 1.0})};
    EXPECT_NEAR(wilcox_f(pair, 1.0), finite_difference_f(pair, 1.0), 1e-7);
    EXPECT_NEAR(wilcox_f(pair, 1.0), -0.160695591144096, 1e-12);
    Rng rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const WilcoxPair p{random_nonnegative_rate(rng, 2.0), random_nonnegative_rate(rng, 2.0)};
        for (double t : {0.05, 0.7, 1.9})
            EXPECT_NEAR(wilcox_f(p, t), finite_difference_f(p, t), 1e-6) << trial << " t=" << t;
    }
}

TEST(LieAlgebra, WronskianTermSmallA) {
    // Series and closed form agree across the switch at |A| = 0.5.
    const WilcoxPair pair{RateFunction::constant(0.1), RateFunction::polynomial({0.0, 0.2})};
    for (double t : {1e-6, 0.01, 1.0, 1.5, 2.0, 2.5})
        EXPECT_NEAR(wilcox_f(pair, t), finite_difference_f(pair, t, 1e-5 * std::max(t, 1e-3)), 1e-7) << t;
    EXPECT_EQ(wilcox_f(pair, 0.0), 0.0);
}

TEST(LieAlgebra, WilcoxValuesAreConsistent) {
    const WilcoxPair pair{kOne, RateFunction::polynomial({0.0, 1.0})};
    const WilcoxValues v = wilcox_functions(pair, 1.5);
    EXPECT_NEAR(v.A1, 1.5, 1e-15);
    EXPECT_NEAR(v.A2, 1.125, 1e-15);
    EXPECT_NEAR(v.b1 + v.b2, v.a1 + v.a2, 1e-15);
    EXPECT_NEAR(v.B1 + v.B2, v.A, 1e-12);
    EXPECT_NEAR(v.F, oracle::simpson([&](double u) { return wilcox_f(pair, u); }, 0.0, 1.5, 2000), 1e-12);
}

TEST(LieAlgebra, TOrderedEvolutionMatchesExponential) {
    const WilcoxPair pair{kOne, RateFunction::polynomial({0.0, 1.0})};
    const Trajectory traj = t_ordered_evolve(wilcox_generator(pair), TimeGrid(2.0, 500));
    EXPECT_LT(max_abs(traj.maps.back().matrix() - wilcox_exact_map(pair, 2.0).matrix()), 1e-6);
}

TEST(LieAlgebra, SplitIntoTwoSemigroups) {
    const auto& d = qubit_dissipators();
    for (auto [a1, a2] : {std::pair{0.3, 1.7}, std::pair{2.0, 0.0}, std::pair{0.0, 0.5}, std::pair{1e-9, 1e-9}}) {
        const LieSplit s = lie_split(a1, a2);
        EXPECT_NEAR(s.nu1 + s.nu2, a1 + a2, 1e-14);
        EXPECT_GE(s.nu1, 0.0);
        EXPECT_GE(s.nu2, 0.0);
        const CM lhs = oracle::expm(s.nu1 * d.l1.matrix()) * oracle::expm(s.nu2 * d.l2.matrix());
        EXPECT_LT(max_abs(lhs - oracle::expm(a1 * d.l1.matrix() + a2 * d.l2.matrix())), 1e-12);
    }
    EXPECT_THROW(lie_split(-0.1, 1.0), NegativeInput);
}

TEST(LieAlgebra, FinalMapFormula) {
    const WilcoxPair pair{kOne, RateFunction::polynomial({0.0, 1.0})};
    for (double t : {0.0, 0.4, 2.0}) {
        const WilcoxFinalMap fm = wilcox_final_map(pair, t);
        EXPECT_LT(max_abs(fm.map.matrix() - wilcox_exact_map(pair, t).matrix()), 1e-10) << t;
        EXPECT_LT(max_abs(wilcox_final_choi(fm.B, fm.weighted_omega) - choi_of(fm.map).matrix()), 1e-14);
    }
    // Rates b1, b2 given directly.
    const RateFunction b1 = RateFunction::exponential(1.0, 0.5);
    const RateFunction b2 = RateFunction::sinusoidal(0.5, 1.0, 0.5);
    const Generator gen{2, [&](double t) {
                            const auto& d = qubit_dissipators();
                            return b1(t) * d.l1 + b2(t) * d.l2;
                        },
                        nullptr, false, "b"};
    const Trajectory traj = t_ordered_evolve(gen, TimeGrid(1.5, 3000));
    EXPECT_LT(max_abs(wilcox_final_map(b1, b2, 1.5).map.matrix() - traj.maps.back().matrix()), 1e-7);
}

TEST(LieAlgebra, InversionRoundTrip) {
    Rng rng(4);
    const auto& d = qubit_dissipators();
    for (int trial = 0; trial < 5; ++trial) {
        const RateFunction b1 = random_nonnegative_rate(rng, 2.0);
        const RateFunction b2 = random_nonnegative_rate(rng, 2.0);
        const TimeGrid grid(2.0, 40);
        const InvertedPair inv = invert_b_to_a(b1, b2, grid);
        const Generator gen{2, [&](double t) { return b1(t) * d.l1 + b2(t) * d.l2; }, nullptr, false, "b"};
        const Trajectory traj = t_ordered_evolve(gen, TimeGrid(2.0, 4000));
        for (std::size_t k : {10u, 25u, 40u}) {
            const CM z = inv.A1[k] * d.l1.matrix() + inv.A2[k] * d.l2.matrix();
            EXPECT_LT(max_abs(oracle::expm(z) - traj.maps[k * 100].matrix()), 1e-6) << trial << " k=" << k;
        }
    }
}

TEST(LieAlgebra, NonnegativeRatesGiveNonnegativeIntegrals) {
    Rng rng(5);
    const TimeGrid grid(2.0, 20);
    for (int trial = 0; trial < 20; ++trial) {
        const WilcoxPair a{random_nonnegative_rate(rng, 2.0), random_nonnegative_rate(rng, 2.0)};
        for (double t : grid.times()) {
            const WilcoxValues v = wilcox_functions(a, t);
            EXPECT_GE(v.B1, -1e-9);
            EXPECT_GE(v.B2, -1e-9);
        }
        const InvertedPair inv = invert_b_to_a(random_nonnegative_rate(rng, 2.0), random_nonnegative_rate(rng, 2.0), grid);
        for (std::size_t k = 0; k < inv.times.size(); ++k) {
            EXPECT_GE(inv.A1[k], -1e-9);
            EXPECT_GE(inv.A2[k], -1e-9);
        }
    }
}

TEST(LieAlgebra, RandomRatesAreNonnegative) {
    Rng rng(6);
    for (int trial = 0; trial < 200; ++trial) {
        const RateFunction r = random_nonnegative_rate(rng, 3.0);
        for (int k = 0; k <= 300; ++k)
            ASSERT_GE(r(0.01 * k), -1e-12) << r.describe();
    }
}
