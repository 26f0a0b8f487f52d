// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "qdmap/closed_forms.hpp"
#include "qdmap/markovianity.hpp"
#include "qdmap/runner.hpp"

using namespace qdmap;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

double max_entry(const ComplexMatrix& a) { return a.cwiseAbs().maxCoeff(); }

// 1. Choi matrices of transposition and reduction.
Outcome choi_negativity() {
    constexpr double kEntryTol = 1e-15;
    constexpr double kEigTol = 1e-12;
    ComplexMatrix t_expected = ComplexMatrix::Zero(4, 4);
    t_expected(0, 0) = t_expected(1, 2) = t_expected(2, 1) = t_expected(3, 3) = 0.5;
    ComplexMatrix r_expected = ComplexMatrix::Zero(4, 4);
    r_expected(1, 1) = r_expected(2, 2) = 0.5;
    r_expected(0, 3) = r_expected(3, 0) = -0.5;

    double entry_err = 0.0, eig_err = 0.0;
    bool one_negative = true;
    for (const auto& [map, expected] : {std::pair{transpose_map(2), t_expected}, {reduction_map(2), r_expected}}) {
        const ComplexMatrix c = choi_of(map).matrix();
        entry_err = std::max(entry_err, max_entry(c - expected));
        const auto eigs = oracle::hermitian_eigenvalues(c);
        int negatives = 0;
        for (double e : eigs)
            if (e < -kEigTol)
                ++negatives;
        one_negative = one_negative && negatives == 1;
        eig_err = std::max(eig_err, std::abs(eigs.front() + 0.5));
    }
    return {entry_err <= kEntryTol && eig_err <= kEigTol && one_negative,
            fmt("entry err %.2e, eigenvalue err %.2e", entry_err, eig_err)};
}

// 2. Projector and involution semigroups.
Outcome semigroup_closed_forms() {
    constexpr double kTol = 1e-10;
    const Superoperator proj = diagonal_projector(2);
    const Superoperator inv = sigma_z_conjugation();
    const Superoperator id = Superoperator::identity(2);
    double worst = 0.0;
    for (double gamma : {0.3, 1.0, 2.0}) {
        const Superoperator lp = phi_generator(proj, gamma);
        const Superoperator li = phi_generator(inv, gamma);
        for (double t : {0.1, 1.0, 5.0}) {
            const TimeGrid grid(t, 1);
            const Superoperator ep =
                std::exp(-gamma * t) * id + (1.0 - std::exp(-gamma * t)) * proj;
            const Superoperator ei = 0.5 * (1.0 + std::exp(-2.0 * gamma * t)) * id +
                                     0.5 * (1.0 - std::exp(-2.0 * gamma * t)) * inv;
            worst = std::max(worst, max_entry(semigroup_evolve(lp, grid).maps.back().matrix() - ep.matrix()));
            worst = std::max(worst, max_entry(semigroup_evolve(li, grid).maps.back().matrix() - ei.matrix()));
        }
    }
    return {worst <= kTol, fmt("max err %.2e", worst)};
}

// 3. Pump/cool relaxation and coherence decay.
Outcome pump_cool_equilibrium() {
    constexpr double kPopTol = 1e-6;
    constexpr double kCohRelTol = 1e-6;
    const PumpCoolParams p{1.0, 0.7, 0.3, 0.2};
    const double t_end = 20.0 / (p.gamma1 + p.gamma2);
    const TimeGrid grid(t_end, 20000);
    const Trajectory traj = t_ordered_evolve(as_generator(pump_cool_spec(p)), grid);
    // Fixed point of dp1/dt = -gamma1 p1 + gamma2 p2.
    const double p1 = p.gamma2 / (p.gamma1 + p.gamma2);
    const double p2 = p.gamma1 / (p.gamma1 + p.gamma2);

    Rng rng(2024);
    double pop_err = 0.0, coh_err = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const ComplexMatrix rho0 = random_mixed_state(2, rng).matrix();
        const double c0 = std::abs(rho0(0, 1));
        const ComplexMatrix fin = traj.maps.back().apply(rho0);
        pop_err = std::max({pop_err, std::abs(fin(0, 0).real() - p1), std::abs(fin(1, 1).real() - p2)});
        for (std::size_t k = 1000; k <= grid.steps(); k += 1000) {
            const double expected = c0 * std::exp(-p.eta() * grid.time(k));
            const double got = std::abs(traj.maps[k].apply(rho0)(0, 1));
            coh_err = std::max(coh_err, std::abs(got - expected) / expected);
        }
    }
    return {pop_err <= kPopTol && coh_err <= kCohRelTol,
            fmt("population err %.2e, coherence rel err %.2e", pop_err, coh_err)};
}

// 4. Random unitary dynamics.
Outcome random_unitary() {
    constexpr double kTol = 1e-8;
    constexpr double kSumTol = 1e-12;
    constexpr double kUnitalTol = 1e-10;
    constexpr double t = 1.0;
    Rng rng(99);
    double lam_err = 0.0, p_err = 0.0, sum_err = 0.0, unital_err = 0.0;
    const ComplexMatrix psi_plus = [] {
        ComplexMatrix v = ComplexMatrix::Zero(4, 1);
        v(0) = v(3) = 1.0 / std::sqrt(2.0);
        return v;
    }();
    for (int trial = 0; trial < 20; ++trial) {
        const std::array<RateFunction, 3> rates{random_nonnegative_rate(rng, t), random_nonnegative_rate(rng, t),
                                                random_nonnegative_rate(rng, t)};
        const Superoperator map =
            commutative_evolve(as_generator(random_unitary_spec(rates)), TimeGrid(t, 10)).maps.back();
        const double g1 = oracle::simpson([&](double s) { return rates[0](s); }, 0.0, t);
        const double g2 = oracle::simpson([&](double s) { return rates[1](s); }, 0.0, t);
        const double g3 = oracle::simpson([&](double s) { return rates[2](s); }, 0.0, t);
        const std::array<double, 3> lam{std::exp(-g2 - g3), std::exp(-g1 - g3), std::exp(-g1 - g2)};
        const std::array<double, 4> p{0.25 * (1 + lam[2] + lam[1] + lam[0]), 0.25 * (1 - lam[2] - lam[1] + lam[0]),
                                      0.25 * (1 - lam[2] + lam[1] - lam[0]), 0.25 * (1 + lam[2] - lam[1] - lam[0])};
        const ComplexMatrix c = oracle::choi(map.matrix(), 2);
        double sum = 0.0;
        for (int a = 0; a < 4; ++a) {
            if (a > 0) {
                const ComplexMatrix s = oracle::pauli(a);
                const double got = 0.5 * (s * map.apply(s)).trace().real();
                lam_err = std::max(lam_err, std::abs(got - lam[static_cast<std::size_t>(a - 1)]));
            }
            // Weight of sigma_a . sigma_a read off the Choi matrix in the Bell basis.
            const ComplexMatrix bell = oracle::kron(oracle::pauli(0), oracle::pauli(a)) * psi_plus;
            const double pa = (bell.adjoint() * c * bell)(0, 0).real();
            p_err = std::max(p_err, std::abs(pa - p[static_cast<std::size_t>(a)]));
            sum += pa;
        }
        sum_err = std::max(sum_err, std::abs(sum - 1.0));
        unital_err = std::max(unital_err, max_entry(map.apply(identity(2)) - identity(2)));
    }
    return {lam_err <= kTol && p_err <= kTol && sum_err <= kSumTol && unital_err <= kUnitalTol,
            fmt("lambda err %.2e, p err %.2e, sum err %.2e", lam_err, p_err, sum_err) +
                fmt(", unital err %.2e", unital_err)};
}

// 5. Four-tier classifier on pure decoherence.
Outcome four_tiers() {
    constexpr double kNegThreshold = -1e-3;
    const TimeGrid grid = fixtures::two_pi_grid();
    const std::pair<RateFunction, Tier> cases[] = {
        {RateFunction::constant(2.0), Tier::MarkovianSemigroup},
        {RateFunction::exponential(1.0, 1.0), Tier::MarkovianDivisible},
        {RateFunction::sinusoidal(1.0, 1.0, 0.0), Tier::LegitimateNonMarkovian},
        {RateFunction::constant(-1.0), Tier::Illegitimate},
    };
    bool pass = true;
    std::string detail;
    for (const auto& [rate, tier] : cases) {
        const Tier got = classify(fixtures::pure_decoherence(rate), grid).tier;
        pass = pass && got == tier;
        detail += std::string(tier_name(got)) + " ";
    }
    const double neg = oracle::min_eigenvalue(
        oracle::choi(pure_decoherence_map(RateFunction::constant(-1.0), 0.5).matrix(), 2));
    pass = pass && neg < kNegThreshold;
    return {pass, detail + fmt("choi min eig at 0.5 %.4f", neg)};
}

// 6. Trace-distance monotone but not divisible.
Outcome blp_not_divisible() {
    constexpr double kSlopeTol = 1e-7;
    constexpr double kEigThreshold = -1e-4;
    const TraceGenScenario sc = blp_counterexample_scenario();
    const Trajectory traj = t_ordered_evolve(trace_gen_generator(sc.params), sc.grid);
    const BlpReport b = blp_report(traj, 1000, 42, kSlopeTol);
    const DivisibilityReport d = divisibility_report(traj);
    return {b.monotone && b.worst_slope <= kSlopeTol && d.worst_eig < kEigThreshold,
            fmt("worst slope %.2e, worst step eig %.3e", b.worst_slope, d.worst_eig)};
}

// 7. Two-generator construction.
Outcome wilcox_construction() {
    constexpr double kMapTol = 1e-5;
    constexpr double kSplitTol = 1e-10;
    const WilcoxPair pair{RateFunction::constant(1.0), RateFunction::polynomial({0.0, 1.0})};
    const auto& d = qubit_dissipators();
    const double t = 2.0;
    const ComplexMatrix exact = oracle::expm(t * d.l1.matrix() + 0.5 * t * t * d.l2.matrix());
    const Generator gen = wilcox_generator(pair);
    const double e2000 = max_entry(t_ordered_evolve(gen, TimeGrid(t, 2000)).maps.back().matrix() - exact);
    const double e1000 = max_entry(t_ordered_evolve(gen, TimeGrid(t, 1000)).maps.back().matrix() - exact);
    const double ratio = e1000 / e2000;

    Rng rng(7);
    double split_err = 0.0;
    for (int k = 0; k < 100; ++k) {
        const double a1 = uniform(rng, 0.0, 3.0);
        const double a2 = uniform(rng, 0.0, 3.0);
        const LieSplit s = lie_split(a1, a2);
        const ComplexMatrix lhs = oracle::expm(s.nu1 * d.l1.matrix()) * oracle::expm(s.nu2 * d.l2.matrix());
        split_err = std::max(split_err, max_entry(lhs - oracle::expm(a1 * d.l1.matrix() + a2 * d.l2.matrix())));
    }
    return {e2000 < kMapTol && ratio >= 3.5 && ratio <= 4.5 && split_err <= kSplitTol,
            fmt("err %.2e, halving ratio %.3f, split err %.2e", e2000, ratio, split_err)};
}

// 8. Nonnegativity of the B and A integrals.
Outcome wilcox_propositions() {
    constexpr double kTol = -1e-9;
    constexpr double t_end = 2.0;
    Rng rng(8);
    double worst_b = 0.0, worst_a = 0.0;
    for (int k = 0; k < 200; ++k) {
        const WilcoxPair pair{random_nonnegative_rate(rng, t_end), random_nonnegative_rate(rng, t_end)};
        for (int j = 1; j <= 20; ++j) {
            const WilcoxValues v = wilcox_functions(pair, t_end * j / 20.0);
            worst_b = std::min({worst_b, v.B1, v.B2});
        }
    }
    const TimeGrid grid(t_end, 40);
    for (int k = 0; k < 200; ++k) {
        const InvertedPair inv =
            invert_b_to_a(random_nonnegative_rate(rng, t_end), random_nonnegative_rate(rng, t_end), grid);
        for (std::size_t j = 0; j < inv.times.size(); ++j)
            worst_a = std::min({worst_a, inv.A1[j], inv.A2[j]});
    }
    return {worst_b >= kTol && worst_a >= kTol, fmt("min B %.2e, min A %.2e", worst_b, worst_a)};
}

// 9. Trace-norm contraction and monotonicity of divisible maps.
Outcome contraction_and_monotonicity() {
    constexpr double kContractTol = 1e-10;
    constexpr double kSlopeTol = 1e-7;
    Rng rng(9);
    double excess = -1.0;
    for (int k = 0; k < 500; ++k) {
        const std::size_t n = 2 + static_cast<std::size_t>(k % 2);
        const std::size_t m = 2;
        const Superoperator phi = dilation_channel(haar_unitary(n * m, rng), random_mixed_state(m, rng));
        const ComplexMatrix x = complex_gaussian(n, n, rng);
        excess = std::max(excess, oracle::trace_norm(phi.apply(x)) - oracle::trace_norm(x));
    }

    double worst_slope = -1.0;
    for (int k = 0; k < 100; ++k) {
        const GkslSpec spec = fixtures::random_divisible_spec(2, 2, 1.0, rng);
        const Trajectory traj = t_ordered_evolve(as_generator(spec), TimeGrid(1.0, 50));
        const ComplexMatrix x = random_mixed_state(4, rng).matrix() - random_mixed_state(4, rng).matrix();
        double prev = oracle::trace_norm(x);
        for (std::size_t j = 1; j < traj.maps.size(); ++j) {
            const double cur = oracle::trace_norm(
                tensor_superop(Superoperator::identity(2), traj.maps[j]).apply(x));
            worst_slope = std::max(worst_slope, (cur - prev) / traj.grid.h());
            prev = cur;
        }
    }
    return {excess <= kContractTol && worst_slope <= kSlopeTol,
            fmt("max norm excess %.2e, worst slope %.2e", excess, worst_slope)};
}

// 10. Identical reports for repeated runs of each preset.
Outcome cli_determinism() {
    bool pass = true;
    std::string failing;
    for (const auto& info : preset_table()) {
        nlohmann::json doc = {{"schema_version", 1},
                              {"name", info.name},
                              {"dim", info.name == "example5_projector" ? 3 : 2},
                              {"generator", {{"preset", info.name}}},
                              {"seed", 1234}};
        const ParseResult parsed = parse_scenario(doc);
        if (!parsed.ok()) {
            pass = false;
            failing += info.name + " ";
            continue;
        }
        const RunResult a = run_scenario(*parsed.scenario);
        const RunResult b = run_scenario(*parsed.scenario);
        if (a.exit_code != kExitOk || dump_report(a.report) != dump_report(b.report)) {
            pass = false;
            failing += info.name + " ";
        }
    }
    return {pass, pass ? std::to_string(preset_table().size()) + " presets identical" : "differs: " + failing};
}

} // namespace

int main() {
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"choi negativity of transpose and reduction", choi_negativity},
        {"semigroup closed forms", semigroup_closed_forms},
        {"pump/cool equilibrium and coherence decay", pump_cool_equilibrium},
        {"random unitary weights and eigenvalues", random_unitary},
        {"four-tier classifier", four_tiers},
        {"trace-distance monotone yet not divisible", blp_not_divisible},
        {"two-generator time ordering", wilcox_construction},
        {"nonnegative B and inverted A integrals", wilcox_propositions},
        {"contraction and divisible monotonicity", contraction_and_monotonicity},
        {"report determinism", cli_determinism},
    };
    int failures = 0;
    int index = 1;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("[%s] %2d %s: %s\n", o.pass ? "PASS" : "FAIL", index++, name, o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass)
            ++failures;
    }
    std::printf("%d/10 criteria passed\n", 10 - failures);
    return failures == 0 ? 0 : 1;
}
