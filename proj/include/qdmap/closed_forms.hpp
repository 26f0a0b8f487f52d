// closed_forms.hpp - exact solutions of the standard qubit models, used as
// oracles for the generic engines.
//
// Rate conventions. The two-generator algebra uses
//   l1(rho) = s+ rho s- - 1/2 {s- s+, rho}    (pumping, s+ = |2><1|)
//   l2(rho) = s- rho s+ - 1/2 {s+ s-, rho}    (cooling)
// for which [l1, l2] = l1 - l2; the commutator-form operators
// [s+, rho s-] + [s+ rho, s-] are exactly 2 l1 and 2 l2. Dephasing is
//   L3(rho) = sz rho sz - rho.
// Every model below states its prefactors explicitly.

#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qdmap/evolution.hpp"

namespace qdmap {

// Phi with Phi^2 = Phi:   exp(t gamma (Phi - 1)) = e^{-gamma t} 1 + (1 - e^{-gamma t}) Phi
Superoperator projector_semigroup_map(const Superoperator& phi, double gamma, double t);
// Phi with Phi^2 = 1:     1/2 (1 + e^{-2 gamma t}) 1 + 1/2 (1 - e^{-2 gamma t}) Phi
Superoperator involution_semigroup_map(const Superoperator& phi, double gamma, double t);
// gamma (Phi - 1)
Superoperator phi_generator(const Superoperator& phi, double gamma);

// sz . sz
Superoperator sigma_z_conjugation();

// --- pure decoherence: L_t = gamma(t)/2 L3 -----------------------------------

GkslSpec pure_decoherence_spec(const RateFunction& gamma);
// 1/2 (1 + e^{-G}) rho + 1/2 (1 - e^{-G}) sz rho sz, G = int_0^t gamma
Superoperator pure_decoherence_map(const RateFunction& gamma, double t);

// --- pump / cool qubit --------------------------------------------------------

struct PumpCoolParams {
    double omega = 0.0;
    double gamma1 = 0.0; // pumping |1> -> |2>
    double gamma2 = 0.0; // cooling |2> -> |1>
    double gamma = 0.0;  // dephasing

    double eta() const noexcept { return 0.5 * (gamma1 + gamma2) + gamma; }
    // Throws NegativeInput on a negative rate or gamma1 + gamma2 == 0.
    std::array<double, 2> equilibrium() const;
};

// H = omega/2 sz, L_D = gamma1 l1 + gamma2 l2 + gamma/2 L3.
GkslSpec pump_cool_spec(const PumpCoolParams& p);
DensityMatrix pump_cool_solution(const PumpCoolParams& p, const DensityMatrix& rho0, double t);

// --- random unitary qubit dynamics: L_t = 1/2 sum_k gamma_k(t) (s_k . s_k - 1) ---

GkslSpec random_unitary_spec(const std::array<RateFunction, 3>& gammas);

struct RandomUnitarySolution {
    Superoperator map;
    std::array<double, 4> p{};      // weights of 1, s1, s2, s3
    std::array<double, 3> lambda{}; // Lambda_t(s_k) = lambda_k s_k
};

RandomUnitarySolution random_unitary_map(const std::array<RateFunction, 3>& gammas, double t);

// --- trace generator: L_t(rho) = gamma(t) (omega_t Tr rho - rho) ---------------

struct TraceGenParams {
    std::size_t dim = 2;
    RateFunction gamma = RateFunction::constant(0.0);
    std::function<ComplexMatrix(double)> omega; // Hermitian, unit trace

    // Throws NotHermitian / DimensionError / Error on a malformed omega_t.
    void validate(const std::vector<double>& sample_times, double tol = 1e-10) const;
};

Generator trace_gen_generator(const TraceGenParams& p);

// int_0^t gamma(u) e^{G(u)} omega_u du by adaptive quadrature.
ComplexMatrix trace_gen_weighted_integral(const TraceGenParams& p, double t, double tol = 1e-12);

struct TraceGenState {
    ComplexMatrix rho;
    // Omega_t; empty where e^{G(t)} - 1 is below the degeneracy tolerance,
    // in which case rho is the t -> 0 limit and needs no quotient.
    std::optional<ComplexMatrix> omega_bar;
};

TraceGenState trace_gen_solution(const TraceGenParams& p, const ComplexMatrix& rho0, double t,
                                 double tol_degenerate = 1e-12);
Superoperator trace_gen_map(const TraceGenParams& p, double t);

struct TraceGenScenario {
    TraceGenParams params;
    TimeGrid grid;
    double t_star = 0.0;        // where omega_t is most negative
    double omega_min_eig = 0.0; // of omega_{t_star}
    double omega_bar_min_eig = 0.0; // over the grid
};

// gamma = 1, omega_t = I/2 + kappa sin(4 pi t) sx with kappa = 0.65 on [0, 2],
// 1000 steps. omega_t leaves the state space around t = 1/8 while Omega_t stays
// PSD. Both properties are checked; ConstructionFailed otherwise.
TraceGenScenario blp_counterexample_scenario();

// --- two-generator Lie algebra span{L1, L2} -------------------------------------

struct QubitDissipators {
    Superoperator l1;
    Superoperator l2;
    Superoperator l3;
    Superoperator l0; // -i[sz, .]
};

const QubitDissipators& qubit_dissipators();

struct WilcoxPair {
    RateFunction a1;
    RateFunction a2;
};

struct WilcoxValues {
    double a1 = 0, a2 = 0;
    double A1 = 0, A2 = 0, A = 0;
    double W = 0; // a1 A2 - a2 A1
    double f = 0; // W (A - 1 + e^{-A}) / A^2
    double b1 = 0, b2 = 0;
    double F = 0; // int_0^t f
    double B1 = 0, B2 = 0;
};

// With Z_t = A1 l1 + A2 l2, the local generator of exp(Z_t) is
//   d/dt e^{Z} e^{-Z} = sum_k ad_Z^k(Z')/(k+1)! = Z' - f (l1 - l2),
// since ad_Z(Z') = -W (l1 - l2) and ad_Z(l1 - l2) = -A (l1 - l2).
// Everything except F (and hence B1, B2) is pointwise; F uses quadrature.
WilcoxValues wilcox_functions(const WilcoxPair& pair, double t, double tol = 1e-12);
double wilcox_f(const WilcoxPair& pair, double t);

// t -> b1(t) l1 + b2(t) l2
Generator wilcox_generator(const WilcoxPair& pair);
// exp(A1(t) l1 + A2(t) l2)
Superoperator wilcox_exact_map(const WilcoxPair& pair, double t);

struct LieSplit {
    double nu1 = 0.0;
    double nu2 = 0.0;
};

// exp(A1 l1 + A2 l2) = exp(nu1 l1) exp(nu2 l2). Throws NegativeInput.
LieSplit lie_split(double A1, double A2);

// Solution for L_t = b1(t) l1 + b2(t) l2 = b (omega_t Tr - 1) - b/4 L3 with
// omega_t = (b2 P1 + b1 P2)/b:
//   Lambda_t(rho) = 1/2 e^{-B}[(1 + e^{B/2}) rho + (1 - e^{B/2}) sz rho sz]
//                   + (1 - e^{-B}) Omega_t Tr rho
//   (1 - e^{-B}) Omega_t = e^{-B} int_0^t e^{B(u)} (b2 P1 + b1 P2) du
struct WilcoxFinalMap {
    Superoperator map;
    double B = 0.0;
    ComplexMatrix weighted_omega; // (1 - e^{-B}) Omega_t
    std::optional<ComplexMatrix> omega;
};

using ScalarFn = std::function<double(double)>;

// b1, b2 and B = int_0^t (b1 + b2).
WilcoxFinalMap wilcox_final_map(const ScalarFn& b1, const ScalarFn& b2, const ScalarFn& B, double t,
                                double tol = 1e-12);
WilcoxFinalMap wilcox_final_map(const RateFunction& b1, const RateFunction& b2, double t);
WilcoxFinalMap wilcox_final_map(const WilcoxPair& pair, double t);

// The 4x4 Choi matrix of the map above assembled entrywise from B and the
// weighted Omega (diagonal Omega assumed).
ComplexMatrix wilcox_final_choi(double B, const ComplexMatrix& weighted_omega);

// Recovers A1, A2 on a grid from b1, b2: A = B, and with c = (b1 - b2)/2,
//   (A1 - A2)/2 = A/(e^A - 1) int_0^t e^{A(u)} c(u) du.
struct InvertedPair {
    std::vector<double> times;
    std::vector<double> A1;
    std::vector<double> A2;
};

InvertedPair invert_b_to_a(const RateFunction& b1, const RateFunction& b2, const TimeGrid& grid, double tol = 1e-12);

// A rate drawn from the five families with nonnegative values on [0, t_end].
RateFunction random_nonnegative_rate(Rng& rng, double t_end);

} // namespace qdmap
