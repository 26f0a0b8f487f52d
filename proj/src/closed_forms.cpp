#include "qdmap/closed_forms.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "quadrature.hpp"

namespace qdmap {

namespace {

Superoperator trace_replacement(const ComplexMatrix& w) {
    const auto n = static_cast<std::size_t>(w.rows());
    return {n, vectorize(w) * vectorize(identity(n)).transpose()};
}

ComplexMatrix p1() { return elementary(2, 0, 0); }
ComplexMatrix p2() { return elementary(2, 1, 1); }

ComplexMatrix zero_matrix(std::size_t n) {
    const auto ni = static_cast<Eigen::Index>(n);
    return ComplexMatrix::Zero(ni, ni);
}

double max_abs_matrix(const ComplexMatrix& m) { return max_abs(m); }

} // namespace

Superoperator projector_semigroup_map(const Superoperator& phi, double gamma, double t) {
    const double e = std::exp(-gamma * t);
    return e * Superoperator::identity(phi.dim()) + (1.0 - e) * phi;
}

Superoperator involution_semigroup_map(const Superoperator& phi, double gamma, double t) {
    const double e = std::exp(-2.0 * gamma * t);
    return 0.5 * (1.0 + e) * Superoperator::identity(phi.dim()) + 0.5 * (1.0 - e) * phi;
}

Superoperator phi_generator(const Superoperator& phi, double gamma) {
    return gamma * (phi - Superoperator::identity(phi.dim()));
}

Superoperator sigma_z_conjugation() { return Superoperator::sandwich(pauli(3), pauli(3)); }

GkslSpec pure_decoherence_spec(const RateFunction& gamma) {
    return {2, zero_matrix(2), {Jump{pauli(3), gamma.scaled(0.5)}}};
}

Superoperator pure_decoherence_map(const RateFunction& gamma, double t) {
    const double e = std::exp(-gamma.primitive(t));
    return 0.5 * (1.0 + e) * Superoperator::identity(2) + 0.5 * (1.0 - e) * sigma_z_conjugation();
}

std::array<double, 2> PumpCoolParams::equilibrium() const {
    if (gamma1 < 0.0 || gamma2 < 0.0 || gamma < 0.0)
        throw NegativeInput("PumpCoolParams: rates must be nonnegative");
    const double s = gamma1 + gamma2;
    if (s <= 0.0)
        throw NegativeInput("PumpCoolParams: gamma1 + gamma2 must be positive");
    // Fixed point of p1' = -gamma1 p1 + gamma2 p2.
    return {gamma2 / s, gamma1 / s};
}

GkslSpec pump_cool_spec(const PumpCoolParams& p) {
    GkslSpec spec{2, 0.5 * p.omega * pauli(3), {}};
    spec.jumps.push_back({sigma_plus(), RateFunction::constant(p.gamma1)});
    spec.jumps.push_back({sigma_minus(), RateFunction::constant(p.gamma2)});
    spec.jumps.push_back({pauli(3), RateFunction::constant(0.5 * p.gamma)});
    return spec;
}

DensityMatrix pump_cool_solution(const PumpCoolParams& p, const DensityMatrix& rho0, double t) {
    if (rho0.dim() != 2)
        throw DimensionError("pump_cool_solution: qubit state required");
    const ComplexMatrix& r = rho0.matrix();
    double q1 = r(0, 0).real();
    double q2 = r(1, 1).real();
    const double s = p.gamma1 + p.gamma2;
    if (s > 0.0) {
        const auto eq = p.equilibrium();
        const double decay = std::exp(-s * t);
        q1 = q1 * decay + eq[0] * (1.0 - decay);
        q2 = q2 * decay + eq[1] * (1.0 - decay);
    }
    const Complex alpha = std::exp(Complex(-p.eta() * t, p.omega * t)) * r(1, 0);
    ComplexMatrix out(2, 2);
    out << q1, std::conj(alpha), alpha, q2;
    return DensityMatrix(out);
}

GkslSpec random_unitary_spec(const std::array<RateFunction, 3>& gammas) {
    GkslSpec spec{2, zero_matrix(2), {}};
    for (int k = 0; k < 3; ++k)
        spec.jumps.push_back({pauli(k + 1), gammas[static_cast<std::size_t>(k)].scaled(0.5)});
    return spec;
}

RandomUnitarySolution random_unitary_map(const std::array<RateFunction, 3>& gammas, double t) {
    const double g1 = gammas[0].primitive(t);
    const double g2 = gammas[1].primitive(t);
    const double g3 = gammas[2].primitive(t);
    RandomUnitarySolution s;
    s.lambda = {std::exp(-g2 - g3), std::exp(-g1 - g3), std::exp(-g1 - g2)};
    const auto& l = s.lambda;
    s.p = {0.25 * (1.0 + l[2] + l[1] + l[0]), 0.25 * (1.0 - l[2] - l[1] + l[0]),
           0.25 * (1.0 - l[2] + l[1] - l[0]), 0.25 * (1.0 + l[2] - l[1] - l[0])};
    s.map = Superoperator::zero(2);
    for (int a = 0; a < 4; ++a)
        s.map = s.map + s.p[static_cast<std::size_t>(a)] * Superoperator::sandwich(pauli(a), pauli(a));
    return s;
}

void TraceGenParams::validate(const std::vector<double>& sample_times, double tol) const {
    if (!omega)
        throw Error("TraceGenParams: omega_t is not set");
    const auto n = static_cast<Eigen::Index>(dim);
    for (double t : sample_times) {
        const ComplexMatrix w = omega(t);
        if (w.rows() != n || w.cols() != n)
            throw DimensionError("TraceGenParams: omega_t has wrong shape");
        if (!is_hermitian(w, tol))
            throw NotHermitian("TraceGenParams: omega_t is not Hermitian");
        if (std::abs(w.trace() - Complex(1.0)) > tol)
            throw Error("TraceGenParams: Tr omega_t != 1");
    }
}

Generator trace_gen_generator(const TraceGenParams& p) {
    Generator g;
    g.dim = p.dim;
    g.at = [p](double t) {
        return p.gamma(t) * (trace_replacement(p.omega(t)) - Superoperator::identity(p.dim));
    };
    g.label = "trace_generator";
    return g;
}

namespace {

ComplexMatrix weighted_piece(const TraceGenParams& p, double a, double b, double tol) {
    auto integrand = [&](double u) -> ComplexMatrix {
        return p.gamma(u) * std::exp(p.gamma.primitive(u)) * p.omega(u);
    };
    return detail::adaptive_simpson<ComplexMatrix>(integrand, a, b, tol, max_abs_matrix, zero_matrix(p.dim),
                                                   detail::panels_for(a, b));
}

} // namespace

ComplexMatrix trace_gen_weighted_integral(const TraceGenParams& p, double t, double tol) {
    return weighted_piece(p, 0.0, t, tol);
}

TraceGenState trace_gen_solution(const TraceGenParams& p, const ComplexMatrix& rho0, double t,
                                 double tol_degenerate) {
    const double g = p.gamma.primitive(t);
    const ComplexMatrix w = trace_gen_weighted_integral(p, t);
    TraceGenState s;
    s.rho = std::exp(-g) * rho0 + std::exp(-g) * rho0.trace() * w;
    const double denom = std::expm1(g);
    if (std::abs(denom) > tol_degenerate)
        s.omega_bar = w / denom;
    return s;
}

Superoperator trace_gen_map(const TraceGenParams& p, double t) {
    const double e = std::exp(-p.gamma.primitive(t));
    return e * Superoperator::identity(p.dim) + trace_replacement(e * trace_gen_weighted_integral(p, t));
}

TraceGenScenario blp_counterexample_scenario() {
    constexpr double kappa = 0.65;
    constexpr double freq = 4.0 * std::numbers::pi;
    TraceGenParams params;
    params.dim = 2;
    params.gamma = RateFunction::constant(1.0);
    params.omega = [](double t) -> ComplexMatrix {
        return 0.5 * identity(2) + kappa * std::sin(freq * t) * pauli(1);
    };
    TraceGenScenario sc{params, TimeGrid(2.0, 1000), 0.125, 0.0, 0.0};
    params.validate(sc.grid.times());

    sc.omega_min_eig = min_eigenvalue(params.omega(sc.t_star));
    if (!(sc.omega_min_eig < 0.0))
        throw ConstructionFailed("blp_counterexample_scenario: omega_t stays positive");

    ComplexMatrix w = zero_matrix(2);
    sc.omega_bar_min_eig = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k <= sc.grid.steps(); ++k) {
        w += weighted_piece(params, sc.grid.time(k - 1), sc.grid.time(k), 1e-14);
        const ComplexMatrix omega_bar = w / std::expm1(params.gamma.primitive(sc.grid.time(k)));
        sc.omega_bar_min_eig = std::min(sc.omega_bar_min_eig, min_eigenvalue(omega_bar));
    }
    if (sc.omega_bar_min_eig < -1e-12) {
        std::ostringstream os;
        os << "blp_counterexample_scenario: Omega_t not PSD (" << sc.omega_bar_min_eig << ")";
        throw ConstructionFailed(os.str());
    }
    return sc;
}

const QubitDissipators& qubit_dissipators() {
    static const QubitDissipators d{dissipator_superop(sigma_plus()), dissipator_superop(sigma_minus()),
                                    dissipator_superop(pauli(3)), hamiltonian_superop(pauli(3))};
    return d;
}

namespace {

// (A - 1 + e^{-A}) / A^2 = sum_k (-A)^k / (k + 2)!
double wronskian_weight(double A) {
    if (std::abs(A) < 0.5) {
        double term = 0.5;
        double acc = 0.5;
        for (int k = 1; k <= 16; ++k) {
            term *= -A / static_cast<double>(k + 2);
            acc += term;
        }
        return acc;
    }
    return (A + std::expm1(-A)) / (A * A);
}

} // namespace

double wilcox_f(const WilcoxPair& pair, double t) {
    const double A1 = pair.a1.primitive(t);
    const double A2 = pair.a2.primitive(t);
    const double W = pair.a1(t) * A2 - pair.a2(t) * A1;
    return W * wronskian_weight(A1 + A2);
}

WilcoxValues wilcox_functions(const WilcoxPair& pair, double t, double tol) {
    WilcoxValues v;
    v.a1 = pair.a1(t);
    v.a2 = pair.a2(t);
    v.A1 = pair.a1.primitive(t);
    v.A2 = pair.a2.primitive(t);
    v.A = v.A1 + v.A2;
    v.W = v.a1 * v.A2 - v.a2 * v.A1;
    v.f = wilcox_f(pair, t);
    v.b1 = v.a1 - v.f;
    v.b2 = v.a2 + v.f;
    v.F = detail::adaptive_simpson([&](double u) { return wilcox_f(pair, u); }, 0.0, t, tol,
                                   detail::panels_for(0.0, t));
    v.B1 = v.A1 - v.F;
    v.B2 = v.A2 + v.F;
    return v;
}

Generator wilcox_generator(const WilcoxPair& pair) {
    Generator g;
    g.dim = 2;
    g.at = [pair](double t) {
        const auto& d = qubit_dissipators();
        const double f = wilcox_f(pair, t);
        return (pair.a1(t) - f) * d.l1 + (pair.a2(t) + f) * d.l2;
    };
    g.label = "wilcox_l1l2";
    return g;
}

Superoperator wilcox_exact_map(const WilcoxPair& pair, double t) {
    const auto& d = qubit_dissipators();
    const Superoperator z = pair.a1.primitive(t) * d.l1 + pair.a2.primitive(t) * d.l2;
    return {2, matrix_exp(z.matrix())};
}

LieSplit lie_split(double A1, double A2) {
    if (A1 < 0.0 || A2 < 0.0)
        throw NegativeInput("lie_split: A1 and A2 must be nonnegative");
    const double A = A1 + A2;
    if (A == 0.0)
        return {};
    return {std::log(A / (A1 * std::exp(-A) + A2)), std::log((A1 + A2 * std::exp(A)) / A)};
}

WilcoxFinalMap wilcox_final_map(const ScalarFn& b1, const ScalarFn& b2, const ScalarFn& B, double t, double tol) {
    WilcoxFinalMap out;
    out.B = B(t);
    const int panels = detail::panels_for(0.0, t);
    const double pop1 =
        detail::adaptive_simpson([&](double u) { return std::exp(B(u)) * b2(u); }, 0.0, t, tol, panels);
    const double pop2 =
        detail::adaptive_simpson([&](double u) { return std::exp(B(u)) * b1(u); }, 0.0, t, tol, panels);
    const double e = std::exp(-out.B);
    out.weighted_omega = e * (pop1 * p1() + pop2 * p2());

    const double eh = std::exp(0.5 * out.B);
    out.map = 0.5 * e * ((1.0 + eh) * Superoperator::identity(2) + (1.0 - eh) * sigma_z_conjugation()) +
              trace_replacement(out.weighted_omega);
    const double denom = -std::expm1(-out.B);
    if (std::abs(denom) > tol)
        out.omega = out.weighted_omega / denom;
    return out;
}

WilcoxFinalMap wilcox_final_map(const RateFunction& b1, const RateFunction& b2, double t) {
    return wilcox_final_map([&](double u) { return b1(u); }, [&](double u) { return b2(u); },
                            [&](double u) { return b1.primitive(u) + b2.primitive(u); }, t);
}

WilcoxFinalMap wilcox_final_map(const WilcoxPair& pair, double t) {
    return wilcox_final_map([&](double u) { return pair.a1(u) - wilcox_f(pair, u); },
                            [&](double u) { return pair.a2(u) + wilcox_f(pair, u); },
                            [&](double u) { return pair.a1.primitive(u) + pair.a2.primitive(u); }, t);
}

ComplexMatrix wilcox_final_choi(double B, const ComplexMatrix& weighted_omega) {
    const double e = std::exp(-B);
    const double eh = std::exp(-0.5 * B);
    const double w11 = weighted_omega(0, 0).real();
    const double w22 = weighted_omega(1, 1).real();
    ComplexMatrix c = ComplexMatrix::Zero(4, 4);
    c(0, 0) = 0.5 * (e + w11);
    c(1, 1) = 0.5 * w22;
    c(2, 2) = 0.5 * w11;
    c(3, 3) = 0.5 * (e + w22);
    c(0, 3) = 0.5 * eh;
    c(3, 0) = 0.5 * eh;
    return c;
}

InvertedPair invert_b_to_a(const RateFunction& b1, const RateFunction& b2, const TimeGrid& grid, double tol) {
    auto big_a = [&](double u) { return b1.primitive(u) + b2.primitive(u); };
    auto integrand = [&](double u) { return std::exp(big_a(u)) * 0.5 * (b1(u) - b2(u)); };
    InvertedPair out;
    out.times = grid.times();
    out.A1.resize(out.times.size());
    out.A2.resize(out.times.size());
    double j = 0.0;
    for (std::size_t k = 0; k < out.times.size(); ++k) {
        const double t = out.times[k];
        if (k > 0)
            j += detail::adaptive_simpson(integrand, out.times[k - 1], t, tol);
        const double A = big_a(t);
        const double factor = A == 0.0 ? 1.0 : A / std::expm1(A);
        const double c = factor * j;
        out.A1[k] = 0.5 * A + c;
        out.A2[k] = 0.5 * A - c;
    }
    return out;
}

RateFunction random_nonnegative_rate(Rng& rng, double t_end) {
    const int family = static_cast<int>(uniform(rng, 0.0, 5.0));
    switch (family) {
    case 0: return RateFunction::constant(uniform(rng, 0.0, 2.0));
    case 1: return RateFunction::exponential(uniform(rng, 0.0, 2.0), uniform(rng, -0.5, 2.0));
    case 2: {
        // Keep omega t + phi inside [0, pi] on the whole interval.
        const double w = uniform(rng, 0.1, 0.9) * std::numbers::pi / t_end;
        const double phi = uniform(rng, 0.0, std::numbers::pi - w * t_end);
        return RateFunction::sinusoidal(uniform(rng, 0.0, 2.0), w, phi);
    }
    case 3: {
        std::vector<double> coeffs(static_cast<std::size_t>(uniform(rng, 1.0, 4.999)));
        for (double& c : coeffs)
            c = uniform(rng, 0.0, 1.0);
        return RateFunction::polynomial(std::move(coeffs));
    }
    default: {
        std::vector<double> times(5);
        std::vector<double> values(5);
        for (std::size_t k = 0; k < 5; ++k) {
            times[k] = t_end * static_cast<double>(k) / 4.0;
            values[k] = uniform(rng, 0.0, 2.0);
        }
        return RateFunction::table(std::move(times), std::move(values));
    }
    }
}

} // namespace qdmap
