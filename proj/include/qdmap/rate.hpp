// rate.hpp - scalar rate families gamma(t) with exact primitives
// Gamma(t) = int_0^t gamma(u) du.

#pragma once

#include <string>
#include <vector>

namespace qdmap {

class RateFunction {
public:
    enum class Family { Constant, Exponential, Sinusoidal, Polynomial, Table };

    static RateFunction constant(double c);
    // c * exp(-r t)
    static RateFunction exponential(double c, double r);
    // c * sin(omega t + phi)
    static RateFunction sinusoidal(double c, double omega, double phi);
    // sum_k coeffs[k] t^k
    static RateFunction polynomial(std::vector<double> coeffs);
    // Linear interpolation between knots, held constant outside the knot
    // range. Knot times must be strictly increasing.
    static RateFunction table(std::vector<double> times, std::vector<double> values);

    double operator()(double t) const { return value(t); }
    double value(double t) const;
    double primitive(double t) const;

    RateFunction scaled(double s) const;

    Family family() const noexcept { return family_; }
    const std::vector<double>& params() const noexcept { return p_; }
    const std::vector<double>& knot_times() const noexcept { return knots_; }
    bool is_constant() const noexcept;

    std::string describe() const;

private:
    RateFunction(Family f, std::vector<double> p) : family_(f), p_(std::move(p)) {}

    double table_cumulative(double x) const; // int_{t_0}^{x}

    Family family_ = Family::Constant;
    std::vector<double> p_; // family parameters; table values for Table
    std::vector<double> knots_; // Table only
};

const char* family_name(RateFunction::Family f);

} // namespace qdmap
