#include "qdmap/rate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qdmap/errors.hpp"

namespace qdmap {

RateFunction RateFunction::constant(double c) { return {Family::Constant, {c}}; }

RateFunction RateFunction::exponential(double c, double r) { return {Family::Exponential, {c, r}}; }

RateFunction RateFunction::sinusoidal(double c, double omega, double phi) {
    return {Family::Sinusoidal, {c, omega, phi}};
}

RateFunction RateFunction::polynomial(std::vector<double> coeffs) {
    if (coeffs.empty())
        coeffs.push_back(0.0);
    return {Family::Polynomial, std::move(coeffs)};
}

RateFunction RateFunction::table(std::vector<double> times, std::vector<double> values) {
    if (times.empty() || times.size() != values.size())
        throw Error("RateFunction::table: need matching, non-empty knot and value arrays");
    for (std::size_t k = 1; k < times.size(); ++k)
        if (!(times[k] > times[k - 1]))
            throw Error("RateFunction::table: knot times must be strictly increasing");
    RateFunction r(Family::Table, std::move(values));
    r.knots_ = std::move(times);
    return r;
}

double RateFunction::value(double t) const {
    switch (family_) {
    case Family::Constant: return p_[0];
    case Family::Exponential: return p_[0] * std::exp(-p_[1] * t);
    case Family::Sinusoidal: return p_[0] * std::sin(p_[1] * t + p_[2]);
    case Family::Polynomial: {
        double acc = 0.0;
        for (auto it = p_.rbegin(); it != p_.rend(); ++it)
            acc = acc * t + *it;
        return acc;
    }
    case Family::Table: {
        if (t <= knots_.front())
            return p_.front();
        if (t >= knots_.back())
            return p_.back();
        const auto hi = static_cast<std::size_t>(std::upper_bound(knots_.begin(), knots_.end(), t) - knots_.begin());
        const std::size_t lo = hi - 1;
        const double w = (t - knots_[lo]) / (knots_[hi] - knots_[lo]);
        return (1.0 - w) * p_[lo] + w * p_[hi];
    }
    }
    return 0.0;
}

double RateFunction::table_cumulative(double x) const {
    const double t0 = knots_.front();
    if (x <= t0)
        return p_.front() * (x - t0);
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < knots_.size(); ++k) {
        const double a = knots_[k];
        const double b = knots_[k + 1];
        if (x <= a)
            return acc;
        const double end = std::min(x, b);
        const double w = (end - a) / (b - a);
        const double v_end = (1.0 - w) * p_[k] + w * p_[k + 1];
        acc += 0.5 * (p_[k] + v_end) * (end - a);
        if (x <= b)
            return acc;
    }
    return acc + p_.back() * (x - knots_.back());
}

double RateFunction::primitive(double t) const {
    switch (family_) {
    case Family::Constant: return p_[0] * t;
    case Family::Exponential: {
        const double c = p_[0];
        const double r = p_[1];
        if (r == 0.0)
            return c * t;
        return -c * std::expm1(-r * t) / r;
    }
    case Family::Sinusoidal: {
        const double c = p_[0];
        const double w = p_[1];
        const double phi = p_[2];
        if (w == 0.0)
            return c * std::sin(phi) * t;
        // cos(phi) - cos(w t + phi) = 2 sin(w t/2 + phi) sin(w t/2)
        return 2.0 * c * std::sin(0.5 * w * t + phi) * std::sin(0.5 * w * t) / w;
    }
    case Family::Polynomial: {
        double acc = 0.0;
        for (std::size_t k = p_.size(); k-- > 0;)
            acc = acc * t + p_[k] / static_cast<double>(k + 1);
        return acc * t;
    }
    case Family::Table: return table_cumulative(t) - table_cumulative(0.0);
    }
    return 0.0;
}

RateFunction RateFunction::scaled(double s) const {
    RateFunction r = *this;
    switch (family_) {
    case Family::Constant:
    case Family::Exponential:
    case Family::Sinusoidal: r.p_[0] *= s; break;
    case Family::Polynomial:
    case Family::Table:
        for (double& v : r.p_)
            v *= s;
        break;
    }
    return r;
}

bool RateFunction::is_constant() const noexcept {
    switch (family_) {
    case Family::Constant: return true;
    case Family::Exponential: return p_[0] == 0.0 || p_[1] == 0.0;
    case Family::Sinusoidal: return p_[0] == 0.0 || p_[1] == 0.0;
    case Family::Polynomial: return std::all_of(p_.begin() + 1, p_.end(), [](double c) { return c == 0.0; });
    case Family::Table: return std::all_of(p_.begin(), p_.end(), [&](double v) { return v == p_.front(); });
    }
    return false;
}

const char* family_name(RateFunction::Family f) {
    switch (f) {
    case RateFunction::Family::Constant: return "constant";
    case RateFunction::Family::Exponential: return "exponential";
    case RateFunction::Family::Sinusoidal: return "sinusoidal";
    case RateFunction::Family::Polynomial: return "polynomial";
    case RateFunction::Family::Table: return "table";
    }
    return "unknown";
}

std::string RateFunction::describe() const {
    std::ostringstream os;
    os << family_name(family_) << "(";
    for (std::size_t k = 0; k < p_.size(); ++k)
        os << (k ? ", " : "") << p_[k];
    os << ")";
    return os.str();
}

} // namespace qdmap
