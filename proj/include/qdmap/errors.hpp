#pragma once

#include <stdexcept>
#include <string>

namespace qdmap {

// Base for every failure raised by the library. The CLI maps subclasses of
// NumericalError to exit code 3 and everything else to 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class NotHermitian : public Error {
public:
    using Error::Error;
};

class NotAState : public Error {
public:
    using Error::Error;
};

class NotUnitary : public Error {
public:
    using Error::Error;
};

class NotHermiticityPreserving : public Error {
public:
    using Error::Error;
};

class BadProbabilityVector : public Error {
public:
    using Error::Error;
};

class NegativeInput : public Error {
public:
    using Error::Error;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

class NotCP : public NumericalError {
public:
    NotCP(const std::string& what, double min_eig) : NumericalError(what), min_eig_(min_eig) {}
    double min_eigenvalue() const noexcept { return min_eig_; }

private:
    double min_eig_;
};

class SingularMap : public NumericalError {
public:
    SingularMap(const std::string& what, double cond) : NumericalError(what), cond_(cond) {}
    double condition_number() const noexcept { return cond_; }

private:
    double cond_;
};

class NotCommutative : public NumericalError {
public:
    NotCommutative(const std::string& what, double defect) : NumericalError(what), defect_(defect) {}
    double defect() const noexcept { return defect_; }

private:
    double defect_;
};

class DegenerateTime : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class ConstructionFailed : public NumericalError {
public:
    using NumericalError::NumericalError;
};

} // namespace qdmap
