#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace levelset {

// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// The sublevel set {x : g(x) <= 1} is not compact (g is not strictly
// positive on the unit sphere), so Lebesgue moments do not exist.
class NotCompact : public Error {
public:
    explicit NotCompact(const std::string& what) : Error(what) {}
};

// Malformed input: bad JSON, wrong-degree exponents, duplicate terms, ...
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

// A required moment entry is absent. Carries every missing index so the
// caller can report them all at once.
class MissingMoment : public Error {
public:
    MissingMoment(const std::string& what, std::vector<std::vector<int>> missing)
        : Error(what), missing_(std::move(missing)) {}

    const std::vector<std::vector<int>>& missing() const { return missing_; }

private:
    std::vector<std::vector<int>> missing_;
};

// The recovery system is singular or numerically indistinguishable from
// singular (condition estimate above the configured limit).
class SingularMatrix : public Error {
public:
    explicit SingularMatrix(const std::string& what) : Error(what) {}
};

// Monte Carlo rejection sampling accepted no (or almost no) points.
class DegenerateSampling : public Error {
public:
    explicit DegenerateSampling(const std::string& what) : Error(what) {}
};

// An index family with fewer rows than unknown coefficients.
class UnderdeterminedFamily : public Error {
public:
    explicit UnderdeterminedFamily(const std::string& what) : Error(what) {}
};

// Vector length does not match the ambient dimension.
class DimensionMismatch : public Error {
public:
    explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

} // namespace levelset
