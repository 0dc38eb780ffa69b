#pragma once

#include <stdexcept>
#include <string>

namespace saltbox {

/// Base class for every error this library reports.
class SaltboxError : public std::runtime_error {
public:
    explicit SaltboxError(const std::string& what) : std::runtime_error(what) {}
};

/// A parameter or argument falls outside the admissible domain.
/// The message names the clause that failed.
class DomainViolation : public SaltboxError {
public:
    explicit DomainViolation(const std::string& what) : SaltboxError(what) {}
};

/// An input that must be a finite real is NaN or infinite.
class NonFinite : public SaltboxError {
public:
    explicit NonFinite(const std::string& what) : SaltboxError(what) {}
};

/// The two roof heights are (near-)equal, so no finite triangle apex exists.
/// Callers fall back to the shed-flat closed form.
class FlatShape : public SaltboxError {
public:
    explicit FlatShape(const std::string& what) : SaltboxError(what) {}
};

/// A truncation window carries (near-)zero probability mass.
class DegenerateWindow : public SaltboxError {
public:
    explicit DegenerateWindow(const std::string& what) : SaltboxError(what) {}
};

/// Bisection was asked for a target outside [F(lo), F(hi)].
class BracketViolation : public SaltboxError {
public:
    explicit BracketViolation(const std::string& what) : SaltboxError(what) {}
};

/// Adaptive quadrature exhausted its subdivision depth.
class NoConvergence : public SaltboxError {
public:
    explicit NoConvergence(const std::string& what) : SaltboxError(what) {}
};

/// A statistic was requested over an empty sample.
class EmptySample : public SaltboxError {
public:
    explicit EmptySample(const std::string& what) : SaltboxError(what) {}
};

} // namespace saltbox
