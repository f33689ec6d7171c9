#pragma once

#include <stdexcept>
#include <string>

namespace ballcert {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or out-of-contract input (bad surd triple, unparsable decimal, ...).
class InputError : public Error {
public:
    explicit InputError(const std::string& what) : Error(what) {}
};

/// Q = 0 in a surd triple.
class ZeroDenominator : public InputError {
public:
    ZeroDenominator() : InputError("surd denominator Q must be non-zero") {}
};

/// D is a perfect square, so (P+sqrt(D))/Q is rational and not a surd.
class PerfectSquare : public InputError {
public:
    explicit PerfectSquare(const std::string& what) : InputError(what) {}
};

/// Argument outside the mathematical domain of a function (sqrt of a
/// negative enclosure, G(x) with x <= 1, ...).
class DomainViolation : public Error {
public:
    explicit DomainViolation(const std::string& what) : Error(what) {}
};

/// tan() over an enclosure that may contain an odd multiple of pi/2.
class PoleInEnclosure : public DomainViolation {
public:
    PoleInEnclosure() : DomainViolation("tan: enclosure may contain a pole") {}
};

/// Area below the admissible threshold 8*omega_3.
class AreaTooSmall : public Error {
public:
    explicit AreaTooSmall(const std::string& what) : Error(what) {}
};

/// The adaptive precision ladder reached its cap without a decision.
class PrecisionExhausted : public Error {
public:
    explicit PrecisionExhausted(const std::string& what) : Error(what) {}
};

} // namespace ballcert
