#pragma once

#include <stdexcept>
#include <string>

namespace qbailey {

// Failure classes for exact-series computations. Every throwing site names
// the offending value so callers can surface the first bad input verbatim.
enum class ErrorKind {
    OutOfWindow,            // coefficient requested at/above validTo
    NonInvertible,          // lowest coefficient not a unit
    UndefinedSubstitution,  // q -> -q^k on a genuinely fractional exponent
    InsufficientOrder,      // comparison bound exceeds guaranteed validity
    DivergentProduct,       // infinite product whose factors do not shrink
    DegenerateParameter,    // parameter value that makes a formula singular
    UnsupportedParameter,   // value off the exponent lattice / non-monomial
    WrongParameter,         // operation applied to a pair it is not defined for
    SingularSpecialization, // pole inside the contributing range of a sum
    Divergence,             // frontier of a lattice sum fails to grow
};

inline const char* errorKindName(ErrorKind k) {
    switch (k) {
        case ErrorKind::OutOfWindow: return "out-of-window";
        case ErrorKind::NonInvertible: return "non-invertible";
        case ErrorKind::UndefinedSubstitution: return "undefined-substitution";
        case ErrorKind::InsufficientOrder: return "insufficient-order";
        case ErrorKind::DivergentProduct: return "divergent-product";
        case ErrorKind::DegenerateParameter: return "degenerate-parameter";
        case ErrorKind::UnsupportedParameter: return "unsupported-parameter";
        case ErrorKind::WrongParameter: return "wrong-parameter";
        case ErrorKind::SingularSpecialization: return "singular-specialization";
        case ErrorKind::Divergence: return "divergence";
    }
    return "unknown";
}

class ComputationError : public std::runtime_error {
public:
    ComputationError(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw ComputationError(kind, what);
}

} // namespace qbailey
