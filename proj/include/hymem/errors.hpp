#pragma once
#include <stdexcept>
#include <string>

namespace hymem {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Domain construction.
struct OrderError : Error { using Error::Error; };
struct ContiguityError : Error { using Error::Error; };
struct AnchorError : Error { using Error::Error; };

// Arc / signal access.
struct OutOfDomain : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };

// Simulation.
struct BadInitial : Error { using Error::Error; };
struct NoBracket : Error { using Error::Error; };
struct EmptyFlowSet : Error { using Error::Error; };
struct EmptyJumpSet : Error { using Error::Error; };

// Scalar conditions and builders.
struct DomainError : Error { using Error::Error; };
struct ParamError : Error { using Error::Error; };
struct NonFiniteValue : Error { using Error::Error; };
struct SchemaError : Error { using Error::Error; };

}  // namespace hymem
