#pragma once

#include <stdexcept>
#include <string>

namespace edgecontract {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parameter set violates a structural invariant (probabilities, orderings, signs).
struct InvalidParams : Error {
  using Error::Error;
};

/// The closed-form contract does not apply (needs eta1 > eta3 and theta_L > beta_H * theta_H).
struct AdmissibilityError : Error {
  using Error::Error;
};

struct EmptyFeasibleSet : Error {
  using Error::Error;
};

/// A score at or below the performance threshold reached a log term.
struct DomainError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

struct InstanceTooLarge : Error {
  using Error::Error;
};

struct MissingLabel : Error {
  using Error::Error;
};

struct TransportError : Error {
  using Error::Error;
};

struct MalformedResponse : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace edgecontract
