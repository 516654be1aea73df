#pragma once

#include <stdexcept>
#include <string>

namespace ricciflow {

/// Malformed or out-of-contract input (bad indices, singular basis change,
/// non-SPD metric, dimension mismatch, non-nilpotent where nilpotency is
/// required).
class InvalidInput : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Evaluation point outside the domain of a closed-form expression.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Unknown catalog entry.
class NotFound : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};

} // namespace ricciflow
