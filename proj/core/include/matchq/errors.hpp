#pragma once

#include <stdexcept>
#include <string>

namespace matchq {

// Bad argument values: negative rates, out-of-range parameters, wrong order for an op.
struct DomainError : std::invalid_argument {
  explicit DomainError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Structurally valid rates that collapse the model (e.g. a 2v2 central queue with no
// individual arrivals degenerates to the 2-player game).
struct DegenerateModel : std::invalid_argument {
  explicit DegenerateModel(const std::string& msg) : std::invalid_argument(msg) {}
};

// Positive-recurrence condition violated; expected waits are unbounded.
struct Unstable : std::runtime_error {
  explicit Unstable(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed chain: unreachable states, reducible where irreducibility is required,
// absorption not certain, state budget exceeded.
struct ModelError : std::runtime_error {
  explicit ModelError(const std::string& msg) : std::runtime_error(msg) {}
};

// Linear solve failed or a solution violated its residual tolerance.
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

// Truncated-chain computation could not meet its boundary-mass target.
struct TruncationError : std::runtime_error {
  explicit TruncationError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace matchq
