#pragma once

#include <stdexcept>
#include <string>

namespace efx {

// Malformed or unsupported input (bad JSON, ragged matrix, wrong agent count).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller broke an operation's precondition.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An internal invariant failed. Never expected; carries whatever context
// the raiser could serialize (for the solver, the trace so far).
class DefectError : public std::logic_error {
 public:
  DefectError(const std::string& what, std::string context)
      : std::logic_error(what), context_(std::move(context)) {}
  const std::string& context() const noexcept { return context_; }

 private:
  std::string context_;
};

}  // namespace efx
