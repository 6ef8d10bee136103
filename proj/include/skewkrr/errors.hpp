#pragma once

#include <stdexcept>
#include <string>

namespace skewkrr {

// Caller passed something outside an operation's contract.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Degenerate or malformed data (all-identical predictors, bad CSV cells).
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Partition construction cannot produce a usable plan.
struct PlanError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Factorization failure that survived the jitter retries.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double attempted_jitter)
      : std::runtime_error(what), attempted_jitter_(attempted_jitter) {}

  double attempted_jitter() const noexcept { return attempted_jitter_; }

 private:
  double attempted_jitter_;
};

}  // namespace skewkrr
