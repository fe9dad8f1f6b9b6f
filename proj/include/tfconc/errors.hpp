#pragma once

#include <stdexcept>
#include <string>

namespace tfconc {

// A sampled value came out non-finite (NaN/inf), or a computation left the
// representable domain.
class numeric_domain_error : public std::runtime_error {
public:
  explicit numeric_domain_error(const std::string& what) : std::runtime_error(what) {}
};

// Exponent outside the range where the operation is defined (p <= 1 for
// means/dispersions: the objective loses strict convexity and the minimizer
// can be non-unique).
class unsupported_exponent : public std::invalid_argument {
public:
  explicit unsupported_exponent(const std::string& what) : std::invalid_argument(what) {}
};

// A lattice atom does not fit the grid window with the required margin.
class out_of_window_error : public std::invalid_argument {
public:
  explicit out_of_window_error(const std::string& what) : std::invalid_argument(what) {}
};

// The halving search exhausted its iteration budget; carries the name of the
// bound that could not be met.
class construction_failure : public std::runtime_error {
public:
  construction_failure(const std::string& what, std::string condition)
      : std::runtime_error(what), violated_condition(std::move(condition)) {}
  std::string violated_condition;
};

// A stated hypothesis of the bound being evaluated does not hold.
class hypothesis_violation : public std::runtime_error {
public:
  explicit hypothesis_violation(const std::string& what) : std::runtime_error(what) {}
};

} // namespace tfconc
