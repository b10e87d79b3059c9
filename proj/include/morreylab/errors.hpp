#pragma once

#include <stdexcept>
#include <string>

namespace morreylab {

/// A violated precondition on a parameter (alpha out of range, bad grid level, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A weight (or a power of one) fails to be integrable over some cube.
class NotIntegrableError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A lemma or diagnostic was invoked on inputs outside its hypotheses.
class HypothesisError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed CSV, spec string or config file.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace morreylab
