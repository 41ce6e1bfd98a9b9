#pragma once

#include <stdexcept>
#include <string>

namespace seqmix {

/// Invalid model parameters or malformed data: dimension mismatches, broken
/// stochasticity invariants, unparseable files.
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

/// Unusable run configuration (bad hyperparameters, impossible shapes).
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// Numerical breakdown during inference: likelihood underflow, non-finite
/// quantities. The message names the failing step or sequence.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace seqmix
