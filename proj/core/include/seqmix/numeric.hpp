#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>

namespace seqmix {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// x * log(x) with the convention 0 * log 0 == 0.
inline double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

/// log(sum(exp(values))), stable in log space. Returns -inf when every entry
/// is -inf.
template <typename Derived>
double log_sum_exp(const Eigen::MatrixBase<Derived>& values) {
  const double max_value = values.maxCoeff();
  if (max_value == kNegInf) return kNegInf;
  return max_value + std::log((values.derived().array() - max_value).exp().sum());
}

}  // namespace seqmix
