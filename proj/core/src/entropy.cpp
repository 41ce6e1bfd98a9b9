#include "seqmix/entropy.hpp"

#include <cmath>
#include <sstream>

#include "seqmix/errors.hpp"
#include "seqmix/numeric.hpp"

namespace seqmix {

namespace {

void check_row_stochastic(const Matrix& transition) {
  if (transition.rows() != transition.cols() || transition.rows() < 1) {
    throw ParameterError("transition matrix must be square and nonempty");
  }
  for (Eigen::Index i = 0; i < transition.rows(); ++i) {
    double sum = 0.0;
    for (Eigen::Index j = 0; j < transition.cols(); ++j) {
      const double p = transition(i, j);
      if (!(p >= -kProbTol && p <= 1.0 + kProbTol)) {
        std::ostringstream msg;
        msg << "transition entry (" << i << ", " << j << ") = " << p << " is not a probability";
        throw ParameterError(msg.str());
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > kProbTol) {
      std::ostringstream msg;
      msg << "transition row " << i << " sums to " << sum << ", expected 1 within " << kProbTol;
      throw ParameterError(msg.str());
    }
  }
}

}  // namespace

StationaryDistribution stationary_distribution(const Matrix& transition) {
  check_row_stochastic(transition);
  const Eigen::Index n = transition.rows();

  // Stack mu'(A - I) = 0 with the normalization sum(mu) = 1 and take the
  // least-squares solution. A rank-deficient stack means the chain has more
  // than one stationary distribution; the minimum-norm solution is returned
  // and flagged.
  Matrix stacked(n + 1, n);
  stacked.topRows(n) = transition.transpose() - Matrix::Identity(n, n);
  stacked.row(n).setOnes();
  Vector rhs = Vector::Zero(n + 1);
  rhs(n) = 1.0;

  Eigen::CompleteOrthogonalDecomposition<Matrix> decomposition(stacked);
  StationaryDistribution result;
  result.non_unique = decomposition.rank() < n;
  result.mu = decomposition.solve(rhs);

  // Exact solutions are nonnegative; trim solver noise and renormalize.
  result.mu = result.mu.cwiseMax(0.0);
  result.mu /= result.mu.sum();

  const double residual = (transition.transpose() * result.mu - result.mu).lpNorm<Eigen::Infinity>();
  if (!(residual <= 1e-8)) {
    std::ostringstream msg;
    msg << "stationary distribution residual " << residual << " exceeds 1e-8";
    throw NumericalError(msg.str());
  }
  return result;
}

double entropy_rate(const Matrix& transition) {
  const StationaryDistribution stationary = stationary_distribution(transition);
  double entropy = 0.0;
  for (Eigen::Index i = 0; i < transition.rows(); ++i) {
    double row_entropy = 0.0;
    for (Eigen::Index j = 0; j < transition.cols(); ++j) {
      row_entropy -= xlogx(std::max(transition(i, j), 0.0));
    }
    entropy += stationary.mu(i) * row_entropy;
  }
  return std::max(entropy, 0.0);
}

EntropyReport model_entropy(const MixtureModel& model) {
  model.validate();
  const int n_states = model.num_states();
  const double log_states = std::log(static_cast<double>(n_states));

  EntropyReport report;
  for (const HmmParams& component : model.components) {
    const double nats = entropy_rate(component.transition);
    report.per_component_nats.push_back(nats);
    // A single-state chain carries no transition uncertainty at all.
    report.per_component_normalized.push_back(n_states == 1 ? 0.0 : nats / log_states);
  }
  double sum = 0.0;
  for (double v : report.per_component_normalized) sum += v;
  report.model_average_normalized = sum / static_cast<double>(model.num_components());
  return report;
}

double transition_inner_product(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ParameterError("transition_inner_product: shape mismatch");
  }
  return a.cwiseProduct(b).sum();
}

}  // namespace seqmix
