#pragma once

#include <vector>

#include "seqmix/mixture.hpp"
#include "seqmix/types.hpp"

namespace seqmix {

/// Stationary distribution mu with mu' A = mu'. For reducible or periodic
/// chains where the solution is not unique, mu is the minimum-norm
/// least-squares solution and non_unique is set.
struct StationaryDistribution {
  Vector mu;
  bool non_unique = false;
};

/// Per-component entropy rates in nats, the same normalized by log J (so the
/// uniform matrix scores 1), and their arithmetic mean across components.
struct EntropyReport {
  std::vector<double> per_component_nats;
  std::vector<double> per_component_normalized;
  double model_average_normalized = 0.0;
};

/// Solves mu'(A - I) = 0 with sum(mu) = 1 by a direct least-squares solve of
/// the stacked (J+1)-equation system. Throws ParameterError if A is not
/// row-stochastic within kProbTol.
StationaryDistribution stationary_distribution(const Matrix& transition);

/// Markov-chain entropy rate -sum_i mu_i sum_j A_ij log A_ij in nats, with
/// 0 log 0 == 0. Always in [0, log J].
double entropy_rate(const Matrix& transition);

EntropyReport model_entropy(const MixtureModel& model);

/// Frobenius inner product sum_ij A1_ij * A2_ij; zero iff the transition
/// supports are disjoint.
double transition_inner_product(const Matrix& a, const Matrix& b);

}  // namespace seqmix
