#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "seqmix/types.hpp"

namespace seqmix {

/// E-step quantities for one sequence under one HMM.
///
/// gamma(m, j) is the posterior of being in state j at step m. xi[m](i, j) is
/// the joint posterior of states (i, j) at successive steps (m, m+1); there
/// are M-1 slices and each sums to 1. log_likelihood is log p(Y | params) in
/// nats, exact from the log-space forward pass.
struct PosteriorTables {
  Matrix gamma;
  std::vector<Matrix> xi;
  double log_likelihood = 0.0;
};

/// M x J matrix of log p(y_m | state j). Zero-probability emissions map to
/// -inf; no flooring is applied here. Throws ParameterError if the sequence
/// does not match the emission family or its dimensions.
Matrix log_emission_matrix(const HmmParams& params, const Sequence& seq);

/// Full log-space forward-backward pass. Transition probabilities are floored
/// at kTransitionFloor inside the recursion so that stored zero transitions do
/// not produce NaNs. Throws NumericalError naming the step index if the
/// forward mass vanishes at some step.
PosteriorTables forward_backward(const HmmParams& params, const Sequence& seq);

/// Forward pass only; equals forward_backward(...).log_likelihood.
double sequence_log_likelihood(const HmmParams& params, const Sequence& seq);

/// Draws a state path from (initial, transition) and observations from the
/// per-state emissions. Deterministic given the seed.
std::pair<Sequence, std::vector<int>> sample_sequence(const HmmParams& params, int length,
                                                      std::uint64_t seed);

/// Same, drawing from a caller-owned generator (used to sample many sequences
/// from one deterministic stream).
std::pair<Sequence, std::vector<int>> sample_sequence(const HmmParams& params, int length,
                                                      std::mt19937_64& rng);

}  // namespace seqmix
