#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "seqmix/entropy.hpp"
#include "seqmix/informational.hpp"
#include "seqmix/mixture.hpp"

namespace seqmix {

/// Per-sequence argmax of the responsibilities; ties break to the lowest
/// component index.
std::vector<int> hard_assignments(const EStepResult& estep);

/// Harmonic mean of homogeneity and completeness from the label/cluster
/// contingency table. 1 iff the clustering is a bijective relabeling of the
/// classes; invariant under permutations of either id space. Conventions:
/// 0 log 0 == 0, homogeneity is 1 when the class entropy is 0 (symmetrically
/// for completeness), and the value is 0 when both terms vanish.
double v_measure(const std::vector<int>& true_labels, const std::vector<int>& predicted,
                 double beta = 1.0);

/// What a fit actually ran with; lambda_resolved is set only for the
/// informational strategy.
struct ConfigSnapshot {
  int num_components = 0;
  int num_states = 0;
  MStepStrategy strategy = MStepStrategy::Standard;
  std::optional<double> lambda_resolved;
  bool gate_enabled = true;
  int max_iterations = 0;
  double rel_tol = 0.0;
  double init_dirichlet_alpha = 0.0;
  std::uint64_t seed = 0;
};

struct RunReport {
  std::optional<double> v_measure;  // present iff the dataset is labeled
  EntropyReport entropy;
  int iterations = 0;  // completed E/M pairs
  double final_log_likelihood = 0.0;
  std::vector<double> log_likelihood_history;  // one entry per E-step, in order
  std::uint64_t seed = 0;
  ConfigSnapshot config;
  /// Gate trace for the informational strategy, iteration-major then
  /// component-major. Empty otherwise.
  std::vector<GateDecision> gate_decisions;
};

}  // namespace seqmix
