#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "seqmix/datasets.hpp"
#include "seqmix/hmm.hpp"
#include "seqmix/types.hpp"

namespace seqmix {

/// K HMM components plus mixing coefficients. All components share one
/// emission family and observation dimensionality.
struct MixtureModel {
  Vector mixing;
  std::vector<HmmParams> components;

  int num_components() const { return static_cast<int>(components.size()); }
  int num_states() const;
  EmissionFamily family() const;
  void validate() const;
};

/// E-step outputs over a dataset. responsibilities(n, k) is the posterior of
/// sequence n belonging to component k. posteriors[n][k] holds the unweighted
/// per-component tables; the responsibility weighting is applied where the
/// M-step consumes them. total_log_likelihood is the mixture evidence
/// sum_n log sum_k pi_k p(Y_n | k).
struct EStepResult {
  Matrix responsibilities;
  std::vector<std::vector<PosteriorTables>> posteriors;
  double total_log_likelihood = 0.0;
};

enum class MStepStrategy { Standard, Informational };

std::string strategy_name(MStepStrategy strategy);
MStepStrategy strategy_from_name(const std::string& name);

struct FitConfig {
  int max_iterations = 100;
  double rel_tol = 1e-4;  // on the relative log-likelihood change
  std::uint64_t seed = 0;
  double init_dirichlet_alpha = 0.1;
  MStepStrategy strategy = MStepStrategy::Standard;
  /// Prior strength for the informational M-step; empty means "resolve from
  /// the data" (sequence length, see resolve_lambda).
  std::optional<double> lambda;
  bool gate_enabled = true;
};

EStepResult e_step(const MixtureModel& model, const SequenceDataset& data);

/// Responsibility-weighted sums of the pairwise posteriors for one component:
/// entry (i, j) accumulates resp(n, k) * xi_n[m](i, j) over all n and m.
Matrix expected_transition_counts(const EStepResult& estep, int component);

/// Closed-form maximization step. States (or whole components) with zero
/// occupancy keep their previous parameters; a note is appended to *warnings
/// when given.
MixtureModel m_step_standard(const EStepResult& estep, const SequenceDataset& data,
                             const MixtureModel& previous,
                             std::vector<std::string>* warnings = nullptr);

/// Transition rows from symmetric Dirichlet(init_dirichlet_alpha), initial
/// distributions from Dirichlet(1), uniform mixing, emissions from global
/// data moments jittered per component. Deterministic given config.seed.
MixtureModel init_model(int num_components, int num_states, const SequenceDataset& data,
                        const FitConfig& config);

}  // namespace seqmix
