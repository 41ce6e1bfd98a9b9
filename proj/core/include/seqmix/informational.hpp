#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "seqmix/mixture.hpp"

namespace seqmix {

/// Configuration of the entropy-regularized M-step. lambda is the Dirichlet
/// prior strength on each row's most common transition; it must be >= 1
/// (lambda == 1 reduces exactly to the standard update). Empty lambda means
/// "resolve from the data": the common sequence length, or the mean length
/// rounded to the nearest integer for ragged data.
struct InformationalConfig {
  std::optional<double> lambda;
  bool gate_enabled = true;
};

/// One per-component gate outcome: entropy rate of the regularized candidate,
/// of the standard candidate, and which one was kept. chose_regularized holds
/// exactly when h_regularized < h_standard.
struct GateDecision {
  int component = 0;
  double h_regularized = 0.0;
  double h_standard = 0.0;
  bool chose_regularized = false;
};

/// Resolves the prior strength: explicit values pass through, empty resolves
/// to the sequence length (mean length rounded to nearest integer for ragged
/// data). Throws ConfigError if the result is < 1.
double resolve_lambda(const InformationalConfig& config, const SequenceDataset& data);

/// MAP transition update with the most-common-transition prior, gated per
/// component on the Markov-chain entropy rate: for each component both the
/// regularized and the standard transition matrix are computed and the one
/// with the lower entropy rate is kept. Mixing, initial and emission
/// parameters are updated exactly as in m_step_standard. With gate_enabled
/// false the regularized matrix is always kept and no decisions are recorded.
/// The decision list is ordered by component index.
std::pair<MixtureModel, std::vector<GateDecision>> m_step_informational(
    const EStepResult& estep, const SequenceDataset& data, const MixtureModel& previous,
    const InformationalConfig& config, std::vector<std::string>* warnings = nullptr);

}  // namespace seqmix
