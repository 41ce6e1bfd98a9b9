#include "seqmix/informational.hpp"

#include <cmath>

#include "seqmix/entropy.hpp"
#include "seqmix/errors.hpp"

namespace seqmix {

double resolve_lambda(const InformationalConfig& config, const SequenceDataset& data) {
  double lambda = 0.0;
  if (config.lambda.has_value()) {
    lambda = *config.lambda;
  } else {
    data.validate();
    double total = 0.0;
    int min_len = sequence_length(data.sequences.front());
    int max_len = min_len;
    for (const Sequence& seq : data.sequences) {
      const int len = sequence_length(seq);
      total += len;
      min_len = std::min(min_len, len);
      max_len = std::max(max_len, len);
    }
    lambda = (min_len == max_len)
                 ? static_cast<double>(max_len)
                 : static_cast<double>(std::llround(total / data.num_sequences()));
  }
  if (!(lambda >= 1.0)) {
    throw ConfigError("informational M-step requires lambda >= 1 (got " +
                      std::to_string(lambda) + ")");
  }
  return lambda;
}

std::pair<MixtureModel, std::vector<GateDecision>> m_step_informational(
    const EStepResult& estep, const SequenceDataset& data, const MixtureModel& previous,
    const InformationalConfig& config, std::vector<std::string>* warnings) {
  const double lambda = resolve_lambda(config, data);
  const int n_states = previous.num_states();

  // Mixing, initial and emission updates are shared with the standard step;
  // only the transition matrices compete.
  MixtureModel updated = m_step_standard(estep, data, previous, warnings);

  std::vector<GateDecision> decisions;
  for (int k = 0; k < previous.num_components(); ++k) {
    const Matrix& standard_transition = updated.components[k].transition;
    const Matrix counts = expected_transition_counts(estep, k);

    // MAP row update: the most common transition of each row gets the extra
    // prior mass lambda - 1. Rows with no occupancy keep the standard (i.e.
    // carried-over) row so both candidates agree there.
    Matrix regularized = standard_transition;
    for (int i = 0; i < n_states; ++i) {
      const double row_sum = counts.row(i).sum();
      if (row_sum <= 0.0) continue;
      int most_common = 0;
      for (int j = 1; j < n_states; ++j) {
        if (counts(i, j) > counts(i, most_common)) most_common = j;
      }
      for (int j = 0; j < n_states; ++j) {
        const double prior = (j == most_common) ? lambda - 1.0 : 0.0;
        regularized(i, j) = (prior + counts(i, j)) / ((lambda - 1.0) + row_sum);
      }
    }

    const double h_regularized = entropy_rate(regularized);
    const double h_standard = entropy_rate(standard_transition);
    if (config.gate_enabled) {
      const bool chose = h_regularized < h_standard;
      if (chose) updated.components[k].transition = regularized;
      decisions.push_back({k, h_regularized, h_standard, chose});
    } else {
      updated.components[k].transition = regularized;
    }
  }
  return {std::move(updated), std::move(decisions)};
}

}  // namespace seqmix
