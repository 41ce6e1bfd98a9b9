#pragma once

#include <optional>
#include <utility>

#include "seqmix/datasets.hpp"
#include "seqmix/eval.hpp"
#include "seqmix/mixture.hpp"

namespace seqmix {

/// EM training loop: alternates e_step with the configured M-step until the
/// relative log-likelihood change drops below config.rel_tol or
/// config.max_iterations complete E/M pairs have run. A final E-step (not
/// counted) supplies the reported log-likelihood and, when labels are
/// present, the v-measure of the hard assignments. Deterministic given
/// config.seed. An explicit initial model bypasses init_model.
std::pair<MixtureModel, RunReport> fit(const SequenceDataset& data, int num_components,
                                       int num_states, const FitConfig& config,
                                       const std::optional<MixtureModel>& initial = std::nullopt);

}  // namespace seqmix
