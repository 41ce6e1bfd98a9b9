#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "seqmix/eval.hpp"
#include "seqmix/fit.hpp"

namespace seqmix {

/// One table row: a method's runs over all seeds plus the medians the result
/// tables report.
struct MethodSummary {
  MStepStrategy method = MStepStrategy::Standard;
  std::vector<RunReport> runs;  // ordered by seed
  std::optional<double> median_v_measure;
  double median_entropy = 0.0;    // model-average normalized entropy
  double median_iterations = 0.0;
};

struct ComparisonTable {
  std::vector<MethodSummary> rows;
};

double median(std::vector<double> values);

/// Runs every (method, seed) pair with the shared base configuration and
/// summarizes per method. Row order follows `methods`; runs are ordered by
/// seed. Deterministic.
ComparisonTable run_comparison(const SequenceDataset& data, int num_components, int num_states,
                               const std::vector<MStepStrategy>& methods,
                               const std::vector<std::uint64_t>& seeds, const FitConfig& base);

/// Aligned plain-text rendering with whole-percent cells, mirroring the
/// {method, v-measure %, entropy %, iterations} table layout.
std::string render_comparison(const ComparisonTable& table);

std::string comparison_to_json(const ComparisonTable& table);

}  // namespace seqmix
