#include "seqmix/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "seqmix/errors.hpp"

namespace seqmix {

double median(std::vector<double> values) {
  if (values.empty()) throw ParameterError("median of an empty set");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return 0.5 * (values[mid - 1] + values[mid]);
}

ComparisonTable run_comparison(const SequenceDataset& data, int num_components, int num_states,
                               const std::vector<MStepStrategy>& methods,
                               const std::vector<std::uint64_t>& seeds, const FitConfig& base) {
  if (methods.empty()) throw ConfigError("run_comparison: at least one method required");
  if (seeds.empty()) throw ConfigError("run_comparison: at least one seed required");

  ComparisonTable table;
  for (MStepStrategy method : methods) {
    MethodSummary summary;
    summary.method = method;
    std::vector<double> v_values;
    std::vector<double> entropy_values;
    std::vector<double> iteration_values;
    for (std::uint64_t seed : seeds) {
      FitConfig config = base;
      config.strategy = method;
      config.seed = seed;
      auto [model, report] = fit(data, num_components, num_states, config);
      if (report.v_measure) v_values.push_back(*report.v_measure);
      entropy_values.push_back(report.entropy.model_average_normalized);
      iteration_values.push_back(static_cast<double>(report.iterations));
      summary.runs.push_back(std::move(report));
    }
    if (!v_values.empty()) summary.median_v_measure = median(v_values);
    summary.median_entropy = median(entropy_values);
    summary.median_iterations = median(iteration_values);
    table.rows.push_back(std::move(summary));
  }
  return table;
}

namespace {

std::string percent_cell(double value) {
  return std::to_string(static_cast<long>(std::lround(value * 100.0)));
}

std::string percent_cell(const std::optional<double>& value) {
  return value ? percent_cell(*value) : "-";
}

}  // namespace

std::string render_comparison(const ComparisonTable& table) {
  std::ostringstream out;
  out << std::left << std::setw(16) << "method" << std::right << std::setw(12) << "v-measure %"
      << std::setw(12) << "entropy %" << std::setw(12) << "iterations" << "\n";
  for (const MethodSummary& row : table.rows) {
    std::ostringstream iter;
    iter << row.median_iterations;
    out << std::left << std::setw(16) << strategy_name(row.method) << std::right << std::setw(12)
        << percent_cell(row.median_v_measure) << std::setw(12)
        << percent_cell(row.median_entropy) << std::setw(12) << iter.str() << "\n";
  }
  return out.str();
}

std::string comparison_to_json(const ComparisonTable& table) {
  using nlohmann::json;
  json doc;
  doc["format"] = "seqmix-comparison";
  doc["version"] = 1;
  json rows = json::array();
  for (const MethodSummary& row : table.rows) {
    json r;
    r["method"] = strategy_name(row.method);
    r["median_v_measure"] = row.median_v_measure ? json(*row.median_v_measure) : json(nullptr);
    r["median_entropy"] = row.median_entropy;
    r["median_iterations"] = row.median_iterations;
    json seeds = json::array();
    json v = json::array();
    json entropy = json::array();
    json iterations = json::array();
    for (const RunReport& run : row.runs) {
      seeds.push_back(run.seed);
      v.push_back(run.v_measure ? json(*run.v_measure) : json(nullptr));
      entropy.push_back(run.entropy.model_average_normalized);
      iterations.push_back(run.iterations);
    }
    r["seeds"] = std::move(seeds);
    r["v_measure"] = std::move(v);
    r["entropy"] = std::move(entropy);
    r["iterations"] = std::move(iterations);
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

}  // namespace seqmix
