#include "seqmix/fit.hpp"

#include <cmath>
#include <sstream>

#include "seqmix/errors.hpp"
#include "seqmix/informational.hpp"

namespace seqmix {

std::pair<MixtureModel, RunReport> fit(const SequenceDataset& data, int num_components,
                                       int num_states, const FitConfig& config,
                                       const std::optional<MixtureModel>& initial) {
  data.validate();
  if (config.max_iterations < 1) throw ConfigError("fit: max_iterations must be >= 1");
  if (!(config.rel_tol > 0.0)) throw ConfigError("fit: rel_tol must be positive");
  if (num_components > data.num_sequences()) {
    std::ostringstream msg;
    msg << "fit: " << num_components << " components but only " << data.num_sequences()
        << " sequences";
    throw ConfigError(msg.str());
  }

  InformationalConfig info_config{config.lambda, config.gate_enabled};
  std::optional<double> lambda_resolved;
  if (config.strategy == MStepStrategy::Informational) {
    lambda_resolved = resolve_lambda(info_config, data);  // validates lambda >= 1 up front
  }

  MixtureModel model =
      initial ? *initial : init_model(num_components, num_states, data, config);
  model.validate();
  if (model.num_components() != num_components || model.num_states() != num_states) {
    throw ConfigError("fit: initial model shape does not match K and J");
  }

  RunReport report;
  report.seed = config.seed;
  report.config = {num_components,
                   num_states,
                   config.strategy,
                   lambda_resolved,
                   config.gate_enabled,
                   config.max_iterations,
                   config.rel_tol,
                   config.init_dirichlet_alpha,
                   config.seed};

  EStepResult estep = e_step(model, data);
  report.log_likelihood_history.push_back(estep.total_log_likelihood);

  int iterations = 0;
  while (iterations < config.max_iterations) {
    if (config.strategy == MStepStrategy::Standard) {
      model = m_step_standard(estep, data, model);
    } else {
      auto [updated, decisions] = m_step_informational(estep, data, model, info_config);
      model = std::move(updated);
      report.gate_decisions.insert(report.gate_decisions.end(), decisions.begin(),
                                   decisions.end());
    }
    ++iterations;

    const double previous_ll = estep.total_log_likelihood;
    estep = e_step(model, data);
    const double current_ll = estep.total_log_likelihood;
    report.log_likelihood_history.push_back(current_ll);
    if (!std::isfinite(current_ll)) {
      std::ostringstream msg;
      msg << "non-finite log-likelihood at iteration " << iterations;
      throw NumericalError(msg.str());
    }
    if (std::abs(current_ll - previous_ll) < config.rel_tol * std::abs(previous_ll)) break;
  }

  report.iterations = iterations;
  report.final_log_likelihood = estep.total_log_likelihood;
  report.entropy = model_entropy(model);
  if (data.labels) {
    report.v_measure = v_measure(*data.labels, hard_assignments(estep));
  }
  return {std::move(model), std::move(report)};
}

}  // namespace seqmix
