#include "seqmix/mixture.hpp"

#include <cmath>
#include <sstream>

#include "seqmix/errors.hpp"
#include "seqmix/numeric.hpp"

namespace seqmix {

int MixtureModel::num_states() const {
  if (components.empty()) throw ParameterError("MixtureModel: no components");
  return components.front().num_states();
}

EmissionFamily MixtureModel::family() const {
  if (components.empty()) throw ParameterError("MixtureModel: no components");
  return family_of(components.front().emission);
}

void MixtureModel::validate() const {
  if (components.empty()) throw ParameterError("MixtureModel: at least one component required");
  if (mixing.size() != num_components()) {
    throw ParameterError("MixtureModel: mixing coefficient count must equal K");
  }
  double sum = 0.0;
  for (Eigen::Index k = 0; k < mixing.size(); ++k) {
    if (!(mixing(k) >= 0.0 && mixing(k) <= 1.0 + kProbTol)) {
      throw ParameterError("MixtureModel: mixing coefficients must lie in [0, 1]");
    }
    sum += mixing(k);
  }
  if (std::abs(sum - 1.0) > kProbTol) {
    std::ostringstream msg;
    msg << "MixtureModel: mixing coefficients sum to " << sum << ", expected 1";
    throw ParameterError(msg.str());
  }
  const EmissionFamily f = family();
  const int dims = emission_dims(components.front().emission);
  for (const HmmParams& component : components) {
    component.validate();
    if (family_of(component.emission) != f || emission_dims(component.emission) != dims) {
      throw ParameterError("MixtureModel: components must share emission family and dims");
    }
  }
}

std::string strategy_name(MStepStrategy strategy) {
  return strategy == MStepStrategy::Standard ? "standard" : "informational";
}

MStepStrategy strategy_from_name(const std::string& name) {
  if (name == "standard") return MStepStrategy::Standard;
  if (name == "informational") return MStepStrategy::Informational;
  throw ConfigError("unknown M-step strategy: '" + name + "'");
}

EStepResult e_step(const MixtureModel& model, const SequenceDataset& data) {
  model.validate();
  data.validate();
  const int n_seqs = data.num_sequences();
  const int n_comps = model.num_components();

  EStepResult result;
  result.responsibilities.resize(n_seqs, n_comps);
  result.posteriors.resize(n_seqs);
  result.total_log_likelihood = 0.0;

  const Vector log_mixing = model.mixing.array().log().matrix();
  Vector log_joint(n_comps);
  for (int n = 0; n < n_seqs; ++n) {
    result.posteriors[n].reserve(n_comps);
    for (int k = 0; k < n_comps; ++k) {
      try {
        result.posteriors[n].push_back(forward_backward(model.components[k], data.sequences[n]));
        log_joint(k) = log_mixing(k) + result.posteriors[n][k].log_likelihood;
      } catch (const NumericalError&) {
        // A single component may assign zero likelihood to this sequence; it
        // simply receives no responsibility.
        PosteriorTables empty;
        const int len = sequence_length(data.sequences[n]);
        empty.gamma = Matrix::Zero(len, model.num_states());
        empty.xi.assign(len - 1, Matrix::Zero(model.num_states(), model.num_states()));
        empty.log_likelihood = kNegInf;
        result.posteriors[n].push_back(std::move(empty));
        log_joint(k) = kNegInf;
      }
    }
    const double evidence = log_sum_exp(log_joint);
    if (evidence == kNegInf || std::isnan(evidence)) {
      std::ostringstream msg;
      msg << "likelihood underflow in every component for sequence " << n;
      throw NumericalError(msg.str());
    }
    result.responsibilities.row(n) = (log_joint.array() - evidence).exp().transpose();
    result.total_log_likelihood += evidence;
  }
  return result;
}

Matrix expected_transition_counts(const EStepResult& estep, int component) {
  const int n_seqs = static_cast<int>(estep.posteriors.size());
  if (n_seqs == 0) throw ParameterError("expected_transition_counts: empty E-step result");
  const int n_states = static_cast<int>(estep.posteriors.front().front().gamma.cols());
  Matrix counts = Matrix::Zero(n_states, n_states);
  for (int n = 0; n < n_seqs; ++n) {
    const double resp = estep.responsibilities(n, component);
    if (resp <= 0.0) continue;
    for (const Matrix& slice : estep.posteriors[n][component].xi) counts += resp * slice;
  }
  return counts;
}

namespace {

void warn(std::vector<std::string>* warnings, const std::string& message) {
  if (warnings != nullptr) warnings->push_back(message);
}

// Emission update for one component; states with zero occupancy keep the
// previous parameters.
EmissionParams update_emissions(const EStepResult& estep, const SequenceDataset& data,
                                int component, const HmmParams& previous,
                                std::vector<std::string>* warnings) {
  const int n_states = previous.num_states();
  const int n_seqs = data.num_sequences();
  Vector occupancy = Vector::Zero(n_states);

  auto for_each_weighted_step = [&](auto&& visit) {
    for (int n = 0; n < n_seqs; ++n) {
      const double resp = estep.responsibilities(n, component);
      if (resp <= 0.0) continue;
      const Matrix& gamma = estep.posteriors[n][component].gamma;
      for (int m = 0; m < gamma.rows(); ++m) {
        for (int j = 0; j < n_states; ++j) {
          const double w = resp * gamma(m, j);
          if (w > 0.0) visit(n, m, j, w);
        }
      }
    }
  };

  auto carry_note = [&](int state) {
    std::ostringstream msg;
    msg << "component " << component << ", state " << state
        << ": zero occupancy, keeping previous emission parameters";
    warn(warnings, msg.str());
  };

  if (const auto* prev = std::get_if<CategoricalEmission>(&previous.emission)) {
    Matrix weights = Matrix::Zero(n_states, prev->probs.cols());
    for_each_weighted_step([&](int n, int m, int j, double w) {
      const auto& symbols = std::get<CategoricalSeq>(data.sequences[n]);
      weights(j, symbols[m]) += w;
      occupancy(j) += w;
    });
    CategoricalEmission updated{prev->probs};
    for (int j = 0; j < n_states; ++j) {
      if (occupancy(j) > 0.0) {
        updated.probs.row(j) = weights.row(j) / occupancy(j);
      } else {
        carry_note(j);
      }
    }
    return updated;
  }

  if (const auto* prev = std::get_if<GaussianEmission>(&previous.emission)) {
    const int dims = static_cast<int>(prev->mean.cols());
    Matrix sum = Matrix::Zero(n_states, dims);
    for_each_weighted_step([&](int n, int m, int j, double w) {
      sum.row(j) += w * std::get<RealSeq>(data.sequences[n]).row(m);
      occupancy(j) += w;
    });
    GaussianEmission updated{prev->mean, prev->variance};
    for (int j = 0; j < n_states; ++j) {
      if (occupancy(j) > 0.0) updated.mean.row(j) = sum.row(j) / occupancy(j);
    }
    Matrix sq = Matrix::Zero(n_states, dims);
    for_each_weighted_step([&](int n, int m, int j, double w) {
      const Eigen::RowVectorXd diff =
          std::get<RealSeq>(data.sequences[n]).row(m) - updated.mean.row(j);
      sq.row(j) += w * diff.cwiseProduct(diff);
    });
    for (int j = 0; j < n_states; ++j) {
      if (occupancy(j) > 0.0) {
        updated.variance.row(j) =
            (sq.row(j) / occupancy(j)).cwiseMax(kVarianceFloor);
      } else {
        carry_note(j);
      }
    }
    return updated;
  }

  const auto& prev = std::get<PoissonEmission>(previous.emission);
  const int dims = static_cast<int>(prev.rate.cols());
  Matrix sum = Matrix::Zero(n_states, dims);
  for_each_weighted_step([&](int n, int m, int j, double w) {
    sum.row(j) += w * std::get<CountSeq>(data.sequences[n]).row(m).cast<double>();
    occupancy(j) += w;
  });
  PoissonEmission updated{prev.rate};
  for (int j = 0; j < n_states; ++j) {
    if (occupancy(j) > 0.0) {
      updated.rate.row(j) = (sum.row(j) / occupancy(j)).cwiseMax(kVarianceFloor);
    } else {
      carry_note(j);
    }
  }
  return updated;
}

}  // namespace

MixtureModel m_step_standard(const EStepResult& estep, const SequenceDataset& data,
                             const MixtureModel& previous, std::vector<std::string>* warnings) {
  const int n_comps = previous.num_components();
  const int n_states = previous.num_states();
  const int n_seqs = data.num_sequences();

  MixtureModel updated = previous;
  for (int k = 0; k < n_comps; ++k) {
    const double weight = estep.responsibilities.col(k).sum();
    updated.mixing(k) = weight / n_seqs;
    if (weight <= 0.0) {
      std::ostringstream msg;
      msg << "component " << k << ": zero total responsibility, keeping previous parameters";
      warn(warnings, msg.str());
      continue;
    }

    Vector initial_counts = Vector::Zero(n_states);
    for (int n = 0; n < n_seqs; ++n) {
      const double resp = estep.responsibilities(n, k);
      if (resp <= 0.0) continue;
      initial_counts += resp * estep.posteriors[n][k].gamma.row(0).transpose();
    }
    updated.components[k].initial = initial_counts / weight;

    const Matrix counts = expected_transition_counts(estep, k);
    for (int i = 0; i < n_states; ++i) {
      const double row_sum = counts.row(i).sum();
      if (row_sum > 0.0) {
        updated.components[k].transition.row(i) = counts.row(i) / row_sum;
      } else {
        std::ostringstream msg;
        msg << "component " << k << ", state " << i
            << ": zero transition occupancy, keeping previous row";
        warn(warnings, msg.str());
      }
    }

    updated.components[k].emission =
        update_emissions(estep, data, k, previous.components[k], warnings);
  }
  return updated;
}

namespace {

// Symmetric Dirichlet row via normalized gamma draws. Individual entries may
// underflow to zero at small alpha; a zero row sum forces a redraw.
Vector dirichlet_row(int size, double alpha, std::mt19937_64& rng) {
  std::gamma_distribution<double> gamma_draw(alpha, 1.0);
  Vector row(size);
  for (;;) {
    double sum = 0.0;
    for (int i = 0; i < size; ++i) {
      row(i) = gamma_draw(rng);
      sum += row(i);
    }
    if (sum > 0.0) return row / sum;
  }
}

double jitter(double value, double relative, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  return value * (1.0 + relative * unit(rng));
}

void check_finite_moment(double value) {
  if (!std::isfinite(value)) {
    throw NumericalError("non-finite data moments; observation magnitudes overflow doubles");
  }
}

// Global data moments, perturbed per component so that EM can break symmetry.
EmissionParams init_emissions(const SequenceDataset& data, int n_states, std::mt19937_64& rng) {
  const EmissionFamily f = data.family();
  const int dims = data.dims();

  if (f == EmissionFamily::Categorical) {
    Vector freq = Vector::Constant(dims, 1.0);  // add-one smoothing over the alphabet
    for (const Sequence& seq : data.sequences) {
      for (int symbol : std::get<CategoricalSeq>(seq)) freq(symbol) += 1.0;
    }
    Matrix probs(n_states, dims);
    for (int j = 0; j < n_states; ++j) {
      for (int d = 0; d < dims; ++d) probs(j, d) = jitter(freq(d), 0.1, rng);
      probs.row(j) /= probs.row(j).sum();
    }
    return CategoricalEmission{probs};
  }

  if (f == EmissionFamily::Gaussian) {
    Vector mean = Vector::Zero(dims);
    Vector sq = Vector::Zero(dims);
    double count = 0.0;
    for (const Sequence& seq : data.sequences) {
      const auto& values = std::get<RealSeq>(seq);
      mean += values.colwise().sum().transpose();
      sq += values.array().square().colwise().sum().matrix().transpose();
      count += static_cast<double>(values.rows());
    }
    mean /= count;
    Vector variance =
        (sq / count - mean.cwiseProduct(mean)).cwiseMax(kVarianceFloor);
    for (int d = 0; d < dims; ++d) {
      check_finite_moment(mean(d));
      check_finite_moment(variance(d));
    }
    GaussianEmission emission{Matrix(n_states, dims), Matrix(n_states, dims)};
    for (int j = 0; j < n_states; ++j) {
      for (int d = 0; d < dims; ++d) {
        const double spread = std::sqrt(variance(d));
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        emission.mean(j, d) = mean(d) + 0.1 * spread * unit(rng);
        emission.variance(j, d) = std::max(jitter(variance(d), 0.1, rng), kVarianceFloor);
      }
    }
    return emission;
  }

  Vector mean = Vector::Zero(dims);
  double count = 0.0;
  for (const Sequence& seq : data.sequences) {
    const auto& counts = std::get<CountSeq>(seq);
    mean += counts.cast<double>().colwise().sum().transpose();
    count += static_cast<double>(counts.rows());
  }
  mean /= count;
  for (int d = 0; d < dims; ++d) check_finite_moment(mean(d));
  PoissonEmission emission{Matrix(n_states, dims)};
  for (int j = 0; j < n_states; ++j) {
    for (int d = 0; d < dims; ++d) {
      emission.rate(j, d) = std::max(jitter(mean(d), 0.1, rng), kVarianceFloor);
    }
  }
  return emission;
}

}  // namespace

MixtureModel init_model(int num_components, int num_states, const SequenceDataset& data,
                        const FitConfig& config) {
  data.validate();
  if (num_components < 1) throw ConfigError("init_model: at least one component required");
  if (num_states < 1) throw ConfigError("init_model: at least one state required");
  if (config.init_dirichlet_alpha <= 0.0) {
    throw ConfigError("init_model: Dirichlet concentration must be positive");
  }

  std::mt19937_64 rng(config.seed);
  MixtureModel model;
  model.mixing = Vector::Constant(num_components, 1.0 / num_components);
  model.components.reserve(num_components);
  for (int k = 0; k < num_components; ++k) {
    HmmParams params;
    params.initial = dirichlet_row(num_states, 1.0, rng);
    params.transition.resize(num_states, num_states);
    for (int i = 0; i < num_states; ++i) {
      params.transition.row(i) =
          dirichlet_row(num_states, config.init_dirichlet_alpha, rng).transpose();
    }
    params.emission = init_emissions(data, num_states, rng);
    model.components.push_back(std::move(params));
  }
  model.validate();
  return model;
}

}  // namespace seqmix
