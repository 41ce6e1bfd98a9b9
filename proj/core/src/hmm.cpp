#include "seqmix/hmm.hpp"

#include <cmath>
#include <sstream>

#include "seqmix/errors.hpp"
#include "seqmix/numeric.hpp"

namespace seqmix {

namespace {

void check_compatible(const HmmParams& params, const Sequence& seq) {
  params.validate();
  if (sequence_length(seq) < 1) throw ParameterError("sequence must have length >= 1");
  if (family_of(seq) != family_of(params.emission)) {
    throw ParameterError("sequence element type does not match the emission family (" +
                         element_type_name(family_of(seq)) + " vs " +
                         family_name(family_of(params.emission)) + ")");
  }
}

// Transition matrix with zeros floored, in log space. Stored models may carry
// exact zeros; the floor keeps the recursions free of -inf + -inf artifacts.
Matrix floored_log_transition(const Matrix& transition) {
  return transition.array().max(kTransitionFloor).log().matrix();
}

Vector log_initial(const Vector& initial) {
  return initial.array().log().matrix();  // log(0) == -inf is intended
}

[[noreturn]] void throw_underflow(int step) {
  std::ostringstream msg;
  msg << "forward mass vanished at step " << step
      << ": every state has zero likelihood for this observation history";
  throw NumericalError(msg.str());
}

// Forward recursion in log space; returns the M x J log-alpha table.
Matrix forward_pass(const HmmParams& params, const Matrix& log_emis) {
  const int num_steps = static_cast<int>(log_emis.rows());
  const int num_states = params.num_states();
  const Matrix log_trans = floored_log_transition(params.transition);
  Matrix log_alpha(num_steps, num_states);

  log_alpha.row(0) = (log_initial(params.initial) + log_emis.row(0).transpose()).transpose();
  if (log_sum_exp(log_alpha.row(0).transpose()) == kNegInf) throw_underflow(1);

  Vector scratch(num_states);
  for (int m = 1; m < num_steps; ++m) {
    for (int j = 0; j < num_states; ++j) {
      scratch = log_alpha.row(m - 1).transpose() + log_trans.col(j);
      log_alpha(m, j) = log_sum_exp(scratch) + log_emis(m, j);
    }
    if (log_sum_exp(log_alpha.row(m).transpose()) == kNegInf) throw_underflow(m + 1);
  }
  return log_alpha;
}

}  // namespace

Matrix log_emission_matrix(const HmmParams& params, const Sequence& seq) {
  check_compatible(params, seq);
  const int num_steps = sequence_length(seq);
  const int num_states = params.num_states();
  Matrix log_emis(num_steps, num_states);

  if (const auto* symbols = std::get_if<CategoricalSeq>(&seq)) {
    const Matrix& probs = std::get<CategoricalEmission>(params.emission).probs;
    const int alphabet = static_cast<int>(probs.cols());
    for (int m = 0; m < num_steps; ++m) {
      const int symbol = (*symbols)[m];
      if (symbol < 0 || symbol >= alphabet) {
        std::ostringstream msg;
        msg << "symbol " << symbol << " at step " << m + 1 << " outside the alphabet [0, "
            << alphabet << ")";
        throw ParameterError(msg.str());
      }
      for (int j = 0; j < num_states; ++j) log_emis(m, j) = std::log(probs(j, symbol));
    }
    return log_emis;
  }

  if (const auto* values = std::get_if<RealSeq>(&seq)) {
    const auto& gauss = std::get<GaussianEmission>(params.emission);
    if (values->cols() != gauss.mean.cols()) {
      throw ParameterError("observation dimensionality does not match the Gaussian emission");
    }
    constexpr double log_two_pi = 1.8378770664093453;  // log(2*pi)
    for (int m = 0; m < num_steps; ++m) {
      for (int j = 0; j < num_states; ++j) {
        double acc = 0.0;
        for (int d = 0; d < values->cols(); ++d) {
          const double var = gauss.variance(j, d);
          const double diff = (*values)(m, d) - gauss.mean(j, d);
          acc += log_two_pi + std::log(var) + diff * diff / var;
        }
        log_emis(m, j) = -0.5 * acc;
      }
    }
    return log_emis;
  }

  const auto& counts = std::get<CountSeq>(seq);
  const auto& poisson = std::get<PoissonEmission>(params.emission);
  if (counts.cols() != poisson.rate.cols()) {
    throw ParameterError("observation dimensionality does not match the Poisson emission");
  }
  for (int m = 0; m < num_steps; ++m) {
    for (int j = 0; j < num_states; ++j) {
      double acc = 0.0;
      for (int d = 0; d < counts.cols(); ++d) {
        const int k = counts(m, d);
        if (k < 0) {
          std::ostringstream msg;
          msg << "negative count " << k << " at step " << m + 1 << ", dimension " << d;
          throw ParameterError(msg.str());
        }
        const double rate = poisson.rate(j, d);
        acc += k * std::log(rate) - rate - std::lgamma(static_cast<double>(k) + 1.0);
      }
      log_emis(m, j) = acc;
    }
  }
  return log_emis;
}

PosteriorTables forward_backward(const HmmParams& params, const Sequence& seq) {
  const Matrix log_emis = log_emission_matrix(params, seq);
  const int num_steps = static_cast<int>(log_emis.rows());
  const int num_states = params.num_states();
  const Matrix log_trans = floored_log_transition(params.transition);

  const Matrix log_alpha = forward_pass(params, log_emis);
  const double log_likelihood = log_sum_exp(log_alpha.row(num_steps - 1).transpose());

  Matrix log_beta = Matrix::Zero(num_steps, num_states);
  Vector scratch(num_states);
  for (int m = num_steps - 2; m >= 0; --m) {
    for (int i = 0; i < num_states; ++i) {
      scratch = log_trans.row(i).transpose() + log_emis.row(m + 1).transpose() +
                log_beta.row(m + 1).transpose();
      log_beta(m, i) = log_sum_exp(scratch);
    }
  }

  PosteriorTables tables;
  tables.log_likelihood = log_likelihood;
  tables.gamma = ((log_alpha + log_beta).array() - log_likelihood).exp().matrix();

  tables.xi.reserve(num_steps - 1);
  for (int m = 0; m + 1 < num_steps; ++m) {
    Matrix slice(num_states, num_states);
    for (int i = 0; i < num_states; ++i) {
      for (int j = 0; j < num_states; ++j) {
        slice(i, j) = std::exp(log_alpha(m, i) + log_trans(i, j) + log_emis(m + 1, j) +
                               log_beta(m + 1, j) - log_likelihood);
      }
    }
    tables.xi.push_back(std::move(slice));
  }
  return tables;
}

double sequence_log_likelihood(const HmmParams& params, const Sequence& seq) {
  const Matrix log_emis = log_emission_matrix(params, seq);
  const Matrix log_alpha = forward_pass(params, log_emis);
  return log_sum_exp(log_alpha.row(log_alpha.rows() - 1).transpose());
}

namespace {

int draw_index(const Vector& probs, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double u = unit(rng);
  double cumulative = 0.0;
  for (int i = 0; i < probs.size(); ++i) {
    cumulative += probs(i);
    if (u < cumulative) return i;
  }
  return static_cast<int>(probs.size()) - 1;  // guards u landing on rounding slack
}

Sequence draw_observations(const HmmParams& params, const std::vector<int>& states,
                           std::mt19937_64& rng) {
  const int num_steps = static_cast<int>(states.size());
  if (const auto* cat = std::get_if<CategoricalEmission>(&params.emission)) {
    CategoricalSeq symbols(num_steps);
    for (int m = 0; m < num_steps; ++m) {
      symbols[m] = draw_index(cat->probs.row(states[m]).transpose(), rng);
    }
    return symbols;
  }
  if (const auto* gauss = std::get_if<GaussianEmission>(&params.emission)) {
    std::normal_distribution<double> normal(0.0, 1.0);
    RealSeq values(num_steps, gauss->mean.cols());
    for (int m = 0; m < num_steps; ++m) {
      for (int d = 0; d < gauss->mean.cols(); ++d) {
        values(m, d) = gauss->mean(states[m], d) +
                       std::sqrt(gauss->variance(states[m], d)) * normal(rng);
      }
    }
    return values;
  }
  const auto& poisson = std::get<PoissonEmission>(params.emission);
  CountSeq counts(num_steps, poisson.rate.cols());
  for (int m = 0; m < num_steps; ++m) {
    for (int d = 0; d < poisson.rate.cols(); ++d) {
      std::poisson_distribution<int> draw(poisson.rate(states[m], d));
      counts(m, d) = draw(rng);
    }
  }
  return counts;
}

}  // namespace

std::pair<Sequence, std::vector<int>> sample_sequence(const HmmParams& params, int length,
                                                      std::mt19937_64& rng) {
  params.validate();
  if (length < 1) throw ParameterError("sample_sequence: length must be >= 1");
  std::vector<int> states(length);
  states[0] = draw_index(params.initial, rng);
  for (int m = 1; m < length; ++m) {
    states[m] = draw_index(params.transition.row(states[m - 1]).transpose(), rng);
  }
  return {draw_observations(params, states, rng), std::move(states)};
}

std::pair<Sequence, std::vector<int>> sample_sequence(const HmmParams& params, int length,
                                                      std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sample_sequence(params, length, rng);
}

}  // namespace seqmix
