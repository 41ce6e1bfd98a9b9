#include "seqmix/types.hpp"

#include <cmath>
#include <sstream>

#include "seqmix/errors.hpp"

namespace seqmix {

namespace {

void check_probability_rows(const Matrix& m, const std::string& what) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    double sum = 0.0;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const double p = m(i, j);
      if (!(p >= 0.0 && p <= 1.0 + kProbTol)) {
        std::ostringstream msg;
        msg << what << ": entry (" << i << ", " << j << ") = " << p << " is not a probability";
        throw ParameterError(msg.str());
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > kProbTol) {
      std::ostringstream msg;
      msg << what << ": row " << i << " sums to " << sum << ", expected 1";
      throw ParameterError(msg.str());
    }
  }
}

void check_positive_floor(const Matrix& m, const std::string& what) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (!(m(i, j) >= kVarianceFloor)) {
        std::ostringstream msg;
        msg << what << ": entry (" << i << ", " << j << ") = " << m(i, j) << " is below the floor "
            << kVarianceFloor;
        throw ParameterError(msg.str());
      }
    }
  }
}

}  // namespace

std::string family_name(EmissionFamily family) {
  switch (family) {
    case EmissionFamily::Categorical: return "categorical";
    case EmissionFamily::Gaussian: return "gaussian";
    case EmissionFamily::Poisson: return "poisson";
  }
  return "unknown";
}

std::string element_type_name(EmissionFamily family) {
  switch (family) {
    case EmissionFamily::Categorical: return "categorical";
    case EmissionFamily::Gaussian: return "real";
    case EmissionFamily::Poisson: return "count";
  }
  return "unknown";
}

EmissionFamily family_from_name(const std::string& name) {
  if (name == "categorical") return EmissionFamily::Categorical;
  if (name == "gaussian" || name == "real") return EmissionFamily::Gaussian;
  if (name == "poisson" || name == "count") return EmissionFamily::Poisson;
  throw ParameterError("unknown emission family or element type: '" + name + "'");
}

EmissionFamily family_of(const EmissionParams& emission) {
  if (std::holds_alternative<CategoricalEmission>(emission)) return EmissionFamily::Categorical;
  if (std::holds_alternative<GaussianEmission>(emission)) return EmissionFamily::Gaussian;
  return EmissionFamily::Poisson;
}

int emission_state_count(const EmissionParams& emission) {
  if (const auto* c = std::get_if<CategoricalEmission>(&emission))
    return static_cast<int>(c->probs.rows());
  if (const auto* g = std::get_if<GaussianEmission>(&emission))
    return static_cast<int>(g->mean.rows());
  return static_cast<int>(std::get<PoissonEmission>(emission).rate.rows());
}

int emission_dims(const EmissionParams& emission) {
  if (const auto* c = std::get_if<CategoricalEmission>(&emission))
    return static_cast<int>(c->probs.cols());
  if (const auto* g = std::get_if<GaussianEmission>(&emission))
    return static_cast<int>(g->mean.cols());
  return static_cast<int>(std::get<PoissonEmission>(emission).rate.cols());
}

EmissionFamily family_of(const Sequence& seq) {
  if (std::holds_alternative<CategoricalSeq>(seq)) return EmissionFamily::Categorical;
  if (std::holds_alternative<RealSeq>(seq)) return EmissionFamily::Gaussian;
  return EmissionFamily::Poisson;
}

int sequence_length(const Sequence& seq) {
  if (const auto* c = std::get_if<CategoricalSeq>(&seq)) return static_cast<int>(c->size());
  if (const auto* r = std::get_if<RealSeq>(&seq)) return static_cast<int>(r->rows());
  return static_cast<int>(std::get<CountSeq>(seq).rows());
}

int sequence_dims(const Sequence& seq) {
  if (std::holds_alternative<CategoricalSeq>(seq)) return 1;
  if (const auto* r = std::get_if<RealSeq>(&seq)) return static_cast<int>(r->cols());
  return static_cast<int>(std::get<CountSeq>(seq).cols());
}

void HmmParams::validate() const {
  const int num = num_states();
  if (num < 1) throw ParameterError("HmmParams: at least one state required");
  if (transition.rows() != num || transition.cols() != num) {
    throw ParameterError("HmmParams: transition matrix must be J x J");
  }
  check_probability_rows(transition, "transition");
  check_probability_rows(initial.transpose(), "initial distribution");
  if (emission_state_count(emission) != num) {
    throw ParameterError("HmmParams: emission parameter count must equal the state count");
  }
  if (const auto* cat = std::get_if<CategoricalEmission>(&emission)) {
    check_probability_rows(cat->probs, "categorical emission");
  } else if (const auto* gauss = std::get_if<GaussianEmission>(&emission)) {
    if (gauss->mean.rows() != gauss->variance.rows() ||
        gauss->mean.cols() != gauss->variance.cols()) {
      throw ParameterError("HmmParams: Gaussian mean and variance shapes differ");
    }
    check_positive_floor(gauss->variance, "gaussian variance");
  } else {
    check_positive_floor(std::get<PoissonEmission>(emission).rate, "poisson rate");
  }
}

}  // namespace seqmix
