#pragma once

#include <Eigen/Dense>
#include <string>
#include <variant>
#include <vector>

namespace seqmix {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using IntMatrix = Eigen::MatrixXi;

// Tolerances and floors shared across the library.
inline constexpr double kProbTol = 1e-9;           // stochasticity checks
inline constexpr double kTransitionFloor = 1e-12;  // applied inside log-space recursions only
inline constexpr double kVarianceFloor = 1e-6;     // Gaussian variances and Poisson rates

enum class EmissionFamily { Categorical, Gaussian, Poisson };

/// Canonical emission-family name: "categorical", "gaussian", "poisson".
std::string family_name(EmissionFamily family);
/// Dataset element-type name: "categorical", "real", "count".
std::string element_type_name(EmissionFamily family);
/// Accepts either spelling; throws ParameterError on unknown names.
EmissionFamily family_from_name(const std::string& name);

/// Per-state categorical distribution over V symbols; one row per state.
struct CategoricalEmission {
  Matrix probs;  // J x V, rows sum to 1
};

/// Per-state diagonal Gaussian over D dimensions.
struct GaussianEmission {
  Matrix mean;      // J x D
  Matrix variance;  // J x D, entries >= kVarianceFloor
};

/// Per-state independent Poisson rates over D dimensions.
struct PoissonEmission {
  Matrix rate;  // J x D, entries >= kVarianceFloor
};

using EmissionParams = std::variant<CategoricalEmission, GaussianEmission, PoissonEmission>;

EmissionFamily family_of(const EmissionParams& emission);
int emission_state_count(const EmissionParams& emission);
/// Symbol-alphabet size V for categorical emissions, dimensionality D otherwise.
int emission_dims(const EmissionParams& emission);

// Observation sequences. Categorical sequences hold nonnegative symbol ids,
// real-valued sequences are M x D matrices, count sequences are M x D
// nonnegative integer matrices.
using CategoricalSeq = std::vector<int>;
using RealSeq = Matrix;
using CountSeq = IntMatrix;
using Sequence = std::variant<CategoricalSeq, RealSeq, CountSeq>;

EmissionFamily family_of(const Sequence& seq);
int sequence_length(const Sequence& seq);
int sequence_dims(const Sequence& seq);  // 1 for categorical sequences

/// One mixture component: initial distribution, row-stochastic transition
/// matrix, and per-state emission parameters.
struct HmmParams {
  Vector initial;
  Matrix transition;
  EmissionParams emission;

  int num_states() const { return static_cast<int>(initial.size()); }

  /// Throws ParameterError on any broken invariant (shape mismatch,
  /// non-stochastic rows, sub-floor variances or rates).
  void validate() const;
};

}  // namespace seqmix
