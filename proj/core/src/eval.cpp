#include "seqmix/eval.hpp"

#include <cmath>
#include <unordered_map>

#include "seqmix/errors.hpp"
#include "seqmix/numeric.hpp"

namespace seqmix {

std::vector<int> hard_assignments(const EStepResult& estep) {
  const int n_seqs = static_cast<int>(estep.responsibilities.rows());
  const int n_comps = static_cast<int>(estep.responsibilities.cols());
  std::vector<int> assignment(n_seqs, 0);
  for (int n = 0; n < n_seqs; ++n) {
    int best = 0;
    for (int k = 1; k < n_comps; ++k) {
      if (estep.responsibilities(n, k) > estep.responsibilities(n, best)) best = k;
    }
    assignment[n] = best;
  }
  return assignment;
}

namespace {

// Compacts arbitrary label values to dense indices, preserving nothing but
// identity; the metric is invariant to the id space anyway.
std::vector<int> compact_ids(const std::vector<int>& raw, int& count) {
  std::unordered_map<int, int> ids;
  std::vector<int> dense(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    auto [it, inserted] = ids.try_emplace(raw[i], static_cast<int>(ids.size()));
    dense[i] = it->second;
  }
  count = static_cast<int>(ids.size());
  return dense;
}

}  // namespace

double v_measure(const std::vector<int>& true_labels, const std::vector<int>& predicted,
                 double beta) {
  if (true_labels.size() != predicted.size() || true_labels.empty()) {
    throw ParameterError("v_measure: label vectors must have equal nonzero length");
  }
  const double total = static_cast<double>(true_labels.size());

  int n_classes = 0;
  int n_clusters = 0;
  const std::vector<int> classes = compact_ids(true_labels, n_classes);
  const std::vector<int> clusters = compact_ids(predicted, n_clusters);

  Matrix contingency = Matrix::Zero(n_classes, n_clusters);
  for (std::size_t i = 0; i < classes.size(); ++i) {
    contingency(classes[i], clusters[i]) += 1.0;
  }
  const Vector class_counts = contingency.rowwise().sum();
  const Vector cluster_counts = contingency.colwise().sum().transpose();

  double class_entropy = 0.0;
  for (int c = 0; c < n_classes; ++c) class_entropy -= xlogx(class_counts(c) / total);
  double cluster_entropy = 0.0;
  for (int k = 0; k < n_clusters; ++k) cluster_entropy -= xlogx(cluster_counts(k) / total);

  // H(class | cluster) and H(cluster | class) from the joint table.
  double h_class_given_cluster = 0.0;
  double h_cluster_given_class = 0.0;
  for (int c = 0; c < n_classes; ++c) {
    for (int k = 0; k < n_clusters; ++k) {
      const double joint = contingency(c, k);
      if (joint <= 0.0) continue;
      h_class_given_cluster -= (joint / total) * std::log(joint / cluster_counts(k));
      h_cluster_given_class -= (joint / total) * std::log(joint / class_counts(c));
    }
  }

  const double homogeneity = class_entropy == 0.0 ? 1.0 : 1.0 - h_class_given_cluster / class_entropy;
  const double completeness =
      cluster_entropy == 0.0 ? 1.0 : 1.0 - h_cluster_given_class / cluster_entropy;
  const double weighted = beta * homogeneity + completeness;
  if (weighted <= 0.0) return 0.0;
  return (1.0 + beta) * homogeneity * completeness / weighted;
}

}  // namespace seqmix
