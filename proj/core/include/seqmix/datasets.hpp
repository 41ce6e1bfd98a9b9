#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "seqmix/types.hpp"

namespace seqmix {

struct MixtureModel;

/// A corpus of observation sequences with one common element type and
/// optional ground-truth labels.
struct SequenceDataset {
  std::vector<Sequence> sequences;
  std::optional<std::vector<int>> labels;
  std::string name;

  int num_sequences() const { return static_cast<int>(sequences.size()); }
  EmissionFamily family() const;
  /// Alphabet size (max symbol + 1) for categorical data, dimensionality
  /// otherwise.
  int dims() const;
  /// Throws ParameterError if empty, mixed-type, or label length differs.
  void validate() const;
};

enum class CsvLayout { RowPerSequence, LongFormat };

/// Schema for load_sequences_csv. label_column is a 0-based index into the
/// full row; in long format column 0 is the sequence id and cannot be the
/// label. Row-per-sequence files hold one scalar element per cell; long
/// format supports D-dimensional elements and ragged lengths.
struct CsvSchema {
  CsvLayout layout = CsvLayout::RowPerSequence;
  EmissionFamily element_type = EmissionFamily::Categorical;
  std::optional<int> label_column;
};

SequenceDataset load_sequences_csv(const std::string& path, const CsvSchema& schema);

/// Writes a dataset as a long-format CSV with a leading schema header line
/// ("# seqmix-dataset ..."); load_dataset_document reads it back. Values are
/// printed with 17 significant digits so the round trip is exact.
void save_sequences_csv(const std::string& path, const SequenceDataset& dataset);
SequenceDataset load_dataset_document(const std::string& path);

/// UCI Libras movement format: 90 comma-separated reals (45 steps of
/// interleaved x,y) plus an integer class in 1..15 per row. Keeps the two
/// requested classes and reshapes rows into length-45 sequences of 2-d
/// vectors. With standardize, each coordinate is z-normalized across the
/// selection.
SequenceDataset load_libras(const std::string& path, std::pair<int, int> digit_pair,
                            bool standardize = false);

/// Labeled synthetic corpus: n_per_component sequences from each component,
/// labels = generating component index. Deterministic given the seed.
SequenceDataset sample_mixture(const MixtureModel& model, int n_per_component, int length,
                               std::uint64_t seed);

}  // namespace seqmix
