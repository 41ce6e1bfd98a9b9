#include "seqmix/datasets.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "seqmix/errors.hpp"
#include "seqmix/hmm.hpp"
#include "seqmix/mixture.hpp"

namespace seqmix {

EmissionFamily SequenceDataset::family() const {
  if (sequences.empty()) throw ParameterError("SequenceDataset: empty dataset");
  return family_of(sequences.front());
}

int SequenceDataset::dims() const {
  if (family() == EmissionFamily::Categorical) {
    int alphabet = 0;
    for (const Sequence& seq : sequences) {
      for (int symbol : std::get<CategoricalSeq>(seq)) alphabet = std::max(alphabet, symbol + 1);
    }
    return alphabet;
  }
  return sequence_dims(sequences.front());
}

void SequenceDataset::validate() const {
  if (sequences.empty()) throw ParameterError("SequenceDataset: empty dataset");
  const EmissionFamily f = family();
  const int d = sequence_dims(sequences.front());
  for (const Sequence& seq : sequences) {
    if (family_of(seq) != f) throw ParameterError("SequenceDataset: mixed element types");
    if (f != EmissionFamily::Categorical && sequence_dims(seq) != d) {
      throw ParameterError("SequenceDataset: inconsistent element dimensionality");
    }
    if (sequence_length(seq) < 1) throw ParameterError("SequenceDataset: empty sequence");
    if (f == EmissionFamily::Categorical) {
      for (int symbol : std::get<CategoricalSeq>(seq)) {
        if (symbol < 0) throw ParameterError("SequenceDataset: negative categorical symbol");
      }
    }
  }
  if (labels && static_cast<int>(labels->size()) != num_sequences()) {
    throw ParameterError("SequenceDataset: label count differs from sequence count");
  }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream stream(line);
  while (std::getline(stream, cell, ',')) {
    const auto begin = cell.find_first_not_of(" \t\r");
    const auto end = cell.find_last_not_of(" \t\r");
    cells.push_back(begin == std::string::npos ? "" : cell.substr(begin, end - begin + 1));
  }
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

[[noreturn]] void parse_fail(const std::string& path, int line, int column,
                             const std::string& detail) {
  std::ostringstream msg;
  msg << path << ": line " << line << ", column " << column + 1 << ": " << detail;
  throw ParameterError(msg.str());
}

double parse_real(const std::string& token, const std::string& path, int line, int column) {
  try {
    std::size_t used = 0;
    const double value = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return value;
  } catch (const std::exception&) {
    parse_fail(path, line, column, "expected a number, got '" + token + "'");
  }
}

int parse_int(const std::string& token, const std::string& path, int line, int column) {
  try {
    std::size_t used = 0;
    const int value = std::stoi(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return value;
  } catch (const std::exception&) {
    parse_fail(path, line, column, "expected an integer, got '" + token + "'");
  }
}

int parse_count(const std::string& token, const std::string& path, int line, int column) {
  const int value = parse_int(token, path, line, column);
  if (value < 0) parse_fail(path, line, column, "counts must be nonnegative");
  return value;
}

Sequence rows_to_sequence(const std::vector<std::vector<double>>& rows, EmissionFamily family) {
  const int steps = static_cast<int>(rows.size());
  const int dims = static_cast<int>(rows.front().size());
  if (family == EmissionFamily::Categorical) {
    CategoricalSeq symbols(steps);
    for (int m = 0; m < steps; ++m) symbols[m] = static_cast<int>(rows[m][0]);
    return symbols;
  }
  if (family == EmissionFamily::Gaussian) {
    RealSeq values(steps, dims);
    for (int m = 0; m < steps; ++m)
      for (int d = 0; d < dims; ++d) values(m, d) = rows[m][d];
    return values;
  }
  CountSeq counts(steps, dims);
  for (int m = 0; m < steps; ++m)
    for (int d = 0; d < dims; ++d) counts(m, d) = static_cast<int>(rows[m][d]);
  return counts;
}

std::vector<std::string> read_data_lines(const std::string& path, std::vector<int>& line_numbers) {
  std::ifstream file(path);
  if (!file) throw ParameterError("cannot open file: " + path);
  std::vector<std::string> lines;
  std::string line;
  int number = 0;
  while (std::getline(file, line)) {
    ++number;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;      // blank
    if (line[first] == '#') continue;              // comment / schema header
    lines.push_back(line);
    line_numbers.push_back(number);
  }
  return lines;
}

double parse_cell(const std::string& token, EmissionFamily family, const std::string& path,
                  int line, int column) {
  switch (family) {
    case EmissionFamily::Categorical: {
      const int symbol = parse_int(token, path, line, column);
      if (symbol < 0) parse_fail(path, line, column, "categorical symbols must be nonnegative");
      return symbol;
    }
    case EmissionFamily::Gaussian:
      return parse_real(token, path, line, column);
    case EmissionFamily::Poisson:
      return parse_count(token, path, line, column);
  }
  parse_fail(path, line, 0, "unreachable element type");
}

}  // namespace

SequenceDataset load_sequences_csv(const std::string& path, const CsvSchema& schema) {
  std::vector<int> line_numbers;
  const std::vector<std::string> lines = read_data_lines(path, line_numbers);
  if (lines.empty()) throw ParameterError(path + ": no data rows");

  SequenceDataset dataset;
  dataset.name = std::filesystem::path(path).stem().string();
  std::vector<int> labels;
  bool any_labels = schema.label_column.has_value();

  if (schema.layout == CsvLayout::RowPerSequence) {
    for (std::size_t r = 0; r < lines.size(); ++r) {
      const int line_no = line_numbers[r];
      const std::vector<std::string> cells = split_csv_line(lines[r]);
      if (schema.label_column &&
          (*schema.label_column < 0 || *schema.label_column >= static_cast<int>(cells.size()))) {
        parse_fail(path, line_no, static_cast<int>(cells.size()) - 1,
                   "label column " + std::to_string(*schema.label_column) + " out of range");
      }
      std::vector<std::vector<double>> rows;
      for (int c = 0; c < static_cast<int>(cells.size()); ++c) {
        if (schema.label_column && *schema.label_column == c) {
          labels.push_back(parse_int(cells[c], path, line_no, c));
          continue;
        }
        rows.push_back({parse_cell(cells[c], schema.element_type, path, line_no, c)});
      }
      if (rows.empty()) parse_fail(path, line_no, 0, "sequence row has no elements");
      dataset.sequences.push_back(rows_to_sequence(rows, schema.element_type));
    }
  } else {
    if (schema.label_column && *schema.label_column == 0) {
      throw ConfigError("long format: column 0 is the sequence id, not a label");
    }
    std::map<std::string, int> order;  // id -> dataset index, first appearance
    std::vector<std::vector<std::vector<double>>> grouped;
    std::vector<int> group_labels;
    int dims = -1;
    for (std::size_t r = 0; r < lines.size(); ++r) {
      const int line_no = line_numbers[r];
      const std::vector<std::string> cells = split_csv_line(lines[r]);
      if (cells.size() < 2) parse_fail(path, line_no, 0, "long format needs id and value columns");
      if (schema.label_column && *schema.label_column >= static_cast<int>(cells.size())) {
        parse_fail(path, line_no, static_cast<int>(cells.size()) - 1,
                   "label column " + std::to_string(*schema.label_column) + " out of range");
      }
      std::vector<double> element;
      int label = 0;
      for (int c = 1; c < static_cast<int>(cells.size()); ++c) {
        if (schema.label_column && *schema.label_column == c) {
          label = parse_int(cells[c], path, line_no, c);
          continue;
        }
        element.push_back(parse_cell(cells[c], schema.element_type, path, line_no, c));
      }
      if (element.empty()) parse_fail(path, line_no, 1, "row has no value columns");
      if (dims < 0) dims = static_cast<int>(element.size());
      if (static_cast<int>(element.size()) != dims) {
        parse_fail(path, line_no, 1,
                   "inconsistent element dimensionality (" + std::to_string(element.size()) +
                       " vs " + std::to_string(dims) + ")");
      }
      if (schema.element_type == EmissionFamily::Categorical && dims != 1) {
        parse_fail(path, line_no, 1, "categorical elements must be single symbols");
      }
      auto [it, inserted] = order.try_emplace(cells[0], static_cast<int>(grouped.size()));
      if (inserted) {
        grouped.emplace_back();
        group_labels.push_back(label);
      } else if (schema.label_column && group_labels[it->second] != label) {
        parse_fail(path, line_no, *schema.label_column,
                   "conflicting labels within sequence '" + cells[0] + "'");
      }
      grouped[it->second].push_back(std::move(element));
    }
    for (std::size_t g = 0; g < grouped.size(); ++g) {
      dataset.sequences.push_back(rows_to_sequence(grouped[g], schema.element_type));
      if (any_labels) labels.push_back(group_labels[g]);
    }
  }

  if (any_labels) dataset.labels = std::move(labels);
  dataset.validate();
  return dataset;
}

void save_sequences_csv(const std::string& path, const SequenceDataset& dataset) {
  dataset.validate();
  std::ofstream file(path);
  if (!file) throw ParameterError("cannot write file: " + path);
  file << "# seqmix-dataset layout=long-format element_type="
       << element_type_name(dataset.family())
       << " labels=" << (dataset.labels ? "yes" : "no") << "\n";
  file.precision(17);
  for (int n = 0; n < dataset.num_sequences(); ++n) {
    const Sequence& seq = dataset.sequences[n];
    const int steps = sequence_length(seq);
    for (int m = 0; m < steps; ++m) {
      file << "s" << n;
      if (const auto* symbols = std::get_if<CategoricalSeq>(&seq)) {
        file << "," << (*symbols)[m];
      } else if (const auto* values = std::get_if<RealSeq>(&seq)) {
        for (int d = 0; d < values->cols(); ++d) file << "," << (*values)(m, d);
      } else {
        const auto& counts = std::get<CountSeq>(seq);
        for (int d = 0; d < counts.cols(); ++d) file << "," << counts(m, d);
      }
      if (dataset.labels) file << "," << (*dataset.labels)[n];
      file << "\n";
    }
  }
}

SequenceDataset load_dataset_document(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw ParameterError("cannot open file: " + path);
  std::string header;
  std::getline(file, header);
  if (header.rfind("# seqmix-dataset", 0) != 0) {
    throw ParameterError(path + ": missing seqmix-dataset schema header");
  }
  CsvSchema schema;
  schema.layout = CsvLayout::LongFormat;
  std::stringstream stream(header);
  std::string token;
  bool labeled = false;
  while (stream >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = token.substr(0, eq);
    const std::string value = token.substr(eq + 1);
    if (key == "element_type") schema.element_type = family_from_name(value);
    if (key == "labels") labeled = (value == "yes");
  }
  if (labeled) {
    // Label is the final column; probe the first data row for its index.
    std::string line;
    bool found = false;
    while (std::getline(file, line)) {
      const auto begin = line.find_first_not_of(" \t\r");
      if (begin != std::string::npos && line[begin] != '#') {
        found = true;
        break;
      }
    }
    if (!found) throw ParameterError(path + ": no data rows");
    schema.label_column = static_cast<int>(split_csv_line(line).size()) - 1;
  }
  return load_sequences_csv(path, schema);
}

SequenceDataset load_libras(const std::string& path, std::pair<int, int> digit_pair,
                            bool standardize) {
  if (digit_pair.first == digit_pair.second) {
    throw ConfigError("load_libras: the two classes must differ");
  }
  std::vector<int> line_numbers;
  const std::vector<std::string> lines = read_data_lines(path, line_numbers);

  constexpr int kSteps = 45;
  constexpr int kColumns = 2 * kSteps + 1;
  SequenceDataset dataset;
  dataset.name = "libras_" + std::to_string(digit_pair.first) + "_vs_" +
                 std::to_string(digit_pair.second);
  std::vector<int> labels;
  for (std::size_t r = 0; r < lines.size(); ++r) {
    const int line_no = line_numbers[r];
    const std::vector<std::string> cells = split_csv_line(lines[r]);
    if (static_cast<int>(cells.size()) != kColumns) {
      parse_fail(path, line_no, 0,
                 "expected " + std::to_string(kColumns) + " columns, got " +
                     std::to_string(cells.size()));
    }
    // The class may be written as "1" or "1.0" depending on the distribution.
    const double raw_class = parse_real(cells[kColumns - 1], path, line_no, kColumns - 1);
    const int label = static_cast<int>(std::lround(raw_class));
    if (label < 1 || label > 15) {
      parse_fail(path, line_no, kColumns - 1, "class " + std::to_string(label) + " outside 1..15");
    }
    if (label != digit_pair.first && label != digit_pair.second) continue;
    RealSeq values(kSteps, 2);
    for (int t = 0; t < kSteps; ++t) {
      values(t, 0) = parse_real(cells[2 * t], path, line_no, 2 * t);
      values(t, 1) = parse_real(cells[2 * t + 1], path, line_no, 2 * t + 1);
    }
    dataset.sequences.push_back(std::move(values));
    labels.push_back(label);
  }
  if (dataset.sequences.empty()) {
    throw ParameterError(path + ": no rows with classes " + std::to_string(digit_pair.first) +
                         " or " + std::to_string(digit_pair.second));
  }
  dataset.labels = std::move(labels);

  if (standardize) {
    for (int d = 0; d < 2; ++d) {
      double sum = 0.0;
      double sq = 0.0;
      double count = 0.0;
      for (const Sequence& seq : dataset.sequences) {
        const auto& values = std::get<RealSeq>(seq);
        sum += values.col(d).sum();
        sq += values.col(d).array().square().sum();
        count += static_cast<double>(values.rows());
      }
      const double mean = sum / count;
      const double sd = std::sqrt(std::max(sq / count - mean * mean, 1e-12));
      for (Sequence& seq : dataset.sequences) {
        auto& values = std::get<RealSeq>(seq);
        values.col(d) = (values.col(d).array() - mean) / sd;
      }
    }
  }
  dataset.validate();
  return dataset;
}

SequenceDataset sample_mixture(const MixtureModel& model, int n_per_component, int length,
                               std::uint64_t seed) {
  model.validate();
  if (n_per_component < 1) throw ParameterError("sample_mixture: n_per_component must be >= 1");
  std::mt19937_64 rng(seed);
  SequenceDataset dataset;
  dataset.name = "sampled";
  std::vector<int> labels;
  for (int k = 0; k < model.num_components(); ++k) {
    for (int i = 0; i < n_per_component; ++i) {
      dataset.sequences.push_back(sample_sequence(model.components[k], length, rng).first);
      labels.push_back(k);
    }
  }
  dataset.labels = std::move(labels);
  dataset.validate();
  return dataset;
}

}  // namespace seqmix
