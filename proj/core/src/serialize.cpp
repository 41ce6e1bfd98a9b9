#include "seqmix/serialize.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "seqmix/errors.hpp"

namespace seqmix {

namespace {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& rows) {
  if (!rows.is_array() || rows.empty()) throw ParameterError("expected a matrix (array of rows)");
  const Eigen::Index n_rows = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index n_cols = static_cast<Eigen::Index>(rows.front().size());
  Matrix m(n_rows, n_cols);
  for (Eigen::Index i = 0; i < n_rows; ++i) {
    const json& row = rows[i];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n_cols) {
      throw ParameterError("ragged matrix rows in document");
    }
    for (Eigen::Index j = 0; j < n_cols; ++j) m(i, j) = row[j].get<double>();
  }
  return m;
}

json vector_to_json(const Vector& v) {
  json values = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) values.push_back(v(i));
  return values;
}

Vector vector_from_json(const json& values) {
  if (!values.is_array()) throw ParameterError("expected a vector (array)");
  Vector v(static_cast<Eigen::Index>(values.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = values[i].get<double>();
  return v;
}

json emission_to_json(const EmissionParams& emission) {
  json doc;
  doc["family"] = family_name(family_of(emission));
  if (const auto* cat = std::get_if<CategoricalEmission>(&emission)) {
    doc["probs"] = matrix_to_json(cat->probs);
  } else if (const auto* gauss = std::get_if<GaussianEmission>(&emission)) {
    doc["mean"] = matrix_to_json(gauss->mean);
    doc["variance"] = matrix_to_json(gauss->variance);
  } else {
    doc["rate"] = matrix_to_json(std::get<PoissonEmission>(emission).rate);
  }
  return doc;
}

EmissionParams emission_from_json(const json& doc) {
  const EmissionFamily family = family_from_name(doc.at("family").get<std::string>());
  switch (family) {
    case EmissionFamily::Categorical:
      return CategoricalEmission{matrix_from_json(doc.at("probs"))};
    case EmissionFamily::Gaussian:
      return GaussianEmission{matrix_from_json(doc.at("mean")),
                              matrix_from_json(doc.at("variance"))};
    case EmissionFamily::Poisson:
      return PoissonEmission{matrix_from_json(doc.at("rate"))};
  }
  throw ParameterError("unreachable emission family");
}

json snapshot_to_json(const ConfigSnapshot& config) {
  json doc;
  doc["num_components"] = config.num_components;
  doc["num_states"] = config.num_states;
  doc["strategy"] = strategy_name(config.strategy);
  doc["lambda"] = config.lambda_resolved ? json(*config.lambda_resolved) : json(nullptr);
  doc["gate_enabled"] = config.gate_enabled;
  doc["max_iterations"] = config.max_iterations;
  doc["rel_tol"] = config.rel_tol;
  doc["init_dirichlet_alpha"] = config.init_dirichlet_alpha;
  doc["seed"] = config.seed;
  return doc;
}

ConfigSnapshot snapshot_from_json(const json& doc) {
  ConfigSnapshot config;
  config.num_components = doc.at("num_components").get<int>();
  config.num_states = doc.at("num_states").get<int>();
  config.strategy = strategy_from_name(doc.at("strategy").get<std::string>());
  if (!doc.at("lambda").is_null()) config.lambda_resolved = doc.at("lambda").get<double>();
  config.gate_enabled = doc.at("gate_enabled").get<bool>();
  config.max_iterations = doc.at("max_iterations").get<int>();
  config.rel_tol = doc.at("rel_tol").get<double>();
  config.init_dirichlet_alpha = doc.at("init_dirichlet_alpha").get<double>();
  config.seed = doc.at("seed").get<std::uint64_t>();
  return config;
}

std::string read_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw ParameterError("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream file(path);
  if (!file) throw ParameterError("cannot write file: " + path);
  file << text;
}

json parse_document(const std::string& text, const std::string& expected_format) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParameterError(std::string("malformed JSON document: ") + e.what());
  }
  if (!doc.is_object() || doc.value("format", "") != expected_format) {
    throw ParameterError("document is not a " + expected_format + " document");
  }
  return doc;
}

}  // namespace

std::string model_to_json(const MixtureModel& model) {
  model.validate();
  json doc;
  doc["format"] = "seqmix-model";
  doc["version"] = 1;
  doc["num_components"] = model.num_components();
  doc["num_states"] = model.num_states();
  doc["mixing"] = vector_to_json(model.mixing);
  json components = json::array();
  for (const HmmParams& component : model.components) {
    json c;
    c["initial"] = vector_to_json(component.initial);
    c["transition"] = matrix_to_json(component.transition);
    c["emission"] = emission_to_json(component.emission);
    components.push_back(std::move(c));
  }
  doc["components"] = std::move(components);
  return doc.dump(2) + "\n";
}

MixtureModel model_from_json(const std::string& text) {
  const json doc = parse_document(text, "seqmix-model");
  MixtureModel model;
  try {
    model.mixing = vector_from_json(doc.at("mixing"));
    for (const json& c : doc.at("components")) {
      HmmParams params;
      params.initial = vector_from_json(c.at("initial"));
      params.transition = matrix_from_json(c.at("transition"));
      params.emission = emission_from_json(c.at("emission"));
      model.components.push_back(std::move(params));
    }
  } catch (const json::exception& e) {
    throw ParameterError(std::string("malformed model document: ") + e.what());
  }
  model.validate();
  return model;
}

void save_model(const std::string& path, const MixtureModel& model) {
  write_file(path, model_to_json(model));
}

MixtureModel load_model(const std::string& path) { return model_from_json(read_file(path)); }

std::string report_to_json(const RunReport& report) {
  json doc;
  doc["format"] = "seqmix-report";
  doc["version"] = 1;
  doc["v_measure"] = report.v_measure ? json(*report.v_measure) : json(nullptr);
  json entropy;
  entropy["per_component_nats"] = report.entropy.per_component_nats;
  entropy["per_component_normalized"] = report.entropy.per_component_normalized;
  entropy["model_average_normalized"] = report.entropy.model_average_normalized;
  doc["entropy"] = std::move(entropy);
  doc["iterations"] = report.iterations;
  doc["final_log_likelihood"] = report.final_log_likelihood;
  doc["log_likelihood_history"] = report.log_likelihood_history;
  doc["seed"] = report.seed;
  doc["config"] = snapshot_to_json(report.config);
  json gates = json::array();
  for (const GateDecision& decision : report.gate_decisions) {
    json g;
    g["component"] = decision.component;
    g["h_regularized"] = decision.h_regularized;
    g["h_standard"] = decision.h_standard;
    g["chose_regularized"] = decision.chose_regularized;
    gates.push_back(std::move(g));
  }
  doc["gate_decisions"] = std::move(gates);
  return doc.dump(2) + "\n";
}

RunReport report_from_json(const std::string& text) {
  const json doc = parse_document(text, "seqmix-report");
  RunReport report;
  try {
    if (!doc.at("v_measure").is_null()) report.v_measure = doc.at("v_measure").get<double>();
    const json& entropy = doc.at("entropy");
    report.entropy.per_component_nats =
        entropy.at("per_component_nats").get<std::vector<double>>();
    report.entropy.per_component_normalized =
        entropy.at("per_component_normalized").get<std::vector<double>>();
    report.entropy.model_average_normalized =
        entropy.at("model_average_normalized").get<double>();
    report.iterations = doc.at("iterations").get<int>();
    report.final_log_likelihood = doc.at("final_log_likelihood").get<double>();
    report.log_likelihood_history =
        doc.at("log_likelihood_history").get<std::vector<double>>();
    report.seed = doc.at("seed").get<std::uint64_t>();
    report.config = snapshot_from_json(doc.at("config"));
    for (const json& g : doc.at("gate_decisions")) {
      report.gate_decisions.push_back({g.at("component").get<int>(),
                                       g.at("h_regularized").get<double>(),
                                       g.at("h_standard").get<double>(),
                                       g.at("chose_regularized").get<bool>()});
    }
  } catch (const json::exception& e) {
    throw ParameterError(std::string("malformed report document: ") + e.what());
  }
  return report;
}

void save_report(const std::string& path, const RunReport& report) {
  write_file(path, report_to_json(report));
}

RunReport load_report(const std::string& path) { return report_from_json(read_file(path)); }

}  // namespace seqmix
