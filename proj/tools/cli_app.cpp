#include "cli_app.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "seqmix/datasets.hpp"
#include "seqmix/errors.hpp"
#include "seqmix/experiments.hpp"
#include "seqmix/fit.hpp"
#include "seqmix/serialize.hpp"

namespace seqmix::cli {

namespace {

using nlohmann::json;

struct DataSpec {
  std::string path;
  std::string format = "csv-rows";  // csv-rows | csv-long | libras
  std::string element_type = "categorical";
  int label_column = -1;  // -1: no label column
  std::vector<int> pair;  // libras digit pair
  bool standardize = false;
};

struct ExperimentSpec {
  DataSpec data;
  int num_components = 2;
  int num_states = 2;
  std::vector<std::string> methods = {"standard"};
  std::vector<std::uint64_t> seeds = {0};
  std::string lambda = "auto";
  int max_iterations = 100;
  double rel_tol = 1e-4;
  double init_dirichlet_alpha = 0.1;
  bool gate_enabled = true;
  std::string output;
};

SequenceDataset load_data(const DataSpec& spec) {
  if (spec.path.empty()) throw ConfigError("no input data given (--data or config file)");
  if (spec.format == "libras") {
    if (spec.pair.size() != 2) {
      throw ConfigError("libras input needs --pair A,B with two classes");
    }
    return load_libras(spec.path, {spec.pair[0], spec.pair[1]}, spec.standardize);
  }
  CsvSchema schema;
  schema.layout =
      spec.format == "csv-rows" ? CsvLayout::RowPerSequence : CsvLayout::LongFormat;
  schema.element_type = family_from_name(spec.element_type);
  if (spec.label_column >= 0) schema.label_column = spec.label_column;
  return load_sequences_csv(spec.path, schema);
}

std::optional<double> parse_lambda(const std::string& text) {
  if (text == "auto") return std::nullopt;
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw ConfigError("lambda must be a number or 'auto', got '" + text + "'");
  }
}

FitConfig make_fit_config(const ExperimentSpec& spec) {
  FitConfig config;
  config.max_iterations = spec.max_iterations;
  config.rel_tol = spec.rel_tol;
  config.init_dirichlet_alpha = spec.init_dirichlet_alpha;
  config.gate_enabled = spec.gate_enabled;
  config.lambda = parse_lambda(spec.lambda);
  if (config.lambda && !(*config.lambda >= 1.0)) {
    throw ConfigError("lambda must be >= 1 (got " + spec.lambda + ")");
  }
  return config;
}

// Declarative experiment document; explicit flags override whatever it sets.
void apply_config_file(const std::string& path, ExperimentSpec& spec) {
  std::ifstream file(path);
  if (!file) throw ConfigError("cannot open config file: " + path);
  json doc;
  try {
    doc = json::parse(file);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config file: ") + e.what());
  }
  try {
    if (doc.contains("data")) {
      const json& data = doc.at("data");
      if (data.contains("path")) spec.data.path = data.at("path").get<std::string>();
      if (data.contains("format")) spec.data.format = data.at("format").get<std::string>();
      if (data.contains("element_type")) {
        spec.data.element_type = data.at("element_type").get<std::string>();
      }
      if (data.contains("label_column") && !data.at("label_column").is_null()) {
        spec.data.label_column = data.at("label_column").get<int>();
      }
      if (data.contains("pair")) spec.data.pair = data.at("pair").get<std::vector<int>>();
      if (data.contains("standardize")) spec.data.standardize = data.at("standardize").get<bool>();
    }
    if (doc.contains("num_components")) spec.num_components = doc.at("num_components").get<int>();
    if (doc.contains("num_states")) spec.num_states = doc.at("num_states").get<int>();
    if (doc.contains("methods")) spec.methods = doc.at("methods").get<std::vector<std::string>>();
    if (doc.contains("seeds")) spec.seeds = doc.at("seeds").get<std::vector<std::uint64_t>>();
    if (doc.contains("lambda")) {
      spec.lambda = doc.at("lambda").is_string() ? doc.at("lambda").get<std::string>()
                                                 : std::to_string(doc.at("lambda").get<double>());
    }
    if (doc.contains("max_iterations")) spec.max_iterations = doc.at("max_iterations").get<int>();
    if (doc.contains("rel_tol")) spec.rel_tol = doc.at("rel_tol").get<double>();
    if (doc.contains("init_dirichlet_alpha")) {
      spec.init_dirichlet_alpha = doc.at("init_dirichlet_alpha").get<double>();
    }
    if (doc.contains("gate_enabled")) spec.gate_enabled = doc.at("gate_enabled").get<bool>();
    if (doc.contains("output")) spec.output = doc.at("output").get<std::string>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config file field: ") + e.what());
  }
}

// The config file must be loaded before CLI11 binds flag values over the
// spec, so --config is located with a manual scan first.
std::string find_config_argument(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return "";
}

void add_experiment_options(CLI::App* cmd, ExperimentSpec& spec, std::string& config_path) {
  cmd->add_option("--config", config_path, "JSON experiment config (flags override it)");
  cmd->add_option("--data", spec.data.path, "input data file");
  cmd->add_option("--format", spec.data.format, "csv-rows | csv-long | libras")
      ->check(CLI::IsMember({"csv-rows", "csv-long", "libras"}));
  cmd->add_option("--element-type", spec.data.element_type, "categorical | real | count")
      ->check(CLI::IsMember({"categorical", "real", "count"}));
  cmd->add_option("--label-column", spec.data.label_column, "0-based label column index");
  cmd->add_option("--pair", spec.data.pair, "libras digit pair, e.g. --pair 1,8")
      ->delimiter(',');
  cmd->add_flag("--standardize", spec.data.standardize, "z-normalize real dimensions");
  cmd->add_option("--k", spec.num_components, "number of mixture components");
  cmd->add_option("--states", spec.num_states, "hidden states per component");
  cmd->add_option("--lambda", spec.lambda, "prior strength >= 1, or 'auto' (sequence length)");
  cmd->add_option("--max-iters", spec.max_iterations, "EM iteration cap");
  cmd->add_option("--tol", spec.rel_tol, "relative log-likelihood tolerance");
  cmd->add_option("--alpha", spec.init_dirichlet_alpha, "Dirichlet init concentration");
  cmd->add_flag("!--no-gate", spec.gate_enabled, "disable the entropy gate");
  cmd->add_option("--out", spec.output, "output path prefix");
}

int cmd_fit(const ExperimentSpec& spec, const std::string& method, std::uint64_t seed) {
  if (spec.output.empty()) throw ConfigError("fit requires --out");
  const SequenceDataset data = load_data(spec.data);
  FitConfig config = make_fit_config(spec);
  config.strategy = strategy_from_name(method);
  config.seed = seed;

  const auto [model, report] = fit(data, spec.num_components, spec.num_states, config);
  save_model(spec.output + ".model.json", model);
  save_report(spec.output + ".report.json", report);
  std::cout << "wrote " << spec.output << ".model.json and " << spec.output << ".report.json\n";
  if (report.v_measure) std::cout << "v-measure " << *report.v_measure << ", ";
  std::cout << "entropy " << report.entropy.model_average_normalized << ", iterations "
            << report.iterations << "\n";
  return 0;
}

int cmd_compare(const ExperimentSpec& spec) {
  const SequenceDataset data = load_data(spec.data);
  const FitConfig base = make_fit_config(spec);
  std::vector<MStepStrategy> methods;
  for (const std::string& name : spec.methods) methods.push_back(strategy_from_name(name));

  const ComparisonTable table =
      run_comparison(data, spec.num_components, spec.num_states, methods, spec.seeds, base);
  const std::string rendered = render_comparison(table);
  std::cout << rendered;
  if (!spec.output.empty()) {
    std::ofstream json_out(spec.output + ".table.json");
    if (!json_out) throw ConfigError("cannot write " + spec.output + ".table.json");
    json_out << comparison_to_json(table);
    std::ofstream text_out(spec.output + ".table.txt");
    text_out << rendered;
    std::cout << "wrote " << spec.output << ".table.json and " << spec.output << ".table.txt\n";
  }
  return 0;
}

int cmd_entropy(const std::string& model_path) {
  const MixtureModel model = load_model(model_path);
  const EntropyReport report = model_entropy(model);
  std::cout.setf(std::ios::fixed);
  for (std::size_t k = 0; k < report.per_component_nats.size(); ++k) {
    std::cout.precision(6);
    std::cout << "component " << k << ": " << report.per_component_nats[k] << " nats, ";
    std::cout.precision(1);
    std::cout << 100.0 * report.per_component_normalized[k] << " %\n";
  }
  std::cout.precision(1);
  std::cout << "model average: " << 100.0 * report.model_average_normalized << " %\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"sequence clustering with mixtures of hidden Markov models"};
  app.require_subcommand(1);

  ExperimentSpec fit_spec;
  ExperimentSpec compare_spec;
  // Config files act as defaults underneath the flag values.
  try {
    const std::string config_path = find_config_argument(args);
    if (!config_path.empty()) {
      apply_config_file(config_path, fit_spec);
      compare_spec = fit_spec;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  std::string config_path_sink;
  std::string fit_method = fit_spec.methods.size() == 1 ? fit_spec.methods.front() : "standard";
  std::uint64_t fit_seed = fit_spec.seeds.size() == 1 ? fit_spec.seeds.front() : 0;
  CLI::App* fit_cmd = app.add_subcommand("fit", "fit one model and write model + report");
  add_experiment_options(fit_cmd, fit_spec, config_path_sink);
  fit_cmd->add_option("--method", fit_method, "standard | informational")
      ->check(CLI::IsMember({"standard", "informational"}));
  fit_cmd->add_option("--seed", fit_seed, "random seed");

  CLI::App* compare_cmd =
      app.add_subcommand("compare", "run methods x seeds and emit the comparison table");
  add_experiment_options(compare_cmd, compare_spec, config_path_sink);
  compare_cmd->add_option("--methods", compare_spec.methods, "comma-separated method list")
      ->delimiter(',');
  compare_cmd->add_option("--seeds", compare_spec.seeds, "comma-separated seed list")
      ->delimiter(',');

  std::string model_path;
  CLI::App* entropy_cmd =
      app.add_subcommand("entropy", "print the entropy report of a stored model");
  entropy_cmd->add_option("--model", model_path, "model document path")->required();

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (fit_cmd->parsed()) return cmd_fit(fit_spec, fit_method, fit_seed);
    if (compare_cmd->parsed()) return cmd_compare(compare_spec);
    return cmd_entropy(model_path);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ParameterError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace seqmix::cli
