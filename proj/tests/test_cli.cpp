#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli_app.hpp"
#include "seqmix/serialize.hpp"

namespace {

namespace fs = std::filesystem;

struct TempDir {
  TempDir() {
    root = fs::temp_directory_path() / ("seqmix_cli_" + std::to_string(::getpid()));
    fs::create_directories(root);
  }
  ~TempDir() { fs::remove_all(root); }
  std::string file(const std::string& name) const { return (root / name).string(); }
  fs::path root;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path);
  out << contents;
}

int run_cli(const std::vector<std::string>& args) { return seqmix::cli::run(args); }

std::string categorical_corpus() {
  // 8 short sequences from two regimes: runs of 0/1 vs runs of 2/3, with
  // the generating regime in the first column.
  return
      "0,0,0,1,0,0,1,1,0,0,0\n"
      "0,1,0,0,0,1,0,0,1,0,0\n"
      "0,0,1,1,0,0,0,0,1,0,1\n"
      "0,0,0,0,1,0,1,0,0,0,0\n"
      "1,2,3,2,2,3,2,2,2,3,2\n"
      "1,3,2,2,2,2,3,2,2,2,3\n"
      "1,2,2,3,2,2,2,3,2,2,2\n"
      "1,2,3,2,2,2,2,2,3,3,2\n";
}

}  // namespace

TEST_CASE("fit writes model and report documents") {
  TempDir dir;
  write_file(dir.file("data.csv"), categorical_corpus());
  const std::string prefix = dir.file("run");

  const int code = run_cli({"fit", "--data", dir.file("data.csv"), "--format", "csv-rows",
                            "--element-type", "categorical", "--label-column", "0", "--k", "2",
                            "--states", "2", "--method", "informational", "--lambda", "auto",
                            "--seed", "7", "--out", prefix});
  CHECK(code == 0);

  const seqmix::MixtureModel model = seqmix::load_model(prefix + ".model.json");
  CHECK(model.num_components() == 2);
  const seqmix::RunReport report = seqmix::load_report(prefix + ".report.json");
  CHECK(report.iterations >= 1);
  CHECK(report.v_measure.has_value());
  CHECK(report.config.lambda_resolved.has_value());
  CHECK(*report.config.lambda_resolved == 10.0);  // sequence length after label removal
  CHECK(!report.gate_decisions.empty());
}

TEST_CASE("informational lambda below one exits with the config code") {
  TempDir dir;
  write_file(dir.file("data.csv"), categorical_corpus());
  const int code = run_cli({"fit", "--data", dir.file("data.csv"), "--label-column", "0", "--k",
                            "2", "--states", "2", "--method", "informational", "--lambda", "0",
                            "--seed", "1", "--out", dir.file("x")});
  CHECK(code == 2);
}

TEST_CASE("repeated seeded runs produce byte-identical documents") {
  TempDir dir;
  write_file(dir.file("data.csv"), categorical_corpus());
  const std::vector<std::string> base{"fit",     "--data",  dir.file("data.csv"),
                                      "--label-column", "0", "--k",     "2",
                                      "--states", "2",      "--method", "informational",
                                      "--seed",  "33"};

  std::vector<std::string> first = base;
  first.insert(first.end(), {"--out", dir.file("a")});
  std::vector<std::string> second = base;
  second.insert(second.end(), {"--out", dir.file("b")});
  REQUIRE(run_cli(first) == 0);
  REQUIRE(run_cli(second) == 0);

  CHECK(read_file(dir.file("a.model.json")) == read_file(dir.file("b.model.json")));
  CHECK(read_file(dir.file("a.report.json")) == read_file(dir.file("b.report.json")));
}

TEST_CASE("compare renders one row per method and writes the table documents") {
  TempDir dir;
  write_file(dir.file("data.csv"), categorical_corpus());
  const int code = run_cli({"compare", "--data", dir.file("data.csv"), "--label-column", "0",
                            "--k", "2", "--states", "2", "--methods",
                            "standard,informational", "--seeds", "1,2,3", "--out",
                            dir.file("cmp")});
  CHECK(code == 0);
  const std::string table = read_file(dir.file("cmp.table.txt"));
  CHECK(table.find("standard") != std::string::npos);
  CHECK(table.find("informational") != std::string::npos);
  CHECK(fs::exists(dir.file("cmp.table.json")));

  // Single method, single seed: exactly one data row in the rendering.
  const int single = run_cli({"compare", "--data", dir.file("data.csv"), "--label-column", "0",
                              "--k", "2", "--states", "2", "--methods", "standard", "--seeds",
                              "5", "--out", dir.file("one")});
  CHECK(single == 0);
  const std::string one_row = read_file(dir.file("one.table.txt"));
  int lines = 0;
  for (char c : one_row) lines += (c == '\n');
  CHECK(lines == 2);  // header + one row
}

TEST_CASE("entropy subcommand reports stored models and rejects garbage") {
  TempDir dir;
  // Model with one near-deterministic and one uniform chain.
  seqmix::MixtureModel model;
  model.mixing = seqmix::Vector::Constant(2, 0.5);
  seqmix::Matrix identityish(2, 2);
  identityish << 0.999999999, 0.000000001, 0.000000001, 0.999999999;
  seqmix::HmmParams low;
  low.initial = seqmix::Vector::Constant(2, 0.5);
  low.transition = identityish;
  low.emission = seqmix::CategoricalEmission{seqmix::Matrix::Constant(2, 2, 0.5)};
  seqmix::HmmParams high = low;
  high.transition = seqmix::Matrix::Constant(2, 2, 0.5);
  model.components = {low, high};
  seqmix::save_model(dir.file("m.json"), model);

  CHECK(run_cli({"entropy", "--model", dir.file("m.json")}) == 0);

  write_file(dir.file("bad.json"), "{\"format\": \"nonsense\"}");
  CHECK(run_cli({"entropy", "--model", dir.file("bad.json")}) == 2);
  CHECK(run_cli({"entropy", "--model", dir.file("missing.json")}) == 2);
}

TEST_CASE("config file supplies defaults and flags override") {
  TempDir dir;
  write_file(dir.file("data.csv"), categorical_corpus());
  write_file(dir.file("exp.json"), std::string("{\n") +
                                       "  \"data\": {\"path\": \"" + dir.file("data.csv") +
                                       "\", \"format\": \"csv-rows\", "
                                       "\"element_type\": \"categorical\", \"label_column\": 0},\n"
                                       "  \"num_components\": 2,\n"
                                       "  \"num_states\": 2,\n"
                                       "  \"methods\": [\"informational\"],\n"
                                       "  \"seeds\": [11],\n"
                                       "  \"lambda\": \"auto\",\n"
                                       "  \"max_iterations\": 40\n"
                                       "}\n");

  const int code =
      run_cli({"fit", "--config", dir.file("exp.json"), "--out", dir.file("cfg")});
  CHECK(code == 0);
  const seqmix::RunReport report = seqmix::load_report(dir.file("cfg.report.json"));
  CHECK(report.seed == 11);
  CHECK(report.config.strategy == seqmix::MStepStrategy::Informational);
  CHECK(report.config.max_iterations == 40);

  // Flag overrides the config's seed.
  const int with_flag = run_cli(
      {"fit", "--config", dir.file("exp.json"), "--seed", "12", "--out", dir.file("cfg2")});
  CHECK(with_flag == 0);
  CHECK(seqmix::load_report(dir.file("cfg2.report.json")).seed == 12);
}

TEST_CASE("numerical collapse maps to exit code 3") {
  TempDir dir;
  // An absurd magnitude overflows the Gaussian moment accumulation, so every
  // component underflows on the first E-step.
  write_file(dir.file("huge.csv"), "1e160,1e160,1e160\n0,0,0\n");
  const int code = run_cli({"fit", "--data", dir.file("huge.csv"), "--format", "csv-rows",
                            "--element-type", "real", "--k", "1", "--states", "2", "--seed", "1",
                            "--out", dir.file("h")});
  CHECK(code == 3);
}

TEST_CASE("missing subcommand or unknown flags exit with the config code") {
  CHECK(run_cli({}) == 2);
  CHECK(run_cli({"fit", "--definitely-not-a-flag"}) == 2);
  CHECK(run_cli({"--help"}) == 0);
}
