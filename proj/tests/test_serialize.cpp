#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "seqmix/errors.hpp"
#include "seqmix/serialize.hpp"

using namespace seqmix;

namespace {

MixtureModel random_model(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  MixtureModel model;
  model.mixing = oracles::random_simplex(3, rng);
  model.components.push_back(oracles::random_categorical_hmm(2, 4, rng));
  model.components.push_back(oracles::random_categorical_hmm(2, 4, rng));
  model.components.push_back(oracles::random_categorical_hmm(2, 4, rng));
  return model;
}

}  // namespace

TEST_CASE("model documents round trip bit for bit") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    const MixtureModel model = random_model(seed);
    const MixtureModel reloaded = model_from_json(model_to_json(model));
    CHECK((model.mixing - reloaded.mixing).cwiseAbs().maxCoeff() == 0.0);
    for (int k = 0; k < 3; ++k) {
      CHECK((model.components[k].transition - reloaded.components[k].transition)
                .cwiseAbs()
                .maxCoeff() == 0.0);
      CHECK((model.components[k].initial - reloaded.components[k].initial)
                .cwiseAbs()
                .maxCoeff() == 0.0);
      const Matrix& original = std::get<CategoricalEmission>(model.components[k].emission).probs;
      const Matrix& restored =
          std::get<CategoricalEmission>(reloaded.components[k].emission).probs;
      CHECK((original - restored).cwiseAbs().maxCoeff() == 0.0);
    }
    // A second serialization of the reloaded model is byte-identical.
    CHECK(model_to_json(model) == model_to_json(reloaded));
  }
}

TEST_CASE("gaussian and poisson emissions survive the round trip") {
  std::mt19937_64 rng(9);
  MixtureModel model;
  model.mixing = Vector::Constant(2, 0.5);
  model.components.push_back(oracles::random_gaussian_hmm(2, 3, rng));
  model.components.push_back(oracles::random_gaussian_hmm(2, 3, rng));
  const MixtureModel reloaded = model_from_json(model_to_json(model));
  const auto& original = std::get<GaussianEmission>(model.components[1].emission);
  const auto& restored = std::get<GaussianEmission>(reloaded.components[1].emission);
  CHECK((original.mean - restored.mean).cwiseAbs().maxCoeff() == 0.0);
  CHECK((original.variance - restored.variance).cwiseAbs().maxCoeff() == 0.0);

  MixtureModel poisson;
  poisson.mixing = Vector::Ones(1);
  poisson.components.push_back(oracles::random_poisson_hmm(3, 2, rng));
  const MixtureModel poisson_reloaded = model_from_json(model_to_json(poisson));
  CHECK((std::get<PoissonEmission>(poisson.components[0].emission).rate -
         std::get<PoissonEmission>(poisson_reloaded.components[0].emission).rate)
            .cwiseAbs()
            .maxCoeff() == 0.0);
}

TEST_CASE("malformed model documents are parameter errors") {
  CHECK_THROWS_AS(model_from_json("not json at all"), ParameterError);
  CHECK_THROWS_AS(model_from_json("{\"format\": \"something-else\"}"), ParameterError);
  CHECK_THROWS_AS(model_from_json("{\"format\": \"seqmix-model\"}"), ParameterError);
  // Structurally valid JSON with a broken stochastic row.
  MixtureModel model = random_model(4);
  std::string text = model_to_json(model);
  const auto pos = text.find("\"mixing\": [");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 12, "\"mixing\": [9");
  CHECK_THROWS_AS(model_from_json(text), ParameterError);
}

TEST_CASE("report documents round trip") {
  RunReport report;
  report.v_measure = 0.875;
  report.entropy.per_component_nats = {0.056002, 1.05563};
  report.entropy.per_component_normalized = {0.0509, 0.9609};
  report.entropy.model_average_normalized = 0.5059;
  report.iterations = 7;
  report.final_log_likelihood = -123.456789012345678;
  report.log_likelihood_history = {-150.0, -130.0, -123.456789012345678};
  report.seed = 42;
  report.config = {2, 3, MStepStrategy::Informational, 45.0, true, 100, 1e-4, 0.1, 42};
  report.gate_decisions = {{0, 0.1, 0.2, true}, {1, 0.3, 0.25, false}};

  const RunReport reloaded = report_from_json(report_to_json(report));
  CHECK(*reloaded.v_measure == *report.v_measure);
  CHECK(reloaded.iterations == report.iterations);
  CHECK(reloaded.final_log_likelihood == report.final_log_likelihood);
  CHECK(reloaded.log_likelihood_history == report.log_likelihood_history);
  CHECK(reloaded.seed == report.seed);
  CHECK(reloaded.config.strategy == MStepStrategy::Informational);
  CHECK(*reloaded.config.lambda_resolved == 45.0);
  CHECK(reloaded.entropy.per_component_nats == report.entropy.per_component_nats);
  REQUIRE(reloaded.gate_decisions.size() == 2);
  CHECK(reloaded.gate_decisions[0].chose_regularized);
  CHECK(reloaded.gate_decisions[1].h_standard == 0.25);
  CHECK(report_to_json(reloaded) == report_to_json(report));

  // Unlabeled runs keep the v-measure absent.
  report.v_measure.reset();
  const RunReport unlabeled = report_from_json(report_to_json(report));
  CHECK_FALSE(unlabeled.v_measure.has_value());
}
