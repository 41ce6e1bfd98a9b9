#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "seqmix/errors.hpp"
#include "seqmix/eval.hpp"

using namespace seqmix;

TEST_CASE("hard assignments take the argmax with lowest-index ties") {
  EStepResult estep;
  estep.responsibilities.resize(3, 2);
  estep.responsibilities << 1.0, 0.0, 0.5, 0.5, 0.2, 0.8;
  const std::vector<int> assignment = hard_assignments(estep);
  CHECK(assignment == std::vector<int>{0, 0, 1});
}

TEST_CASE("hard assignments match a brute-force row scan") {
  std::mt19937_64 rng(55);
  EStepResult estep;
  estep.responsibilities.resize(20, 4);
  for (int n = 0; n < 20; ++n) {
    estep.responsibilities.row(n) = oracles::random_simplex(4, rng).transpose();
  }
  const std::vector<int> assignment = hard_assignments(estep);
  for (int n = 0; n < 20; ++n) {
    int best = 0;
    for (int k = 1; k < 4; ++k) {
      if (estep.responsibilities(n, k) > estep.responsibilities(n, best)) best = k;
    }
    CHECK(assignment[n] == best);
  }
}

TEST_CASE("v-measure basics") {
  CHECK(v_measure({0, 0, 1, 1}, {0, 0, 1, 1}) == doctest::Approx(1.0));
  // Bijective relabeling still scores 1.
  CHECK(v_measure({0, 0, 1, 1}, {7, 7, 3, 3}) == doctest::Approx(1.0));
  // Everything in one cluster: homogeneity collapses to 0.
  CHECK(v_measure({0, 0, 1, 1}, {2, 2, 2, 2}) == 0.0);
  // Single-class data in one cluster is perfect by convention.
  CHECK(v_measure({4, 4, 4}, {0, 0, 0}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(v_measure({0, 1}, {0, 1, 1}), ParameterError);
  CHECK_THROWS_AS(v_measure({}, {}), ParameterError);
}

TEST_CASE("v-measure of the worked pair") {
  const std::vector<int> labels{0, 0, 1, 1};
  const std::vector<int> predicted{0, 1, 1, 1};
  const double value = v_measure(labels, predicted);
  CHECK(value == doctest::Approx(oracles::v_measure_contingency(labels, predicted)).epsilon(1e-10));
  // Frozen from the contingency-table computation.
  CHECK(value == doctest::Approx(0.34371101848545077).epsilon(1e-10));
}

TEST_CASE("refining a perfect clustering into singletons loses completeness") {
  const std::vector<int> labels{0, 0, 1, 1};
  const std::vector<int> singletons{0, 1, 2, 3};
  const double value = v_measure(labels, singletons);
  CHECK(value < 1.0);
  CHECK(value > 0.0);
}

TEST_CASE("v-measure is invariant to id permutations") {
  std::mt19937_64 rng(808);
  std::uniform_int_distribution<int> label_draw(0, 3);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 11);
    std::vector<int> labels(n);
    std::vector<int> predicted(n);
    for (int i = 0; i < n; ++i) {
      labels[i] = label_draw(rng);
      predicted[i] = label_draw(rng);
    }
    const double reference = v_measure(labels, predicted);

    // Remap cluster ids through a random injection.
    std::vector<int> remap{9, 4, 7, 2};
    std::shuffle(remap.begin(), remap.end(), rng);
    std::vector<int> renamed(n);
    for (int i = 0; i < n; ++i) renamed[i] = remap[predicted[i]];
    CHECK(v_measure(labels, renamed) == doctest::Approx(reference).epsilon(1e-12));

    // And the class ids likewise.
    std::vector<int> relabeled(n);
    for (int i = 0; i < n; ++i) relabeled[i] = remap[labels[i]];
    CHECK(v_measure(relabeled, predicted) == doctest::Approx(reference).epsilon(1e-12));
  }
}

TEST_CASE("v-measure agrees with the contingency oracle on random pairs") {
  std::mt19937_64 rng(123);
  std::uniform_int_distribution<int> label_draw(0, 3);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 12);
    std::vector<int> labels(n);
    std::vector<int> predicted(n);
    for (int i = 0; i < n; ++i) {
      labels[i] = label_draw(rng);
      predicted[i] = label_draw(rng);
    }
    CHECK(v_measure(labels, predicted) ==
          doctest::Approx(oracles::v_measure_contingency(labels, predicted)).epsilon(1e-10));
    CHECK(v_measure(labels, labels) == doctest::Approx(1.0));
  }
}

TEST_CASE("v-measure respects the beta weighting") {
  const std::vector<int> labels{0, 0, 1, 1, 2, 2};
  const std::vector<int> predicted{0, 0, 1, 1, 1, 2};
  for (double beta : {0.5, 1.0, 2.0}) {
    CHECK(v_measure(labels, predicted, beta) ==
          doctest::Approx(oracles::v_measure_contingency(labels, predicted, beta))
              .epsilon(1e-10));
  }
}
