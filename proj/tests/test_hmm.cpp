#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "seqmix/errors.hpp"
#include "seqmix/hmm.hpp"
#include "seqmix/numeric.hpp"

using namespace seqmix;

namespace {

HmmParams two_state_categorical(double p11, double p22, Matrix emission_probs,
                                Vector initial = Vector::Constant(2, 0.5)) {
  HmmParams params;
  params.initial = std::move(initial);
  params.transition.resize(2, 2);
  params.transition << p11, 1 - p11, 1 - p22, p22;
  params.emission = CategoricalEmission{std::move(emission_probs)};
  return params;
}

}  // namespace

TEST_CASE("single state forces degenerate posteriors") {
  HmmParams params;
  params.initial = Vector::Ones(1);
  params.transition = Matrix::Ones(1, 1);
  Matrix probs(1, 3);
  probs << 0.2, 0.3, 0.5;
  params.emission = CategoricalEmission{probs};

  const CategoricalSeq seq{0, 2, 1, 2};
  const PosteriorTables tables = forward_backward(params, seq);
  CHECK(tables.gamma.rows() == 4);
  for (int m = 0; m < 4; ++m) CHECK(tables.gamma(m, 0) == doctest::Approx(1.0).epsilon(1e-12));
  const double expected = std::log(0.2) + std::log(0.5) + std::log(0.3) + std::log(0.5);
  CHECK(tables.log_likelihood == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("one-step posterior from the definition") {
  Matrix probs(2, 2);
  probs << 0.2, 0.8, 0.8, 0.2;
  // p(y=0 | state 0) = .2, p(y=0 | state 1) = .8
  HmmParams params = two_state_categorical(0.5, 0.5, probs);
  const CategoricalSeq seq{0};

  const PosteriorTables tables = forward_backward(params, seq);
  CHECK(tables.xi.empty());
  CHECK(tables.gamma(0, 0) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(tables.gamma(0, 1) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(tables.log_likelihood == doctest::Approx(std::log(0.5)).epsilon(1e-12));
}

TEST_CASE("forward likelihood matches path enumeration") {
  std::mt19937_64 rng(20240811);
  for (int trial = 0; trial < 40; ++trial) {
    const int num_states = 2 + static_cast<int>(rng() % 2);
    const int length = 1 + static_cast<int>(rng() % 6);
    HmmParams params;
    Sequence seq;
    switch (trial % 3) {
      case 0:
        params = oracles::random_categorical_hmm(num_states, 2, rng);
        seq = oracles::random_symbols(length, 2, rng);
        break;
      case 1: {
        params = oracles::random_gaussian_hmm(num_states, 2, rng);
        seq = sample_sequence(params, length, rng).first;
        break;
      }
      default: {
        params = oracles::random_poisson_hmm(num_states, 1, rng);
        seq = sample_sequence(params, length, rng).first;
        break;
      }
    }
    const double expected = oracles::path_enumeration_log_likelihood(params, seq);
    const PosteriorTables tables = forward_backward(params, seq);
    CHECK(std::abs(tables.log_likelihood - expected) < 1e-10);
    CHECK(std::abs(sequence_log_likelihood(params, seq) - tables.log_likelihood) < 1e-12);
  }
}

TEST_CASE("state posteriors match path enumeration on a small instance") {
  std::mt19937_64 rng(7);
  const HmmParams params = oracles::random_categorical_hmm(2, 2, rng);
  const CategoricalSeq seq{0, 1, 1};
  const PosteriorTables tables = forward_backward(params, seq);
  for (int m = 0; m < 3; ++m) {
    for (int j = 0; j < 2; ++j) {
      CHECK(tables.gamma(m, j) ==
            doctest::Approx(oracles::path_enumeration_state_posterior(params, seq, m, j))
                .epsilon(1e-10));
    }
  }
}

TEST_CASE("posterior tables are normalized and consistent") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const int num_states = 2 + static_cast<int>(rng() % 3);
    const int length = 2 + static_cast<int>(rng() % 8);
    const HmmParams params = oracles::random_categorical_hmm(num_states, 3, rng);
    const Sequence seq = oracles::random_symbols(length, 3, rng);
    const PosteriorTables tables = forward_backward(params, seq);

    for (int m = 0; m < length; ++m) {
      CHECK(tables.gamma.row(m).sum() == doctest::Approx(1.0).epsilon(1e-8));
    }
    REQUIRE(tables.xi.size() == static_cast<std::size_t>(length - 1));
    for (int m = 0; m + 1 < length; ++m) {
      CHECK(tables.xi[m].sum() == doctest::Approx(1.0).epsilon(1e-8));
      for (int i = 0; i < num_states; ++i) {
        CHECK(tables.xi[m].row(i).sum() == doctest::Approx(tables.gamma(m, i)).epsilon(1e-8));
      }
      for (int j = 0; j < num_states; ++j) {
        CHECK(tables.xi[m].col(j).sum() == doctest::Approx(tables.gamma(m + 1, j)).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("state relabeling leaves the likelihood unchanged") {
  std::mt19937_64 rng(1234);
  const HmmParams params = oracles::random_categorical_hmm(3, 4, rng);
  const Sequence seq = oracles::random_symbols(7, 4, rng);
  const double reference = sequence_log_likelihood(params, seq);

  const std::vector<int> perm{2, 0, 1};
  HmmParams permuted;
  permuted.initial = Vector(3);
  permuted.transition = Matrix(3, 3);
  Matrix probs(3, 4);
  const Matrix& old_probs = std::get<CategoricalEmission>(params.emission).probs;
  for (int i = 0; i < 3; ++i) {
    permuted.initial(perm[i]) = params.initial(i);
    probs.row(perm[i]) = old_probs.row(i);
    for (int j = 0; j < 3; ++j) permuted.transition(perm[i], perm[j]) = params.transition(i, j);
  }
  permuted.emission = CategoricalEmission{probs};
  CHECK(sequence_log_likelihood(permuted, seq) == doctest::Approx(reference).epsilon(1e-12));
}

TEST_CASE("deterministic chain gives exact zero log-likelihood or underflow") {
  // States 0 and 1 emit symbols 0 and 1 deterministically; symbol 2 is
  // impossible everywhere.
  Matrix probs(2, 3);
  probs << 1, 0, 0, 0, 1, 0;
  Vector initial(2);
  initial << 1, 0;
  HmmParams params;
  params.initial = initial;
  params.transition = Matrix::Identity(2, 2);
  params.emission = CategoricalEmission{probs};

  CHECK(sequence_log_likelihood(params, CategoricalSeq{0, 0, 0, 0}) == 0.0);

  try {
    sequence_log_likelihood(params, CategoricalSeq{0, 0, 2});
    FAIL("expected NumericalError");
  } catch (const NumericalError& e) {
    CHECK(std::string(e.what()).find("step 3") != std::string::npos);
  }
}

TEST_CASE("dimension mismatches are parameter errors") {
  std::mt19937_64 rng(5);
  const HmmParams params = oracles::random_categorical_hmm(2, 3, rng);
  CHECK_THROWS_AS(sequence_log_likelihood(params, CategoricalSeq{0, 3}), ParameterError);
  CHECK_THROWS_AS(sequence_log_likelihood(params, RealSeq(Matrix::Zero(2, 2))), ParameterError);
  CHECK_THROWS_AS(forward_backward(params, CategoricalSeq{}), ParameterError);

  HmmParams broken = params;
  broken.transition(0, 0) += 0.1;
  CHECK_THROWS_AS(sequence_log_likelihood(broken, CategoricalSeq{0}), ParameterError);
}

TEST_CASE("sampling: absorbing start state") {
  Matrix probs(2, 2);
  probs << 1, 0, 0, 1;
  Vector initial(2);
  initial << 0, 1;
  HmmParams params;
  params.initial = initial;
  params.transition = Matrix::Identity(2, 2);
  params.emission = CategoricalEmission{probs};

  const auto [seq, path] = sample_sequence(params, 20, 42);
  for (int state : path) CHECK(state == 1);
  for (int symbol : std::get<CategoricalSeq>(seq)) CHECK(symbol == 1);
}

TEST_CASE("sampling is deterministic given the seed") {
  std::mt19937_64 rng(77);
  const HmmParams params = oracles::random_gaussian_hmm(3, 2, rng);
  const auto [seq_a, path_a] = sample_sequence(params, 50, 123);
  const auto [seq_b, path_b] = sample_sequence(params, 50, 123);
  CHECK(path_a == path_b);
  CHECK(std::get<RealSeq>(seq_a) == std::get<RealSeq>(seq_b));
}

TEST_CASE("sampled transition frequencies converge to the generator") {
  Matrix probs(2, 2);
  probs << 1, 0, 0, 1;
  HmmParams params;
  params.initial = Vector::Constant(2, 0.5);
  params.transition.resize(2, 2);
  params.transition << 0.7, 0.3, 0.4, 0.6;
  params.emission = CategoricalEmission{probs};

  Matrix counts = Matrix::Zero(2, 2);
  std::mt19937_64 rng(2024);
  for (int n = 0; n < 100; ++n) {
    const auto [seq, path] = sample_sequence(params, 1000, rng);
    for (std::size_t m = 1; m < path.size(); ++m) counts(path[m - 1], path[m]) += 1.0;
  }
  for (int i = 0; i < 2; ++i) {
    const Vector empirical = counts.row(i).transpose() / counts.row(i).sum();
    for (int j = 0; j < 2; ++j) {
      CHECK(std::abs(empirical(j) - params.transition(i, j)) < 0.02);
    }
  }
}
