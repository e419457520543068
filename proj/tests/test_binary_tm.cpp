#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "support/oracles.hpp"
#include "tsetlin/binary_tm.hpp"
#include "tsetlin/datagen.hpp"

using namespace tsetlin;

namespace {

TMParams small_params(std::uint64_t seed) {
  TMParams p;
  p.threshold = 100;
  p.specificity = 2.0;
  p.num_clauses = 10;
  p.seed = seed;
  return p;
}

void force_clause(BinaryTM& tm, std::size_t j, const std::vector<std::size_t>& lits,
                  std::uint32_t weight) {
  std::vector<std::uint16_t> states(tm.bank().num_literals(),
                                    static_cast<std::uint16_t>(tm.params().states_per_action));
  for (std::size_t lit : lits) {
    states[lit] = static_cast<std::uint16_t>(tm.params().states_per_action + 1);
  }
  tm.bank().load_clause(j, states, weight);
}

}  // namespace

TEST_CASE("params are validated") {
  TMParams p = small_params(0);
  p.num_clauses = 7;
  CHECK_THROWS_AS(BinaryTM(3, p), ContractError);
  p = small_params(0);
  p.specificity = 0.5;
  CHECK_THROWS_AS(BinaryTM(3, p), ContractError);
  p = small_params(0);
  p.threshold = 0;
  CHECK_THROWS_AS(BinaryTM(3, p), ContractError);
}

TEST_CASE("input shape mismatches are rejected") {
  BinaryTM tm(3, small_params(1));
  CHECK_THROWS_AS(tm.class_sum(BitRow{1, 0}, EvalMode::Infer, true), ShapeError);
  CHECK_THROWS_AS(tm.train_step(BitRow{1, 0, 1, 1}, 1), ShapeError);
}

TEST_CASE("saturated class sum suppresses feedback entirely") {
  // v = +T with y=1 gives p_I = 0, so no clause can receive feedback.
  BinaryTM tm(2, small_params(3));
  force_clause(tm, 0, {literal_index(0, false)}, 500);  // positive, matches, clips to +T
  const BinaryTM before = tm;
  tm.train_step(BitRow{1, 0}, 1);
  CHECK(tm == before);

  // Symmetric: v = -T with y=0 gives p_II = 0.
  BinaryTM tm2(2, small_params(4));
  force_clause(tm2, 1, {literal_index(0, false)}, 500);  // negative, matches, clips to -T
  const BinaryTM before2 = tm2;
  tm2.train_step(BitRow{1, 0}, 0);
  CHECK(tm2 == before2);
}

TEST_CASE("training is deterministic for a fixed seed and stream") {
  const auto ds = single_pattern_dataset(50, 0.7, 99);
  BinaryTM a(3, small_params(77));
  BinaryTM b(3, small_params(77));
  for (std::size_t i = 0; i < ds.X.size(); ++i) {
    a.train_step(ds.X[i], ds.y[i]);
    b.train_step(ds.X[i], ds.y[i]);
  }
  CHECK(a == b);
  CHECK(a.rng().save_state() == b.rng().save_state());
}

TEST_CASE("fit validates its inputs") {
  BinaryTM tm(3, small_params(5));
  CHECK_THROWS_AS(tm.fit({}, {}, 1), ContractError);
  CHECK_THROWS_AS(tm.fit({BitRow{1, 0, 1}}, {1, 0}, 1), ShapeError);
}

TEST_CASE("zero epochs leaves the machine unchanged and the trace empty") {
  const auto ds = single_pattern_dataset(20, 1.0, 1);
  BinaryTM tm(3, small_params(6));
  const BinaryTM before = tm;
  const auto trace = tm.fit(ds.X, ds.y, 0, {BitRow{1, 0, 1}});
  CHECK(tm == before);
  CHECK(trace.epochs() == 0);
}

TEST_CASE("fit reruns bit-identically") {
  const auto ds = cpt_dataset(30, 11);
  BinaryTM a(3, small_params(123));
  BinaryTM b(3, small_params(123));
  a.fit(ds.X, ds.y, 5);
  b.fit(ds.X, ds.y, 5);
  CHECK(a == b);
}

TEST_CASE("weights never drop below one during training") {
  const auto ds = cpt_dataset(40, 21);
  TMParams p = small_params(31);
  p.specificity = 1.5;
  BinaryTM tm(3, p);
  tm.fit(ds.X, ds.y, 20);
  for (int j = 0; j < tm.bank().num_clauses(); ++j) {
    CHECK(tm.bank().weight(j) >= 1);
  }
}

TEST_CASE("noise-free single-pattern training reaches 0.95*T within 100 epochs") {
  // Statistical property over 5 seeds with the reference configuration.
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto ds = single_pattern_dataset(100, 1.0, 1000 + seed);
    TMParams p;
    p.threshold = 2000;
    p.specificity = 1.0;
    p.num_clauses = 20;
    p.seed = seed;
    BinaryTM tm(3, p);
    const auto trace = tm.fit(ds.X, ds.y, 100, {BitRow{1, 0, 1}});
    const long long final_sum = trace.class_sums.back()[0];
    CHECK(final_sum >= 1900);
  }
}

TEST_CASE("pure-noise single-pattern training oscillates near zero") {
  const auto ds = single_pattern_dataset(100, 0.5, 77);
  TMParams p;
  p.threshold = 2000;
  p.specificity = 1.0;
  p.num_clauses = 20;
  p.seed = 9;
  BinaryTM tm(3, p);
  const auto trace = tm.fit(ds.X, ds.y, 200, {BitRow{1, 0, 1}});
  double sum = 0.0;
  for (std::size_t e = 100; e < 200; ++e) sum += static_cast<double>(trace.class_sums[e][0]);
  const double avg = sum / 100.0;
  CHECK(std::abs(avg) < 400.0);  // |score - 0.5| < 0.1
}

TEST_CASE("class sums against the oracle after real training") {
  const auto ds = cpt_dataset(25, 3);
  TMParams p = small_params(17);
  p.num_clauses = 16;
  BinaryTM tm(3, p);
  tm.fit(ds.X, ds.y, 10);
  for (const auto& row : cpt_table()) {
    const BitRow input(row.features.begin(), row.features.end());
    CHECK(tm.class_sum(input, EvalMode::Infer, false) == oracle::class_sum(tm.bank(), input, false));
    CHECK(tm.class_sum(input, EvalMode::Train, false) == oracle::class_sum(tm.bank(), input, true));
  }
}
