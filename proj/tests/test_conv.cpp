#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "support/oracles.hpp"
#include "tsetlin/conv.hpp"
#include "tsetlin/rng.hpp"

using namespace tsetlin;

namespace {

TMParams conv_params(std::uint64_t seed) {
  TMParams p;
  p.threshold = 60;
  p.specificity = 3.0;
  p.num_clauses = 6;
  p.seed = seed;
  return p;
}

BitPlanes random_planes(int planes, int h, int w, Rng& rng) {
  BitPlanes img(planes, h, w);
  for (auto& b : img.bits) b = rng.below(2) ? 1 : 0;
  return img;
}

// Flat feature row of one patch, by the documented layout.
BitRow patch_bits(const BitPlanes& img, const PatchConfig& cfg, int r, int c) {
  BitRow bits;
  for (int p = 0; p < cfg.planes; ++p) {
    for (int dr = 0; dr < cfg.patch_h; ++dr) {
      for (int dc = 0; dc < cfg.patch_w; ++dc) {
        bits.push_back(img.at(p, r + dr, c + dc));
      }
    }
  }
  for (int t = 0; t < cfg.row_position_bits(); ++t) bits.push_back(r > t ? 1 : 0);
  for (int t = 0; t < cfg.col_position_bits(); ++t) bits.push_back(c > t ? 1 : 0);
  return bits;
}

}  // namespace

TEST_CASE("patch counts") {
  PatchConfig cfg{.height = 32, .width = 32, .planes = 1, .patch_h = 3, .patch_w = 3};
  CHECK(cfg.patches_per_image() == 900);

  PatchConfig whole{.height = 5, .width = 7, .planes = 2, .patch_h = 5, .patch_w = 7};
  CHECK(whole.patches_per_image() == 1);

  PatchConfig bad{.height = 3, .width = 3, .planes = 1, .patch_h = 4, .patch_w = 1};
  CHECK_THROWS_AS(bad.validate(), ContractError);
}

TEST_CASE("patch extraction matches hand enumeration on a 4x4 image") {
  Rng rng(17);
  const BitPlanes img = random_planes(1, 4, 4, rng);

  SECTION("without position literals") {
    PatchConfig cfg{.height = 4, .width = 4, .planes = 1, .patch_h = 2, .patch_w = 2,
                    .position_literals = false};
    const PatchMatrix patches = extract_patches(img, cfg);
    REQUIRE(patches.count() == 9);
    std::size_t idx = 0;
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c, ++idx) {
        const BitRow expect{img.at(0, r, c), img.at(0, r, c + 1), img.at(0, r + 1, c),
                            img.at(0, r + 1, c + 1)};
        const LiteralVector packed(expect);
        for (std::size_t w = 0; w < packed.words().size(); ++w) {
          CHECK(patches.patch(idx)[w] == packed.words()[w]);
        }
      }
    }
  }

  SECTION("with position literals") {
    PatchConfig cfg{.height = 4, .width = 4, .planes = 1, .patch_h = 2, .patch_w = 2,
                    .position_literals = true};
    CHECK(cfg.patch_features() == 4 + 2 + 2);
    const PatchMatrix patches = extract_patches(img, cfg);
    std::size_t idx = 0;
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c, ++idx) {
        const LiteralVector packed(patch_bits(img, cfg, r, c));
        for (std::size_t w = 0; w < packed.words().size(); ++w) {
          CHECK(patches.patch(idx)[w] == packed.words()[w]);
        }
      }
    }
  }
}

TEST_CASE("dimension mismatch is rejected") {
  PatchConfig cfg{.height = 4, .width = 4, .planes = 2, .patch_h = 2, .patch_w = 2};
  const BitPlanes img(1, 4, 4);
  CHECK_THROWS_AS(extract_patches(img, cfg), ShapeError);
}

TEST_CASE("existential clause match equals the OR over per-patch evaluation") {
  Rng rng(23);
  PatchConfig cfg{.height = 4, .width = 5, .planes = 2, .patch_h = 2, .patch_w = 3,
                  .position_literals = true};
  for (int trial = 0; trial < 50; ++trial) {
    const BitPlanes img = random_planes(2, 4, 5, rng);
    const PatchMatrix patches = extract_patches(img, cfg);

    ClauseBank bank(cfg.patch_features(), 8, 8, std::nullopt);
    for (int j = 0; j < 8; ++j) {
      std::vector<std::uint16_t> states(bank.num_literals());
      for (auto& s : states) s = static_cast<std::uint16_t>(1 + rng.below(16));
      bank.load_clause(j, states, 1);
    }

    std::vector<BitRow> rows;
    for (int r = 0; r < cfg.rows(); ++r) {
      for (int c = 0; c < cfg.cols(); ++c) rows.push_back(patch_bits(img, cfg, r, c));
    }

    for (int j = 0; j < 8; ++j) {
      CHECK(bank.matches_any(j, patches.view(), EvalMode::Infer) ==
            oracle::conv_clause_matches(bank, j, rows, false));
      CHECK(bank.matches_any(j, patches.view(), EvalMode::Train) ==
            oracle::conv_clause_matches(bank, j, rows, true));
    }
  }
}

TEST_CASE("clause requiring a set bit never fires on an all-zero image") {
  PatchConfig cfg{.height = 3, .width = 3, .planes = 1, .patch_h = 2, .patch_w = 2,
                  .position_literals = false};
  const BitPlanes img(1, 3, 3);
  const PatchMatrix patches = extract_patches(img, cfg);
  ClauseBank bank(cfg.patch_features(), 2, 8, std::nullopt);
  std::vector<std::uint16_t> states(bank.num_literals(), 8);
  states[literal_index(0, false)] = 9;  // requires the first patch pixel set
  bank.load_clause(0, states, 1);
  CHECK_FALSE(bank.matches_any(0, patches.view(), EvalMode::Infer));
  CHECK_FALSE(bank.matches_any(0, patches.view(), EvalMode::Train));
}

TEST_CASE("empty clause at inference stays 0 through the existential OR") {
  PatchConfig cfg{.height = 3, .width = 3, .planes = 1, .patch_h = 2, .patch_w = 2};
  Rng rng(4);
  const BitPlanes img = random_planes(1, 3, 3, rng);
  const PatchMatrix patches = extract_patches(img, cfg);
  ClauseBank bank(cfg.patch_features(), 2, 8, std::nullopt);
  CHECK_FALSE(bank.matches_any(0, patches.view(), EvalMode::Infer));
  CHECK(bank.matches_any(0, patches.view(), EvalMode::Train));
}

TEST_CASE("clause matching exactly one corner patch fires") {
  PatchConfig cfg{.height = 4, .width = 4, .planes = 1, .patch_h = 2, .patch_w = 2,
                  .position_literals = true};
  BitPlanes img(1, 4, 4);
  img.set(0, 0, 0, 1);  // only the top-left pixel set
  const PatchMatrix patches = extract_patches(img, cfg);

  // Clause: first patch pixel set AND position row 0 / col 0 (negated
  // position literals pin the top-left corner).
  ClauseBank bank(cfg.patch_features(), 2, 8, std::nullopt);
  std::vector<std::uint16_t> states(bank.num_literals(), 8);
  states[literal_index(0, false)] = 9;
  states[literal_index(4, true)] = 9;  // row therm bit 0 must be 0
  states[literal_index(6, true)] = 9;  // col therm bit 0 must be 0
  bank.load_clause(0, states, 1);

  CHECK(bank.matches_any(0, patches.view(), EvalMode::Infer));
  int matching = 0;
  for (std::size_t i = 0; i < patches.count(); ++i) {
    matching += bank.evaluate(0, patches.patch(i), EvalMode::Infer) ? 1 : 0;
  }
  CHECK(matching == 1);
}

TEST_CASE("uniform matching-patch selection (chi-square over 10^4 steps)") {
  // Two patches, both matched by the positive clause; the literal that
  // differs between them counts which patch Type II was applied against.
  const int n_states = 30000;
  TMParams params;
  params.threshold = 100;
  params.specificity = 1.0;
  params.num_clauses = 2;
  params.states_per_action = n_states;
  params.seed = 321;
  BinaryTM tm(2, params);

  // Positive clause includes x0 (deep), its other TAs sit at deep exclude
  // so 10^4 one-step pushes cannot cross the boundary.
  std::vector<std::uint16_t> states(4, 1);
  states[literal_index(0, false)] = 2 * n_states;
  tm.bank().load_clause(0, states, 30102);

  PatchMatrix patches(2, words_for_literals(2));
  patches.set_literal(0, 0, true);   // patch 0: {1, 0}
  patches.set_literal(0, 1, false);
  patches.set_literal(1, 0, true);   // patch 1: {1, 1}
  patches.set_literal(1, 1, true);

  constexpr int kSteps = 10000;
  for (int t = 0; t < kSteps; ++t) tm.train_step(patches.view(), 0);

  // x1 is 0 only in patch 0, not-x1 is 0 only in patch 1.
  const long long chose0 = tm.bank().state(0, literal_index(1, false)) - 1;
  const long long chose1 = tm.bank().state(0, literal_index(1, true)) - 1;
  CHECK(chose0 + chose1 == kSteps);
  const double expected = kSteps * 0.5;
  const double chi2 = (chose0 - expected) * (chose0 - expected) / (kSteps * 0.25);
  CHECK(chi2 < 3.84);
}

TEST_CASE("degenerate whole-image patches reproduce the flat machine exactly") {
  Rng rng(606);
  PatchConfig cfg{.height = 3, .width = 4, .planes = 2, .patch_h = 3, .patch_w = 4,
                  .position_literals = false};
  REQUIRE(cfg.patches_per_image() == 1);

  std::vector<BitPlanes> images;
  std::vector<BitRow> rows;
  std::vector<int> labels;
  for (int i = 0; i < 40; ++i) {
    images.push_back(random_planes(2, 3, 4, rng));
    rows.push_back(images.back().flatten());
    labels.push_back(static_cast<int>(rng.below(2)));
  }

  const TMParams params = conv_params(2025);
  ConvolutionalTM conv({0, 1}, cfg, params);
  MulticlassTM flat({0, 1}, cfg.patch_features(), params);
  conv.fit(images, labels, 4);
  flat.fit(rows, labels, 4);

  CHECK(conv.inner() == flat);
  for (std::size_t k = 0; k < flat.num_units(); ++k) {
    CHECK(conv.inner().unit(k).rng().save_state() == flat.unit(k).rng().save_state());
  }
  for (int i = 0; i < 10; ++i) {
    const BitPlanes img = random_planes(2, 3, 4, rng);
    CHECK(conv.class_sums_all(img) == flat.class_sums_all(img.flatten()));
  }
}

TEST_CASE("literal budget holds through convolutional training") {
  Rng rng(808);
  PatchConfig cfg{.height = 6, .width = 6, .planes = 2, .patch_h = 3, .patch_w = 3};
  TMParams params;
  params.threshold = 40;
  params.specificity = 5.0;  // aggressive inclusion pressure
  params.num_clauses = 8;
  params.literal_budget = 4;
  params.seed = 3;
  ConvolutionalTM tm({0, 1}, cfg, params);

  std::vector<BitPlanes> images;
  std::vector<int> labels;
  for (int i = 0; i < 50; ++i) {
    images.push_back(random_planes(2, 6, 6, rng));
    labels.push_back(static_cast<int>(rng.below(2)));
  }
  tm.fit(images, labels, 10);

  for (std::size_t k = 0; k < 2; ++k) {
    const ClauseBank& bank = tm.inner().unit(k).bank();
    for (int j = 0; j < bank.num_clauses(); ++j) {
      REQUIRE(bank.include_count(j) <= 4);
    }
  }
}

TEST_CASE("clause matching zero patches receives only the erase branch") {
  // y=1 with an unmatched positive clause: Type I erase erodes TA states
  // toward exclude, and the weight must not change.
  TMParams params;
  params.threshold = 10;
  params.specificity = 1.0;  // erase probability 1
  params.num_clauses = 2;
  params.states_per_action = 8;
  params.seed = 5;
  BinaryTM tm(1, params);

  std::vector<std::uint16_t> states(2);
  states[literal_index(0, false)] = 12;  // include x0, mid include-band
  states[literal_index(0, true)] = 4;
  tm.bank().load_clause(0, states, 3);
  // Matching negative clause drives v to -T so p_I = 1 and the erase branch
  // is guaranteed to fire.
  std::vector<std::uint16_t> neg(2, 8);
  neg[literal_index(0, true)] = 12;
  tm.bank().load_clause(1, neg, 100);

  PatchMatrix patches(1, words_for_literals(1));
  patches.set_literal(0, 0, false);
  // patch {0}: violates the included x0, so the clause matches nothing.
  tm.train_step(patches.view(), 1);

  CHECK(tm.bank().weight(0) == 3);
  CHECK(tm.bank().state(0, literal_index(0, false)) == 11);
  CHECK(tm.bank().state(0, literal_index(0, true)) == 3);
}
