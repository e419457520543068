#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "tsetlin/datagen.hpp"

using namespace tsetlin;
using Catch::Matchers::WithinAbs;

TEST_CASE("single pattern dataset") {
  SECTION("all rows carry the fixed pattern") {
    const auto ds = single_pattern_dataset(25, 0.5, 1);
    REQUIRE(ds.X.size() == 25);
    for (const auto& row : ds.X) CHECK(row == BitRow{1, 0, 1});
  }
  SECTION("p = 1 and p = 0 are deterministic") {
    for (int label : single_pattern_dataset(100, 1.0, 2).y) CHECK(label == 1);
    for (int label : single_pattern_dataset(100, 0.0, 3).y) CHECK(label == 0);
  }
  SECTION("label mean lands within 3 sigma of p") {
    const std::size_t n = 100000;
    const auto ds = single_pattern_dataset(n, 0.7, 4);
    double mean = 0.0;
    for (int label : ds.y) mean += label;
    mean /= static_cast<double>(n);
    const double sigma = std::sqrt(0.7 * 0.3 / static_cast<double>(n));
    CHECK(std::abs(mean - 0.7) <= 3.0 * sigma);
  }
  SECTION("invalid p is rejected") {
    CHECK_THROWS_AS(single_pattern_dataset(10, 1.5, 0), ContractError);
  }
  SECTION("seeded reproducibility") {
    const auto a = single_pattern_dataset(500, 0.3, 99);
    const auto b = single_pattern_dataset(500, 0.3, 99);
    CHECK(a.y == b.y);
  }
}

TEST_CASE("cpt dataset follows the conditional probability table") {
  SECTION("deterministic rows") {
    const auto ds = cpt_dataset(50, 5);
    REQUIRE(ds.X.size() == 400);
    // rows 0..49 are (1,1,1) with p=1.0; rows 350..399 are (0,0,0) with p=0.
    for (int i = 0; i < 50; ++i) {
      CHECK(ds.X[i] == BitRow{1, 1, 1});
      CHECK(ds.y[i] == 1);
    }
    for (int i = 350; i < 400; ++i) {
      CHECK(ds.X[i] == BitRow{0, 0, 0});
      CHECK(ds.y[i] == 0);
    }
  }
  SECTION("marginals converge to the table at 10^5 copies") {
    const std::size_t copies = 100000;
    const auto ds = cpt_dataset(copies, 17);
    for (std::size_t k = 0; k < 8; ++k) {
      double mean = 0.0;
      for (std::size_t i = k * copies; i < (k + 1) * copies; ++i) mean += ds.y[i];
      mean /= static_cast<double>(copies);
      const double p = cpt_table()[k].p_target;
      const double sigma = std::sqrt(std::max(p * (1.0 - p), 1e-12) / copies);
      CHECK(std::abs(mean - p) <= std::max(3.0 * sigma, 1e-9));
    }
  }
}

TEST_CASE("two moons geometry") {
  SECTION("noiseless points lie exactly on the two arcs") {
    const auto ds = two_moons(400, 0.0, 8);
    for (std::size_t i = 0; i < ds.X.size(); ++i) {
      const double x = ds.X[i][0];
      const double y = ds.X[i][1];
      if (ds.y[i] == 0) {
        CHECK_THAT(x * x + y * y, WithinAbs(1.0, 1e-9));
        CHECK(y >= -1e-9);
      } else {
        CHECK_THAT((x - 1.0) * (x - 1.0) + (y - 0.5) * (y - 0.5), WithinAbs(1.0, 1e-9));
        CHECK(y <= 0.5 + 1e-9);
      }
    }
  }
  SECTION("labels are balanced") {
    const auto ds = two_moons(1000, 0.2, 9);
    int ones = 0;
    for (int label : ds.y) ones += label;
    CHECK(ones == 500);
  }
  SECTION("odd n is rejected") { CHECK_THROWS_AS(two_moons(7, 0.1, 0), ContractError); }
  SECTION("seeded reproducibility") {
    const auto a = two_moons(100, 0.15, 42);
    const auto b = two_moons(100, 0.15, 42);
    CHECK(a.X == b.X);
  }
}

TEST_CASE("mesh grid") {
  SECTION("two steps yield the four corners") {
    const auto pts = mesh_grid(0.0, 1.0, 2.0, 3.0, 2);
    REQUIRE(pts.size() == 4);
    CHECK(pts[0] == std::array<double, 2>{0.0, 2.0});
    CHECK(pts[1] == std::array<double, 2>{1.0, 2.0});
    CHECK(pts[2] == std::array<double, 2>{0.0, 3.0});
    CHECK(pts[3] == std::array<double, 2>{1.0, 3.0});
  }
  SECTION("three steps hit the midpoints") {
    const auto pts = mesh_grid(0.0, 1.0, 0.0, 1.0, 3);
    REQUIRE(pts.size() == 9);
    for (const auto& p : pts) {
      CHECK((p[0] == 0.0 || p[0] == 0.5 || p[0] == 1.0));
      CHECK((p[1] == 0.0 || p[1] == 0.5 || p[1] == 1.0));
    }
  }
  SECTION("point count is steps squared") {
    CHECK(mesh_grid(-1.0, 1.0, -1.0, 1.0, 13).size() == 169);
  }
  SECTION("degenerate ranges are rejected") {
    CHECK_THROWS_AS(mesh_grid(1.0, 1.0, 0.0, 1.0, 3), ContractError);
    CHECK_THROWS_AS(mesh_grid(0.0, 1.0, 0.0, 1.0, 1), ContractError);
  }
}
