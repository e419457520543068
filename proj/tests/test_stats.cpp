#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "tsetlin/stats.hpp"

using namespace tsetlin;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

// Reference values frozen from an independent statistics package.

TEST_CASE("student t survival function") {
  CHECK_THAT(student_t_sf(2.5, 10.0), WithinRel(1.572342211830e-02, 1e-9));
  CHECK_THAT(student_t_sf(-1.3, 3.7), WithinRel(8.656666379137e-01, 1e-9));
  CHECK_THAT(student_t_sf(0.0, 5.0), WithinRel(0.5, 1e-12));
  CHECK_THAT(student_t_sf(6.2, 24.5), WithinRel(9.538471040012e-07, 1e-8));
}

TEST_CASE("welch t-test against reference") {
  const std::vector<double> a{0.82, 0.75, 0.91, 0.68, 0.77, 0.85, 0.79, 0.88};
  const std::vector<double> b{0.55, 0.61, 0.49, 0.66, 0.58, 0.52, 0.63};
  const auto r = welch_t_test(a, b);
  CHECK_THAT(r.t, WithinRel(6.537443472242, 1e-10));
  CHECK_THAT(r.df, WithinRel(12.957949552116, 1e-10));
  CHECK_THAT(r.p_one_sided, WithinRel(9.599926137975e-06, 1e-8));
}

TEST_CASE("welch t-test degenerate groups") {
  const std::vector<double> a{0.9, 0.9, 0.9};
  const std::vector<double> b{0.2, 0.2};
  const auto r = welch_t_test(a, b);
  CHECK(r.p_one_sided == 0.0);
  CHECK_THROWS_AS(welch_t_test(std::vector<double>{1.0}, b), std::invalid_argument);
}

TEST_CASE("spearman rank correlation") {
  const std::vector<double> x{1.0, 2.0, 3.0, 4.0, 5.0};
  const std::vector<double> y{1.2, 3.1, 2.2, 4.9, 5.1};
  CHECK_THAT(spearman(x, y), WithinAbs(0.9, 1e-12));

  std::vector<double> rev(x.rbegin(), x.rend());
  CHECK_THAT(spearman(x, rev), WithinAbs(-1.0, 1e-12));
  CHECK_THAT(spearman(x, x), WithinAbs(1.0, 1e-12));

  const std::vector<double> xt{3.0, 1.0, 4.0, 1.0, 5.0};
  const std::vector<double> yt{2.0, 7.0, 1.0, 8.0, 2.0};
  CHECK_THAT(spearman(xt, yt), WithinAbs(-0.789473684211, 1e-10));
}

TEST_CASE("monotone series correlate perfectly") {
  const std::vector<double> p{1.0, 0.9, 0.8, 0.6, 0.4, 0.2, 0.1, 0.0};
  const std::vector<double> score{0.99, 0.91, 0.77, 0.63, 0.42, 0.18, 0.12, 0.02};
  CHECK_THAT(spearman(score, p), WithinAbs(1.0, 1e-12));
}
