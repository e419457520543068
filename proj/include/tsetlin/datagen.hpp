#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "tsetlin/bitvec.hpp"
#include "tsetlin/error.hpp"
#include "tsetlin/rng.hpp"

namespace tsetlin {

struct BitDataset {
  std::vector<BitRow> X;
  std::vector<int> y;
};

struct RealDataset {
  std::vector<std::array<double, 2>> X;
  std::vector<int> y;
};

// n copies of the fixed three-feature pattern [1,0,1]; each label is 1 with
// probability p.
inline BitDataset single_pattern_dataset(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw ContractError("single_pattern_dataset: p outside [0,1]");
  Rng rng(seed);
  BitDataset ds;
  ds.X.assign(n, BitRow{1, 0, 1});
  ds.y.reserve(n);
  for (std::size_t i = 0; i < n; ++i) ds.y.push_back(rng.bernoulli(p) ? 1 : 0);
  return ds;
}

// The eight three-feature patterns and their P(Y=1).
struct CptRow {
  std::array<std::uint8_t, 3> features;
  double p_target;
};

inline const std::array<CptRow, 8>& cpt_table() {
  static const std::array<CptRow, 8> table = {{
      {{1, 1, 1}, 1.00},
      {{1, 1, 0}, 0.90},
      {{1, 0, 1}, 0.80},
      {{1, 0, 0}, 0.60},
      {{0, 1, 1}, 0.40},
      {{0, 1, 0}, 0.20},
      {{0, 0, 1}, 0.10},
      {{0, 0, 0}, 0.00},
  }};
  return table;
}

// Each of the eight patterns replicated `copies_per_row` times with labels
// drawn at that row's probability.
inline BitDataset cpt_dataset(std::size_t copies_per_row, std::uint64_t seed) {
  if (copies_per_row < 1) throw ContractError("cpt_dataset: copies must be >= 1");
  Rng rng(seed);
  BitDataset ds;
  ds.X.reserve(8 * copies_per_row);
  ds.y.reserve(8 * copies_per_row);
  for (const auto& row : cpt_table()) {
    for (std::size_t i = 0; i < copies_per_row; ++i) {
      ds.X.push_back(BitRow(row.features.begin(), row.features.end()));
      ds.y.push_back(rng.bernoulli(row.p_target) ? 1 : 0);
    }
  }
  return ds;
}

// Two interleaved half-moon arcs with isotropic Gaussian noise. Label 0 is
// the upper arc (cos t, sin t), label 1 the lower arc (1 - cos t,
// 0.5 - sin t), t uniform on [0, pi]. Balanced: n/2 points per arc.
inline RealDataset two_moons(std::size_t n, double noise_sd, std::uint64_t seed) {
  if (n % 2 != 0) throw ContractError("two_moons: n must be even");
  Rng rng(seed);
  auto gauss = [&rng]() {
    // Box-Muller; fixed two-draw discipline.
    const double u1 = 1.0 - rng.uniform01();
    const double u2 = rng.uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  };
  RealDataset ds;
  ds.X.reserve(n);
  ds.y.reserve(n);
  for (std::size_t i = 0; i < n / 2; ++i) {
    const double t = rng.uniform01() * std::numbers::pi;
    ds.X.push_back({std::cos(t) + noise_sd * gauss(), std::sin(t) + noise_sd * gauss()});
    ds.y.push_back(0);
  }
  for (std::size_t i = 0; i < n / 2; ++i) {
    const double t = rng.uniform01() * std::numbers::pi;
    ds.X.push_back(
        {1.0 - std::cos(t) + noise_sd * gauss(), 0.5 - std::sin(t) + noise_sd * gauss()});
    ds.y.push_back(1);
  }
  return ds;
}

// Row-major steps x steps lattice over [x0,x1] x [y0,y1], both endpoints
// included; y varies across rows, x within a row.
inline std::vector<std::array<double, 2>> mesh_grid(double x0, double x1, double y0, double y1,
                                                    int steps) {
  if (steps < 2) throw ContractError("mesh_grid: steps must be >= 2");
  if (!(x1 > x0) || !(y1 > y0)) throw ContractError("mesh_grid: degenerate range");
  std::vector<std::array<double, 2>> pts;
  pts.reserve(static_cast<std::size_t>(steps) * steps);
  for (int iy = 0; iy < steps; ++iy) {
    const double y = y0 + (y1 - y0) * iy / (steps - 1);
    for (int ix = 0; ix < steps; ++ix) {
      const double x = x0 + (x1 - x0) * ix / (steps - 1);
      pts.push_back({x, y});
    }
  }
  return pts;
}

}  // namespace tsetlin
