#pragma once

#include <cstdint>
#include <optional>

#include "tsetlin/error.hpp"

namespace tsetlin {

struct TMParams {
  int threshold = 100;                     // T, bounds the class sum
  double specificity = 2.0;                // s >= 1
  int num_clauses = 20;                    // even, half per polarity
  std::optional<int> literal_budget;       // cap on included literals per clause
  int states_per_action = 128;             // N; TA states live in [1, 2N]
  std::uint64_t seed = 0;
  bool boost_true_positive = false;        // recognize reinforcement prob 1 instead of (s-1)/s

  void validate() const {
    if (threshold < 1) throw ContractError("T must be >= 1");
    if (specificity < 1.0) throw ContractError("s must be >= 1.0");
    if (num_clauses < 2 || num_clauses % 2 != 0)
      throw ContractError("num_clauses must be even and >= 2");
    if (literal_budget && *literal_budget < 1)
      throw ContractError("literal_budget must be >= 1 when set");
    if (states_per_action < 1) throw ContractError("states_per_action must be >= 1");
  }

  bool operator==(const TMParams&) const = default;
};

}  // namespace tsetlin
