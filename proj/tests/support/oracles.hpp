#pragma once

// Independent reference implementations the fast paths are checked against.
// Everything here works from raw TA states with plain loops and must stay
// free of the packed-mask machinery under test.

#include <cstdint>
#include <set>
#include <vector>

#include "tsetlin/bitvec.hpp"
#include "tsetlin/clause_bank.hpp"

namespace oracle {

// Literal value of a feature vector under the library's literal numbering:
// even literal = feature, odd literal = negation.
inline bool literal_value(const tsetlin::BitRow& input, std::size_t lit) {
  const bool feature_set = input[lit / 2] != 0;
  return (lit % 2 == 0) ? feature_set : !feature_set;
}

// Clause match from TA states alone: every literal with state > N must be
// satisfied. A clause with no included literal matches only in train mode.
inline bool clause_matches(const std::vector<std::uint16_t>& states, int n,
                           const tsetlin::BitRow& input, bool train_mode) {
  bool any_included = false;
  for (std::size_t lit = 0; lit < states.size(); ++lit) {
    if (states[lit] > n) {
      any_included = true;
      if (!literal_value(input, lit)) return false;
    }
  }
  return any_included ? true : train_mode;
}

inline bool clause_matches(const tsetlin::ClauseBank& bank, std::size_t j,
                           const tsetlin::BitRow& input, bool train_mode) {
  const auto row = bank.clause_states(j);
  return clause_matches(std::vector<std::uint16_t>(row.begin(), row.end()),
                        bank.states_per_action(), input, train_mode);
}

// Weighted class sum by looping every clause.
inline long long class_sum(const tsetlin::ClauseBank& bank, const tsetlin::BitRow& input,
                           bool train_mode) {
  long long sum = 0;
  for (int j = 0; j < bank.num_clauses(); ++j) {
    if (!clause_matches(bank, j, input, train_mode)) continue;
    const long long w = bank.weight(j);
    sum += bank.polarity(j) == tsetlin::Polarity::Positive ? w : -w;
  }
  return sum;
}

// Existential convolution: OR of the flat match over every patch.
inline bool conv_clause_matches(const tsetlin::ClauseBank& bank, std::size_t j,
                                const std::vector<tsetlin::BitRow>& patches, bool train_mode) {
  for (const auto& p : patches) {
    if (clause_matches(bank, j, p, train_mode)) return true;
  }
  return false;
}

// Distinct included-literal sets among non-empty clauses, via a set of
// sorted literal index lists.
inline std::size_t unique_clause_count(const tsetlin::ClauseBank& bank) {
  std::set<std::vector<std::size_t>> seen;
  for (int j = 0; j < bank.num_clauses(); ++j) {
    std::vector<std::size_t> lits;
    for (std::size_t lit = 0; lit < bank.num_literals(); ++lit) {
      if (bank.state(j, lit) > bank.states_per_action()) lits.push_back(lit);
    }
    if (!lits.empty()) seen.insert(lits);
  }
  return seen.size();
}

}  // namespace oracle
