#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tsetlin/bitvec.hpp"
#include "tsetlin/error.hpp"
#include "tsetlin/rng.hpp"

namespace tsetlin {

enum class EvalMode { Train, Infer };
enum class Polarity : std::uint8_t { Positive, Negative };

// All clauses of one binary (one-vs-rest) target, stored column-contiguous:
// per clause a row of TA states (two per feature: literal and negation), a
// packed include mask kept in sync with the states, a weight, and a cached
// count of included literals.
//
// TA state convention: states live in [1, 2N] with N = states_per_action;
// a literal is included iff its state is > N. Updates saturate at 1 and 2N.
// Clauses alternate polarity by index: even -> positive, odd -> negative.
//
// An empty clause (no included literals) matches everything during training
// and nothing at inference.
class ClauseBank {
 public:
  ClauseBank(std::size_t num_features, int num_clauses, int states_per_action,
             std::optional<int> literal_budget)
      : num_features_(num_features),
        num_literals_(2 * num_features),
        words_(words_for_literals(num_features)),
        num_clauses_(num_clauses),
        n_(states_per_action),
        budget_(literal_budget),
        states_(static_cast<std::size_t>(num_clauses) * num_literals_,
                static_cast<std::uint16_t>(states_per_action)),
        masks_(static_cast<std::size_t>(num_clauses) * words_, 0),
        weights_(num_clauses, 1),
        include_counts_(num_clauses, 0) {
    if (num_features == 0) throw ContractError("num_features must be >= 1");
  }

  std::size_t num_features() const { return num_features_; }
  std::size_t num_literals() const { return num_literals_; }
  std::size_t words_per_input() const { return words_; }
  int num_clauses() const { return num_clauses_; }
  int states_per_action() const { return n_; }
  std::optional<int> literal_budget() const { return budget_; }

  Polarity polarity(std::size_t j) const {
    return (j % 2 == 0) ? Polarity::Positive : Polarity::Negative;
  }
  int n_positive() const { return (num_clauses_ + 1) / 2; }
  int n_negative() const { return num_clauses_ / 2; }

  std::uint32_t weight(std::size_t j) const { return weights_[j]; }
  std::uint32_t include_count(std::size_t j) const { return include_counts_[j]; }

  std::uint16_t state(std::size_t j, std::size_t lit) const {
    return states_[j * num_literals_ + lit];
  }
  std::span<const std::uint16_t> clause_states(std::size_t j) const {
    return {states_.data() + j * num_literals_, num_literals_};
  }
  std::span<const std::uint64_t> clause_mask(std::size_t j) const {
    return {masks_.data() + j * words_, words_};
  }
  bool included(std::size_t j, std::size_t lit) const {
    return (masks_[j * words_ + (lit >> 6)] >> (lit & 63)) & 1;
  }

  bool evaluate(std::size_t j, const std::uint64_t* x, EvalMode mode) const {
    if (include_counts_[j] == 0) return mode == EvalMode::Train;
    const std::uint64_t* m = masks_.data() + j * words_;
    for (std::size_t w = 0; w < words_; ++w) {
      if ((m[w] & x[w]) != m[w]) return false;
    }
    return true;
  }

  bool evaluate(std::size_t j, const LiteralVector& x, EvalMode mode) const {
    check_input(x);
    return evaluate(j, x.words().data(), mode);
  }

  // Existential match over the patches of one sample.
  bool matches_any(std::size_t j, const PatchView& pv, EvalMode mode) const {
    if (include_counts_[j] == 0) return mode == EvalMode::Train;
    for (std::size_t i = 0; i < pv.count(); ++i) {
      if (evaluate(j, pv.patch(i), mode)) return true;
    }
    return false;
  }

  void matching_patches(std::size_t j, const PatchView& pv,
                        std::vector<std::uint32_t>& out) const {
    out.clear();
    if (include_counts_[j] == 0) {
      for (std::size_t i = 0; i < pv.count(); ++i) out.push_back(static_cast<std::uint32_t>(i));
      return;
    }
    for (std::size_t i = 0; i < pv.count(); ++i) {
      if (evaluate(j, pv.patch(i), EvalMode::Train)) out.push_back(static_cast<std::uint32_t>(i));
    }
  }

  // Unclipped weighted class sum: sum of weights of matching positive clauses
  // minus sum of weights of matching negative clauses.
  long long raw_class_sum(const PatchView& pv, EvalMode mode) const {
    long long sum = 0;
    for (int j = 0; j < num_clauses_; ++j) {
      if (matches_any(j, pv, mode)) {
        const long long w = weights_[j];
        sum += (polarity(j) == Polarity::Positive) ? w : -w;
      }
    }
    return sum;
  }

  // Unweighted counts of matching positive / negative clauses.
  std::pair<int, int> active_counts(const PatchView& pv, EvalMode mode) const {
    int pos = 0;
    int neg = 0;
    for (int j = 0; j < num_clauses_; ++j) {
      if (matches_any(j, pv, mode)) {
        (polarity(j) == Polarity::Positive ? pos : neg) += 1;
      }
    }
    return {pos, neg};
  }

  // Type I feedback against one patch. Recognize branch when the clause
  // matches the patch (training semantics): satisfied literals are pushed
  // toward include with probability (s-1)/s (or 1 with boost), unsatisfied
  // literals toward exclude with probability 1/s, and the weight grows by
  // one. Erase branch otherwise: every TA is pushed toward exclude with
  // probability 1/s. Exactly one rng draw is consumed per literal in both
  // branches, so the stream layout does not depend on the data.
  void type_i(std::size_t j, const std::uint64_t* x, double s, bool boost, Rng& rng) {
    const double p_reinforce = boost ? 1.0 : (s - 1.0) / s;
    const double p_erase = 1.0 / s;
    if (evaluate(j, x, EvalMode::Train)) {
      for (std::size_t lit = 0; lit < num_literals_; ++lit) {
        const bool satisfied = (x[lit >> 6] >> (lit & 63)) & 1;
        if (satisfied) {
          if (rng.bernoulli(p_reinforce)) bump_include(j, lit);
        } else {
          if (rng.bernoulli(p_erase)) bump_exclude(j, lit);
        }
      }
      weights_[j] += 1;
    } else {
      for (std::size_t lit = 0; lit < num_literals_; ++lit) {
        if (rng.bernoulli(p_erase)) bump_exclude(j, lit);
      }
    }
  }

  // Type II feedback against one patch: no-op unless the clause matches
  // (training semantics). Every excluded literal whose value is 0 moves one
  // step toward include, block-listing the mismatch; the weight shrinks by
  // one with a floor of 1.
  void type_ii(std::size_t j, const std::uint64_t* x) {
    if (!evaluate(j, x, EvalMode::Train)) return;
    for (std::size_t lit = 0; lit < num_literals_; ++lit) {
      const bool value = (x[lit >> 6] >> (lit & 63)) & 1;
      if (!value && !included(j, lit)) bump_include(j, lit);
    }
    if (weights_[j] > 1) weights_[j] -= 1;
  }

  // Replaces the TA states and weight of one clause (archive restore). The
  // include mask and count are rebuilt from the states.
  void load_clause(std::size_t j, std::span<const std::uint16_t> states, std::uint32_t weight) {
    if (states.size() != num_literals_) throw ShapeError("clause state row has wrong length");
    if (weight < 1) throw ContractError("clause weight must be >= 1");
    std::uint32_t count = 0;
    for (std::size_t lit = 0; lit < num_literals_; ++lit) {
      const std::uint16_t st = states[lit];
      if (st < 1 || st > 2 * n_) throw ContractError("TA state out of range");
      states_[j * num_literals_ + lit] = st;
      std::uint64_t& word = masks_[j * words_ + (lit >> 6)];
      const std::uint64_t bit = std::uint64_t{1} << (lit & 63);
      if (st > n_) {
        word |= bit;
        ++count;
      } else {
        word &= ~bit;
      }
    }
    if (budget_ && count > static_cast<std::uint32_t>(*budget_))
      throw ContractError("clause exceeds the literal budget");
    include_counts_[j] = count;
    weights_[j] = weight;
  }

  bool operator==(const ClauseBank& other) const {
    return num_features_ == other.num_features_ && num_clauses_ == other.num_clauses_ &&
           n_ == other.n_ && states_ == other.states_ && weights_ == other.weights_;
  }

 private:
  void check_input(const LiteralVector& x) const {
    if (x.num_features() != num_features_)
      throw ShapeError("input has wrong number of features");
  }

  void bump_include(std::size_t j, std::size_t lit) {
    std::uint16_t& st = states_[j * num_literals_ + lit];
    if (st == 2 * n_) return;
    if (st == n_) {
      // Crossing into include adds a literal; a configured budget blocks the
      // crossing when the clause is already full.
      if (budget_ && include_counts_[j] >= static_cast<std::uint32_t>(*budget_)) return;
      ++st;
      masks_[j * words_ + (lit >> 6)] |= std::uint64_t{1} << (lit & 63);
      ++include_counts_[j];
    } else {
      ++st;
    }
  }

  void bump_exclude(std::size_t j, std::size_t lit) {
    std::uint16_t& st = states_[j * num_literals_ + lit];
    if (st == 1) return;
    if (st == n_ + 1) {
      --st;
      masks_[j * words_ + (lit >> 6)] &= ~(std::uint64_t{1} << (lit & 63));
      --include_counts_[j];
    } else {
      --st;
    }
  }

  std::size_t num_features_;
  std::size_t num_literals_;
  std::size_t words_;
  int num_clauses_;
  int n_;
  std::optional<int> budget_;
  std::vector<std::uint16_t> states_;
  std::vector<std::uint64_t> masks_;
  std::vector<std::uint32_t> weights_;
  std::vector<std::uint32_t> include_counts_;
};

}  // namespace tsetlin
