#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "tsetlin/bitvec.hpp"
#include "tsetlin/clause_bank.hpp"
#include "tsetlin/error.hpp"
#include "tsetlin/params.hpp"
#include "tsetlin/rng.hpp"

namespace tsetlin {

inline long long clip_class_sum(long long raw, int threshold) {
  return std::clamp<long long>(raw, -threshold, threshold);
}

// Probability of Type I / Type II feedback for a clipped class sum v:
//   p_I = (1 - v/T) / 2,   p_II = (1 + v/T) / 2,   p_I + p_II = 1.
inline std::pair<double, double> feedback_probabilities(long long v, int threshold) {
  if (std::llabs(v) > threshold)
    throw ContractError("feedback_probabilities: |v| exceeds T");
  const double x = static_cast<double>(v) / static_cast<double>(threshold);
  return {0.5 - 0.5 * x, 0.5 + 0.5 * x};
}

// Per-epoch clipped class sums (training semantics) of the traced samples.
struct ExperimentTrace {
  std::vector<std::vector<long long>> class_sums;  // [epoch][trace sample]

  std::size_t epochs() const { return class_sums.size(); }

  // Series for one traced sample across all epochs.
  std::vector<long long> series(std::size_t sample) const {
    std::vector<long long> out;
    out.reserve(class_sums.size());
    for (const auto& epoch : class_sums) out.push_back(epoch[sample]);
    return out;
  }
};

// One binary (one-vs-rest) Tsetlin machine: a clause bank, its
// hyperparameters and a private deterministic random stream. Inputs are
// presented as one or more packed literal patches; a flat feature vector is
// the single-patch case.
class BinaryTM {
 public:
  BinaryTM(std::size_t num_features, const TMParams& params)
      : params_(validated(params)),
        bank_(num_features, params.num_clauses, params.states_per_action, params.literal_budget),
        rng_(params.seed) {}

  std::size_t num_features() const { return bank_.num_features(); }
  const TMParams& params() const { return params_; }
  const ClauseBank& bank() const { return bank_; }
  ClauseBank& bank() { return bank_; }
  const Rng& rng() const { return rng_; }
  Rng& rng() { return rng_; }

  long long class_sum(const PatchView& pv, EvalMode mode, bool clip) const {
    check_patches(pv);
    const long long raw = bank_.raw_class_sum(pv, mode);
    return clip ? clip_class_sum(raw, params_.threshold) : raw;
  }

  long long class_sum(const LiteralVector& x, EvalMode mode, bool clip) const {
    check_features(x);
    return class_sum(PatchView(x), mode, clip);
  }

  long long class_sum(const BitRow& bits, EvalMode mode, bool clip) const {
    return class_sum(LiteralVector(bits), mode, clip);
  }

  // Clipped inference-time class sum, the quantity probability scores are
  // computed from.
  long long infer_sum(const PatchView& pv) const {
    return class_sum(pv, EvalMode::Infer, true);
  }
  long long infer_sum(const BitRow& bits) const {
    return class_sum(LiteralVector(bits), EvalMode::Infer, true);
  }

  // One training update. The clipped training-semantics class sum sets the
  // feedback probabilities; every clause then independently draws its gate.
  // With the true label: positive clauses receive Type I and negative
  // clauses Type II, both gated by p_I. With the false label the roles
  // swap and the gate is p_II. Type I recognize feedback is applied against
  // one uniformly chosen matching patch; Type II likewise targets a chosen
  // matching patch. No patch draw is consumed when at most one patch
  // matches, so the flat case consumes the identical stream.
  void train_step(const PatchView& pv, int y) {
    check_patches(pv);
    if (pv.count() == 0) throw ShapeError("train_step: sample has no patches");
    const long long v = clip_class_sum(bank_.raw_class_sum(pv, EvalMode::Train), params_.threshold);
    const auto [p_i, p_ii] = feedback_probabilities(v, params_.threshold);
    const double gate = (y == 1) ? p_i : p_ii;

    for (int j = 0; j < bank_.num_clauses(); ++j) {
      const bool fire = rng_.bernoulli(gate);
      if (!fire) continue;
      const bool positive = bank_.polarity(j) == Polarity::Positive;
      const bool give_type_i = (y == 1) == positive;
      if (give_type_i) {
        bank_.matching_patches(j, pv, match_buf_);
        const std::uint64_t* patch =
            match_buf_.empty() ? pv.patch(0) : pv.patch(choose(match_buf_));
        bank_.type_i(j, patch, params_.specificity, params_.boost_true_positive, rng_);
      } else {
        bank_.matching_patches(j, pv, match_buf_);
        if (!match_buf_.empty()) bank_.type_ii(j, pv.patch(choose(match_buf_)));
      }
    }
  }

  void train_step(const BitRow& bits, int y) {
    const LiteralVector packed(bits);
    check_features(packed);
    train_step(PatchView(packed), y);
  }

  // Trains for `epochs` passes over the data, shuffling the sample order
  // each epoch from the machine's own stream. When trace samples are given,
  // their clipped training-semantics class sums are recorded after every
  // epoch; those are the series the probability-score traces derive from.
  ExperimentTrace fit(const std::vector<BitRow>& X, const std::vector<int>& y, int epochs,
                      const std::vector<BitRow>& trace_samples = {}) {
    if (X.empty()) throw ContractError("fit: empty dataset");
    if (X.size() != y.size()) throw ShapeError("fit: |X| != |y|");

    PatchMatrix data = pack_rows(X);
    PatchMatrix traced = pack_rows(trace_samples);

    std::vector<std::size_t> order(X.size());
    std::iota(order.begin(), order.end(), std::size_t{0});

    ExperimentTrace trace;
    trace.class_sums.reserve(epochs);
    for (int e = 0; e < epochs; ++e) {
      rng_.shuffle(order);
      for (std::size_t i : order) train_step(data.view(i, 1), y[i]);
      if (traced.count() > 0) {
        std::vector<long long> row;
        row.reserve(traced.count());
        for (std::size_t t = 0; t < traced.count(); ++t) {
          row.push_back(class_sum(traced.view(t, 1), EvalMode::Train, true));
        }
        trace.class_sums.push_back(std::move(row));
      }
    }
    return trace;
  }

  bool operator==(const BinaryTM& other) const {
    return params_ == other.params_ && bank_ == other.bank_;
  }

 private:
  static const TMParams& validated(const TMParams& p) {
    p.validate();
    return p;
  }

  PatchMatrix pack_rows(const std::vector<BitRow>& rows) const {
    PatchMatrix m(rows.size(), bank_.words_per_input());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != bank_.num_features())
        throw ShapeError("sample has wrong number of features");
      for (std::size_t k = 0; k < rows[i].size(); ++k) {
        m.set_literal(i, k, rows[i][k] != 0);
      }
    }
    return m;
  }

  std::uint32_t choose(const std::vector<std::uint32_t>& candidates) {
    if (candidates.size() == 1) return candidates[0];
    return candidates[rng_.below(candidates.size())];
  }

  void check_patches(const PatchView& pv) const {
    if (pv.words_per_patch() != bank_.words_per_input())
      throw ShapeError("patch word width does not match the model");
  }

  void check_features(const LiteralVector& x) const {
    if (x.num_features() != bank_.num_features())
      throw ShapeError("input has wrong number of features");
  }

  TMParams params_;
  ClauseBank bank_;
  Rng rng_;
  std::vector<std::uint32_t> match_buf_;
};

}  // namespace tsetlin
