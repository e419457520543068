#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "tsetlin/binary_tm.hpp"
#include "tsetlin/bitvec.hpp"
#include "tsetlin/error.hpp"
#include "tsetlin/params.hpp"
#include "tsetlin/rng.hpp"

namespace tsetlin {

// One-vs-rest multiclass wrapper: one BinaryTM per class with shared
// hyperparameters. Every training sample updates every unit (target 1 for
// the unit's own class, 0 otherwise); units own independent random streams
// derived from the base seed, and the per-epoch sample order comes from a
// separate order stream so that it is shared by all units.
class MulticlassTM {
 public:
  MulticlassTM(std::vector<int> classes, std::size_t num_features, const TMParams& params)
      : MulticlassTM(std::move(classes), num_features, params, {}) {}

  // unit_seeds overrides the derived per-unit seeds; used when units must be
  // re-aligned across differently ordered class lists.
  MulticlassTM(std::vector<int> classes, std::size_t num_features, const TMParams& params,
               std::vector<std::uint64_t> unit_seeds)
      : classes_(std::move(classes)), order_rng_(mix_seed(params.seed, 0)) {
    if (classes_.size() < 2) throw ContractError("multiclass needs at least 2 classes");
    if (!unit_seeds.empty() && unit_seeds.size() != classes_.size())
      throw ShapeError("unit_seeds size must match class count");
    units_.reserve(classes_.size());
    for (std::size_t k = 0; k < classes_.size(); ++k) {
      TMParams p = params;
      p.seed = unit_seeds.empty() ? mix_seed(params.seed, k + 1) : unit_seeds[k];
      units_.emplace_back(num_features, p);
    }
  }

  const std::vector<int>& classes() const { return classes_; }
  std::size_t num_units() const { return units_.size(); }
  const BinaryTM& unit(std::size_t k) const { return units_[k]; }
  BinaryTM& unit(std::size_t k) { return units_[k]; }
  std::size_t num_features() const { return units_.front().num_features(); }

  std::size_t class_index(int label) const {
    auto it = std::find(classes_.begin(), classes_.end(), label);
    if (it == classes_.end()) throw ContractError("unknown class label");
    return static_cast<std::size_t>(it - classes_.begin());
  }

  void fit(const std::vector<BitRow>& X, const std::vector<int>& y, int epochs) {
    if (X.empty()) throw ContractError("fit: empty dataset");
    if (X.size() != y.size()) throw ShapeError("fit: |X| != |y|");
    PatchMatrix data(X.size(), units_.front().bank().words_per_input());
    for (std::size_t i = 0; i < X.size(); ++i) {
      if (X[i].size() != num_features()) throw ShapeError("sample has wrong number of features");
      for (std::size_t k = 0; k < X[i].size(); ++k) data.set_literal(i, k, X[i][k] != 0);
    }
    fit_views([&](std::size_t i) { return data.view(i, 1); }, y, epochs);
  }

  // Shared training loop over per-sample patch views; the convolutional
  // wrapper funnels through here so that the flat and patch-based paths are
  // step-for-step identical.
  template <typename PatchesOf>
  void fit_views(PatchesOf&& patches_of, const std::vector<int>& y, int epochs) {
    std::vector<std::size_t> unit_of_label(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) unit_of_label[i] = class_index(y[i]);

    std::vector<std::size_t> order(y.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (int e = 0; e < epochs; ++e) {
      order_rng_.shuffle(order);
      for (std::size_t i : order) {
        const PatchView pv = patches_of(i);
        for (std::size_t k = 0; k < units_.size(); ++k) {
          units_[k].train_step(pv, unit_of_label[i] == k ? 1 : 0);
        }
      }
    }
  }

  // Clipped inference class sums, one per class in class order.
  std::vector<long long> class_sums_all(const PatchView& pv) const {
    std::vector<long long> sums;
    sums.reserve(units_.size());
    for (const auto& u : units_) sums.push_back(u.infer_sum(pv));
    return sums;
  }

  std::vector<long long> class_sums_all(const BitRow& bits) const {
    if (bits.size() != num_features()) throw ShapeError("input has wrong number of features");
    LiteralVector lv(bits);
    return class_sums_all(PatchView(lv));
  }

  // Label with the highest class sum; ties go to the lowest class index.
  int predict(const PatchView& pv) const { return classes_[argmax(class_sums_all(pv))]; }
  int predict(const BitRow& bits) const { return classes_[argmax(class_sums_all(bits))]; }

  static std::size_t argmax(const std::vector<long long>& sums) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < sums.size(); ++i) {
      if (sums[i] > sums[best]) best = i;
    }
    return best;
  }

  std::string order_rng_state() const { return order_rng_.save_state(); }
  void restore_order_rng(const std::string& state) { order_rng_.restore_state(state); }

  bool operator==(const MulticlassTM& other) const {
    return classes_ == other.classes_ && units_ == other.units_;
  }

 private:
  std::vector<int> classes_;
  std::vector<BinaryTM> units_;
  Rng order_rng_;
};

}  // namespace tsetlin
