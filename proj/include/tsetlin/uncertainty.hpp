#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "tsetlin/binary_tm.hpp"
#include "tsetlin/clause_bank.hpp"
#include "tsetlin/conv.hpp"
#include "tsetlin/error.hpp"
#include "tsetlin/multiclass.hpp"
#include "tsetlin/thermometer.hpp"

namespace tsetlin {

// Probability score of a clipped class sum:  P(y=1|x) = (1 + v/T) / 2.
// The linear map sending [-T, T] onto [0, 1]; also the equilibrium point of
// the two feedback types, so trained class sums settle where the score
// matches the label probability.
inline double probability_score(double v, double threshold) {
  if (std::abs(v) > threshold) throw ContractError("probability_score: |v| exceeds T");
  return 0.5 * (1.0 + v / threshold);
}

// Class sum at which the two feedback types balance for a given target
// probability: v = T * (2p - 1). Exact inverse of probability_score.
inline double equilibrium_class_sum(double p, double threshold) {
  if (!(p >= 0.0 && p <= 1.0)) throw ContractError("equilibrium_class_sum: p outside [0,1]");
  return threshold * (2.0 * p - 1.0);
}

struct NormalizedScores {
  std::vector<double> per_class;
  double max_normalized = 0.0;
};

// Divides each individual probability score by their sum. When every class
// sum sits at -T the sum is zero and the scores fall back to the uniform
// 1/num_classes.
inline NormalizedScores normalized_scores(std::span<const double> individual) {
  if (individual.size() < 2) throw ContractError("normalized_scores: need >= 2 classes");
  NormalizedScores out;
  out.per_class.resize(individual.size());
  double sum = 0.0;
  for (double s : individual) sum += s;
  if (sum > 0.0) {
    for (std::size_t i = 0; i < individual.size(); ++i) out.per_class[i] = individual[i] / sum;
  } else {
    const double uniform = 1.0 / static_cast<double>(individual.size());
    for (auto& s : out.per_class) s = uniform;
  }
  out.max_normalized = *std::max_element(out.per_class.begin(), out.per_class.end());
  return out;
}

// Counts of matching positive / negative clauses at inference semantics;
// weights are not applied.
inline std::pair<int, int> clause_counts(const ClauseBank& bank, const PatchView& pv) {
  return bank.active_counts(pv, EvalMode::Infer);
}

inline std::pair<int, int> clause_counts(const BinaryTM& tm, const BitRow& bits) {
  if (bits.size() != tm.num_features()) throw ShapeError("input has wrong number of features");
  LiteralVector lv(bits);
  return clause_counts(tm.bank(), PatchView(lv));
}

inline std::vector<std::pair<int, int>> clause_counts(const MulticlassTM& tm, const PatchView& pv) {
  std::vector<std::pair<int, int>> out;
  out.reserve(tm.num_units());
  for (std::size_t k = 0; k < tm.num_units(); ++k) {
    out.push_back(clause_counts(tm.unit(k).bank(), pv));
  }
  return out;
}

inline std::vector<std::pair<int, int>> clause_counts(const MulticlassTM& tm, const BitRow& bits) {
  if (bits.size() != tm.num_features()) throw ShapeError("input has wrong number of features");
  LiteralVector lv(bits);
  return clause_counts(tm, PatchView(lv));
}

inline std::vector<std::pair<int, int>> clause_counts(const ConvolutionalTM& tm,
                                                      const BitPlanes& img) {
  const PatchMatrix m = tm.patches(img);
  return clause_counts(tm.inner(), m.view());
}

// Per-sample inference summary for the multiclass scorer.
struct PredictionReport {
  std::vector<long long> class_sums;           // clipped, class order
  std::vector<double> individual_scores;       // (1 + v_k/T) / 2
  double normalized_score = 0.0;               // max individual / sum of individuals
  int predicted = 0;                           // label
  std::vector<std::pair<int, int>> clause_counts;  // (positive, negative) active per class
};

inline PredictionReport make_report(const MulticlassTM& tm, const PatchView& pv) {
  PredictionReport rep;
  rep.class_sums = tm.class_sums_all(pv);
  rep.individual_scores.reserve(rep.class_sums.size());
  for (std::size_t k = 0; k < rep.class_sums.size(); ++k) {
    rep.individual_scores.push_back(probability_score(
        static_cast<double>(rep.class_sums[k]), tm.unit(k).params().threshold));
  }
  rep.normalized_score = normalized_scores(rep.individual_scores).max_normalized;
  rep.predicted = tm.classes()[MulticlassTM::argmax(rep.class_sums)];
  rep.clause_counts = clause_counts(tm, pv);
  return rep;
}

inline PredictionReport make_report(const ConvolutionalTM& tm, const BitPlanes& img) {
  const PatchMatrix m = tm.patches(img);
  return make_report(tm.inner(), m.view());
}

// Accuracy over the samples whose score clears each threshold. A threshold
// with an empty subset records count 0 and NaN accuracy.
struct ThresholdCurve {
  std::vector<double> thresholds;
  std::vector<double> accuracy_at;  // NaN where the subset is empty
  std::vector<std::size_t> count_at;
};

inline std::vector<double> default_threshold_grid() {
  std::vector<double> t;
  for (int i = 0; i <= 20; ++i) t.push_back(i * 0.05);
  return t;
}

inline ThresholdCurve accuracy_vs_threshold(std::span<const double> scores,
                                            std::span<const std::uint8_t> correct,
                                            std::span<const double> thresholds) {
  if (scores.size() != correct.size())
    throw ShapeError("accuracy_vs_threshold: length mismatch");
  if (scores.empty()) throw ContractError("accuracy_vs_threshold: empty input");
  ThresholdCurve curve;
  for (double t : thresholds) {
    std::size_t n = 0;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
      if (scores[i] >= t) {
        ++n;
        hits += correct[i] ? 1 : 0;
      }
    }
    curve.thresholds.push_back(t);
    curve.count_at.push_back(n);
    curve.accuracy_at.push_back(n == 0 ? std::numeric_limits<double>::quiet_NaN()
                                       : static_cast<double>(hits) / static_cast<double>(n));
  }
  return curve;
}

inline ThresholdCurve accuracy_vs_threshold(const std::vector<PredictionReport>& reports,
                                            const std::vector<int>& truths,
                                            std::span<const double> thresholds) {
  if (reports.size() != truths.size())
    throw ShapeError("accuracy_vs_threshold: length mismatch");
  std::vector<double> scores;
  std::vector<std::uint8_t> correct;
  scores.reserve(reports.size());
  correct.reserve(reports.size());
  for (std::size_t i = 0; i < reports.size(); ++i) {
    scores.push_back(reports[i].normalized_score);
    correct.push_back(reports[i].predicted == truths[i] ? 1 : 0);
  }
  return accuracy_vs_threshold(scores, correct, thresholds);
}

// Mean over the trailing `window` entries of each per-sample score series.
inline std::vector<double> epoch_averaged_scores(
    const std::vector<std::vector<double>>& series, std::size_t window) {
  std::vector<double> out;
  out.reserve(series.size());
  for (const auto& s : series) {
    if (window == 0 || window > s.size())
      throw ContractError("epoch_averaged_scores: window exceeds recorded epochs");
    double sum = 0.0;
    for (std::size_t i = s.size() - window; i < s.size(); ++i) sum += s[i];
    out.push_back(sum / static_cast<double>(window));
  }
  return out;
}

// Number of distinct included-literal sets among non-empty clauses.
inline std::size_t unique_clause_count(const ClauseBank& bank) {
  std::unordered_set<std::string> seen;
  for (int j = 0; j < bank.num_clauses(); ++j) {
    if (bank.include_count(j) == 0) continue;
    const auto mask = bank.clause_mask(j);
    seen.emplace(reinterpret_cast<const char*>(mask.data()), mask.size_bytes());
  }
  return seen.size();
}

// Probability score of the positive class over a 2-D mesh: each point is
// thermometer-encoded and scored from the clipped inference class sum.
inline std::vector<double> probability_grid(const BinaryTM& tm, const ThermometerEncoder& enc,
                                            const std::vector<std::array<double, 2>>& mesh) {
  if (enc.num_dims() != 2) throw ContractError("probability_grid: encoder must be 2-D");
  if (enc.encoded_width() != tm.num_features())
    throw ShapeError("probability_grid: encoder width does not match the model");
  std::vector<double> out;
  out.reserve(mesh.size());
  for (const auto& p : mesh) {
    const BitRow bits = enc.encode(std::span<const double>(p.data(), 2));
    out.push_back(probability_score(static_cast<double>(tm.infer_sum(bits)),
                                    tm.params().threshold));
  }
  return out;
}

}  // namespace tsetlin
