#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "tsetlin/archive.hpp"
#include "tsetlin/binary_tm.hpp"
#include "tsetlin/cifar10.hpp"
#include "tsetlin/conv.hpp"
#include "tsetlin/datagen.hpp"
#include "tsetlin/error.hpp"
#include "tsetlin/multiclass.hpp"
#include "tsetlin/stats.hpp"
#include "tsetlin/thermometer.hpp"
#include "tsetlin/uncertainty.hpp"

namespace tsetlin {

// Resolved settings of one experiment run. A config plus the code version
// determines every output byte; the resolved copy is echoed to
// <out_dir>/config.json next to the results.
struct ExperimentConfig {
  std::string experiment;

  // TM hyperparameters
  int threshold = 2000;
  double specificity = 1.0;
  int clauses = 20;
  std::optional<int> literal_budget;
  int states_per_action = 128;
  bool boost_true_positive = false;

  // dataset parameters
  int copies = 100;             // single-pattern / cpt replication
  std::size_t moons_n = 1000;   // training points (balanced)
  double moons_noise = 0.15;
  int bins = 64;                // thermometer bins per continuous feature
  int mesh_steps = 60;
  double mesh_expand = 0.5;     // bounding-box expansion per side, fraction of span
  std::string data_dir;         // CIFAR-10 binary directory
  std::vector<int> image_classes = {1, 8};  // automobile, ship
  std::size_t train_per_class = 2000;
  std::size_t test_per_class = 1000;
  int patch_h = 3;
  int patch_w = 3;
  int image_resolution = 8;
  bool position_literals = true;

  // run control
  int epochs = 400;
  int score_window = 200;
  std::uint64_t seed = 42;
  std::string out_dir = "out";
  int threads = 1;
  std::size_t mem_cap_mb = 4096;

  TMParams tm_params(std::uint64_t derived_seed) const {
    TMParams p;
    p.threshold = threshold;
    p.specificity = specificity;
    p.num_clauses = clauses;
    p.literal_budget = literal_budget;
    p.states_per_action = states_per_action;
    p.boost_true_positive = boost_true_positive;
    p.seed = derived_seed;
    return p;
  }
};

inline ExperimentConfig single_pattern_defaults() {
  ExperimentConfig c;
  c.experiment = "single-pattern";
  c.threshold = 2000;
  c.specificity = 1.0;
  c.clauses = 20;
  c.copies = 100;
  c.epochs = 400;
  c.score_window = 200;
  return c;
}

inline ExperimentConfig cpt_defaults() {
  ExperimentConfig c;
  c.experiment = "cpt";
  c.threshold = 2000;
  c.specificity = 1.0;  // run_cpt sweeps {1.0, 2.0, 5.0} regardless
  c.clauses = 100;
  c.copies = 100;
  c.epochs = 400;
  c.score_window = 200;
  return c;
}

inline ExperimentConfig moons_defaults() {
  ExperimentConfig c;
  c.experiment = "moons";
  c.threshold = 10000;
  c.specificity = 1.1;
  c.clauses = 1000;
  c.epochs = 15;
  c.bins = 64;
  c.moons_n = 1000;
  return c;
}

inline ExperimentConfig image_defaults() {
  ExperimentConfig c;
  c.experiment = "image";
  c.threshold = 2000;
  c.specificity = 10.0;
  c.clauses = 200;
  c.literal_budget = 64;
  c.epochs = 20;
  c.patch_h = 3;
  c.patch_w = 3;
  c.image_resolution = 8;
  return c;
}

inline nlohmann::ordered_json config_to_json(const ExperimentConfig& c) {
  nlohmann::ordered_json j;
  j["experiment"] = c.experiment;
  j["threshold"] = c.threshold;
  j["specificity"] = c.specificity;
  j["clauses"] = c.clauses;
  j["literal_budget"] = c.literal_budget ? nlohmann::ordered_json(*c.literal_budget)
                                         : nlohmann::ordered_json(nullptr);
  j["states_per_action"] = c.states_per_action;
  j["boost_true_positive"] = c.boost_true_positive;
  j["copies"] = c.copies;
  j["moons_n"] = c.moons_n;
  j["moons_noise"] = c.moons_noise;
  j["bins"] = c.bins;
  j["mesh_steps"] = c.mesh_steps;
  j["mesh_expand"] = c.mesh_expand;
  j["data_dir"] = c.data_dir;
  j["image_classes"] = c.image_classes;
  j["train_per_class"] = c.train_per_class;
  j["test_per_class"] = c.test_per_class;
  j["patch_h"] = c.patch_h;
  j["patch_w"] = c.patch_w;
  j["image_resolution"] = c.image_resolution;
  j["position_literals"] = c.position_literals;
  j["epochs"] = c.epochs;
  j["score_window"] = c.score_window;
  j["seed"] = c.seed;
  j["out_dir"] = c.out_dir;
  j["threads"] = c.threads;
  j["mem_cap_mb"] = c.mem_cap_mb;
  return j;
}

namespace detail {

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

inline std::filesystem::path prepare_out_dir(const ExperimentConfig& c) {
  std::filesystem::path dir(c.out_dir);
  std::filesystem::create_directories(dir);
  std::ofstream cfg(dir / "config.json");
  cfg << config_to_json(c).dump(1) << '\n';
  return dir;
}

inline double wall_seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Index-chunked parallel map for read-only inference; results land in a
// preallocated vector, so the output order is independent of scheduling.
template <typename Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(threads, n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (std::size_t i = w; i < n; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Single-pattern experiment: 100 copies of [1,0,1] at 11 noise levels.
// ---------------------------------------------------------------------------

struct SinglePatternResult {
  std::vector<double> noise_levels;
  std::vector<double> averaged_scores;  // trailing-window mean per level
  double seconds = 0.0;
};

inline SinglePatternResult run_single_pattern(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const auto dir = detail::prepare_out_dir(config);
  if (config.score_window > config.epochs)
    throw ContractError("score_window exceeds epochs");

  std::ofstream trace_csv(dir / "trace.csv");
  trace_csv << "epoch,p,class_sum,score\n";

  SinglePatternResult result;
  const BitRow pattern{1, 0, 1};
  for (int level = 0; level <= 10; ++level) {
    const double p = 0.5 + 0.05 * level;
    BinaryTM tm(3, config.tm_params(mix_seed(config.seed, 200 + level)));

    // The label noise is redrawn every epoch; a single fixed draw of
    // `copies` labels would pin the converged score to that draw's empirical
    // frequency instead of p.
    std::vector<double> scores;
    scores.reserve(config.epochs);
    for (int e = 0; e < config.epochs; ++e) {
      const auto ds = single_pattern_dataset(
          config.copies, p, mix_seed(config.seed, 100 + level + 1000 * (e + 1)));
      tm.fit(ds.X, ds.y, 1);
      const long long v = tm.class_sum(pattern, EvalMode::Train, true);
      const double score = probability_score(static_cast<double>(v), config.threshold);
      scores.push_back(score);
      trace_csv << e << ',' << detail::fmt(p) << ',' << v << ',' << detail::fmt(score) << '\n';
    }
    const double avg = epoch_averaged_scores({scores}, config.score_window)[0];
    result.noise_levels.push_back(p);
    result.averaged_scores.push_back(avg);
  }

  std::ofstream summary(dir / "summary.csv");
  summary << "p,avg_score,abs_error\n";
  for (std::size_t i = 0; i < result.noise_levels.size(); ++i) {
    summary << detail::fmt(result.noise_levels[i]) << ',' << detail::fmt(result.averaged_scores[i])
            << ',' << detail::fmt(std::abs(result.averaged_scores[i] - result.noise_levels[i]))
            << '\n';
  }
  result.seconds = detail::wall_seconds(start);
  return result;
}

// ---------------------------------------------------------------------------
// CPT experiment: the eight three-feature patterns, swept over s.
// ---------------------------------------------------------------------------

struct CptResult {
  std::vector<double> s_values;
  std::vector<std::array<double, 8>> converged_scores;  // [s][pattern]
  std::vector<double> spearman_vs_table;                // [s]
  std::vector<std::size_t> unique_clauses;              // [s]
  double seconds = 0.0;
};

inline CptResult run_cpt(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const auto dir = detail::prepare_out_dir(config);
  if (config.score_window > config.epochs)
    throw ContractError("score_window exceeds epochs");

  CptResult result;
  result.s_values = {1.0, 2.0, 5.0};

  std::ofstream summary(dir / "summary.csv");
  summary << "s,pattern,A,B,C,p_target,converged_score\n";
  nlohmann::ordered_json metrics;

  std::vector<BitRow> patterns;
  std::vector<double> targets;
  for (const auto& row : cpt_table()) {
    patterns.emplace_back(row.features.begin(), row.features.end());
    targets.push_back(row.p_target);
  }

  for (std::size_t si = 0; si < result.s_values.size(); ++si) {
    const double s = result.s_values[si];
    ExperimentConfig cfg = config;
    cfg.specificity = s;
    BinaryTM tm(3, cfg.tm_params(mix_seed(config.seed, 400 + si)));

    char name[32];
    std::snprintf(name, sizeof(name), "trace_s%.1f.csv", s);
    std::ofstream trace_csv(dir / name);
    trace_csv << "epoch,pattern,A,B,C,class_sum,score\n";
    std::vector<std::vector<double>> score_series(8);
    // Labels are redrawn from the table every epoch (same rationale as the
    // single-pattern run).
    for (int e = 0; e < config.epochs; ++e) {
      const auto ds =
          cpt_dataset(config.copies, mix_seed(config.seed, 300 + si + 1000 * (e + 1)));
      tm.fit(ds.X, ds.y, 1);
      for (std::size_t k = 0; k < 8; ++k) {
        const long long v = tm.class_sum(patterns[k], EvalMode::Train, true);
        const double score = probability_score(static_cast<double>(v), config.threshold);
        score_series[k].push_back(score);
        const auto& f = cpt_table()[k].features;
        trace_csv << e << ',' << k << ',' << int(f[0]) << ',' << int(f[1]) << ',' << int(f[2])
                  << ',' << v << ',' << detail::fmt(score) << '\n';
      }
    }

    const auto converged = epoch_averaged_scores(score_series, config.score_window);
    std::array<double, 8> conv{};
    for (std::size_t k = 0; k < 8; ++k) {
      conv[k] = converged[k];
      const auto& f = cpt_table()[k].features;
      summary << detail::fmt(s) << ',' << k << ',' << int(f[0]) << ',' << int(f[1]) << ','
              << int(f[2]) << ',' << detail::fmt(targets[k]) << ',' << detail::fmt(converged[k])
              << '\n';
    }
    result.converged_scores.push_back(conv);
    result.spearman_vs_table.push_back(spearman(converged, targets));
    result.unique_clauses.push_back(unique_clause_count(tm.bank()));

    nlohmann::ordered_json m;
    m["s"] = s;
    m["spearman_vs_table"] = result.spearman_vs_table.back();
    m["unique_clauses"] = result.unique_clauses.back();
    metrics["runs"].push_back(m);
  }

  std::ofstream mj(dir / "metrics.json");
  mj << metrics.dump(1) << '\n';
  result.seconds = detail::wall_seconds(start);
  return result;
}

// ---------------------------------------------------------------------------
// Two-moons experiment: thermometer encoding, probability grid, clause maps.
// ---------------------------------------------------------------------------

struct MoonsResult {
  double test_accuracy = 0.0;
  double outside_mean_score = 0.5;   // mesh points beyond 1.2x the data box
  std::size_t outside_count = 0;
  double upper_interior_mean = 0.5;  // deep interior, class 0 (upper arc)
  double lower_interior_mean = 0.5;  // deep interior, class 1 (lower arc)
  double upper_interior_max = 0.0;   // pointwise worst cases
  double lower_interior_min = 1.0;
  double seconds = 0.0;
  std::filesystem::path model_path;
};

inline MoonsResult run_moons(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const auto dir = detail::prepare_out_dir(config);

  const RealDataset train = two_moons(config.moons_n, config.moons_noise, mix_seed(config.seed, 1));
  std::vector<std::vector<double>> train_rows;
  train_rows.reserve(train.X.size());
  for (const auto& p : train.X) train_rows.push_back({p[0], p[1]});
  const ThermometerEncoder enc = ThermometerEncoder::fit(train_rows, config.bins, true);

  std::vector<BitRow> Xbits;
  Xbits.reserve(train.X.size());
  for (const auto& row : train_rows) Xbits.push_back(enc.encode(row));

  BinaryTM tm(enc.encoded_width(), config.tm_params(mix_seed(config.seed, 2)));
  tm.fit(Xbits, train.y, config.epochs);

  // Mesh over the expanded bounding box.
  double xmin = train.X[0][0], xmax = xmin, ymin = train.X[0][1], ymax = ymin;
  for (const auto& p : train.X) {
    xmin = std::min(xmin, p[0]);
    xmax = std::max(xmax, p[0]);
    ymin = std::min(ymin, p[1]);
    ymax = std::max(ymax, p[1]);
  }
  const double xspan = xmax - xmin;
  const double yspan = ymax - ymin;
  const auto mesh =
      mesh_grid(xmin - config.mesh_expand * xspan, xmax + config.mesh_expand * xspan,
                ymin - config.mesh_expand * yspan, ymax + config.mesh_expand * yspan,
                config.mesh_steps);
  const auto grid = probability_grid(tm, enc, mesh);

  std::ofstream grid_csv(dir / "grid.csv");
  grid_csv << "x,y,score,pos_count,neg_count\n";
  MoonsResult result;
  const double cx = 0.5 * (xmin + xmax);
  const double cy = 0.5 * (ymin + ymax);
  double outside_sum = 0.0;
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    const double px = mesh[i][0];
    const double py = mesh[i][1];
    const BitRow bits = enc.encode(std::span<const double>(mesh[i].data(), 2));
    const auto [pos, neg] = clause_counts(tm, bits);
    grid_csv << detail::fmt(px) << ',' << detail::fmt(py) << ',' << detail::fmt(grid[i]) << ','
             << pos << ',' << neg << '\n';
    const bool beyond = std::abs(px - cx) > 1.2 * 0.5 * xspan || std::abs(py - cy) > 1.2 * 0.5 * yspan;
    if (beyond) {
      outside_sum += grid[i];
      ++result.outside_count;
    }
  }
  if (result.outside_count > 0) result.outside_mean_score = outside_sum / result.outside_count;

  // Deep-interior probes: noiseless mid-arc points of each moon.
  auto interior = [&](bool lower) {
    std::vector<double> scores;
    for (int i = 0; i <= 30; ++i) {
      const double t = (0.35 + 0.30 * i / 30.0) * std::numbers::pi;
      const double x = lower ? 1.0 - std::cos(t) : std::cos(t);
      const double y = lower ? 0.5 - std::sin(t) : std::sin(t);
      const std::array<double, 2> pt{x, y};
      const BitRow bits = enc.encode(std::span<const double>(pt.data(), 2));
      scores.push_back(
          probability_score(static_cast<double>(tm.infer_sum(bits)), config.threshold));
    }
    return scores;
  };
  const auto upper_scores = interior(false);
  const auto lower_scores = interior(true);
  result.upper_interior_mean = mean(upper_scores);
  result.lower_interior_mean = mean(lower_scores);
  result.upper_interior_max = *std::max_element(upper_scores.begin(), upper_scores.end());
  result.lower_interior_min = *std::min_element(lower_scores.begin(), lower_scores.end());

  // Held-out accuracy on a fresh draw.
  const RealDataset test = two_moons(config.moons_n, config.moons_noise, mix_seed(config.seed, 3));
  std::size_t hits = 0;
  for (std::size_t i = 0; i < test.X.size(); ++i) {
    const BitRow bits = enc.encode(std::span<const double>(test.X[i].data(), 2));
    const int predicted = tm.infer_sum(bits) > 0 ? 1 : 0;
    hits += predicted == test.y[i] ? 1 : 0;
  }
  result.test_accuracy = static_cast<double>(hits) / test.X.size();

  ModelArchive archive = ModelArchive::of(std::move(tm));
  archive.thermometer = enc;
  archive.metadata["experiment"] = "moons";
  archive.metadata["trained_epochs"] = config.epochs;
  result.model_path = dir / "model.json";
  save_model(archive, result.model_path);

  nlohmann::ordered_json metrics;
  metrics["test_accuracy"] = result.test_accuracy;
  metrics["outside_mean_score"] = result.outside_mean_score;
  metrics["outside_count"] = result.outside_count;
  metrics["upper_interior_mean"] = result.upper_interior_mean;
  metrics["lower_interior_mean"] = result.lower_interior_mean;
  std::ofstream mj(dir / "metrics.json");
  mj << metrics.dump(1) << '\n';
  result.seconds = detail::wall_seconds(start);
  return result;
}

// ---------------------------------------------------------------------------
// Image experiment: convolutional TM on CIFAR-10-format data.
// ---------------------------------------------------------------------------

struct ImageResult {
  double accuracy = 0.0;
  std::vector<PredictionReport> reports;
  std::vector<int> truths;
  ThresholdCurve curve;
  double mean_score_correct = 0.0;
  double mean_score_incorrect = 0.0;
  WelchTTest score_separation;
  double train_seconds = 0.0;
  double total_seconds = 0.0;
  std::filesystem::path model_path;
};

// Memory the patch cache will take during training; checked against the cap
// before any allocation happens.
inline std::size_t image_patch_cache_bytes(const ExperimentConfig& c, std::size_t num_images) {
  PatchConfig cfg;
  cfg.height = kCifarDim;
  cfg.width = kCifarDim;
  cfg.planes = kCifarChannels * c.image_resolution;
  cfg.patch_h = c.patch_h;
  cfg.patch_w = c.patch_w;
  cfg.position_literals = c.position_literals;
  return num_images * cfg.patches_per_image() *
         words_for_literals(cfg.patch_features()) * sizeof(std::uint64_t);
}

inline ImageResult run_image_on(const ExperimentConfig& config, const LabeledImages& train,
                                const LabeledImages& test) {
  const auto start = std::chrono::steady_clock::now();
  const auto dir = detail::prepare_out_dir(config);

  const std::size_t cache_bytes = image_patch_cache_bytes(config, train.images.size());
  if (cache_bytes > config.mem_cap_mb * std::size_t{1024 * 1024}) {
    throw ResourceError("patch cache estimate " + std::to_string(cache_bytes >> 20) +
                        " MiB exceeds cap " + std::to_string(config.mem_cap_mb) + " MiB");
  }

  ImageThermometer encoder;
  encoder.channels = kCifarChannels;
  encoder.resolution = config.image_resolution;

  PatchConfig patch_cfg;
  patch_cfg.height = kCifarDim;
  patch_cfg.width = kCifarDim;
  patch_cfg.planes = encoder.channels * encoder.resolution;
  patch_cfg.patch_h = config.patch_h;
  patch_cfg.patch_w = config.patch_w;
  patch_cfg.position_literals = config.position_literals;

  std::vector<BitPlanes> train_planes;
  train_planes.reserve(train.images.size());
  for (const auto& img : train.images) train_planes.push_back(encoder.encode(img));

  ConvolutionalTM tm(config.image_classes, patch_cfg, config.tm_params(mix_seed(config.seed, 7)));
  tm.fit(train_planes, train.labels, config.epochs);
  ImageResult result;
  result.train_seconds = detail::wall_seconds(start);

  // Test-set reports; inference is pure, so the per-index writes keep the
  // output deterministic regardless of thread count.
  result.reports.resize(test.images.size());
  result.truths = test.labels;
  detail::parallel_for(test.images.size(), config.threads, [&](std::size_t i) {
    const BitPlanes planes = encoder.encode(test.images[i]);
    result.reports[i] = make_report(tm, planes);
  });

  std::size_t hits = 0;
  std::vector<double> correct_scores;
  std::vector<double> incorrect_scores;
  for (std::size_t i = 0; i < result.reports.size(); ++i) {
    const bool ok = result.reports[i].predicted == test.labels[i];
    hits += ok ? 1 : 0;
    (ok ? correct_scores : incorrect_scores).push_back(result.reports[i].normalized_score);
  }
  result.accuracy = static_cast<double>(hits) / result.reports.size();
  if (!correct_scores.empty()) result.mean_score_correct = mean(correct_scores);
  if (!incorrect_scores.empty()) result.mean_score_incorrect = mean(incorrect_scores);
  if (correct_scores.size() >= 2 && incorrect_scores.size() >= 2) {
    result.score_separation = welch_t_test(correct_scores, incorrect_scores);
  }

  const auto grid = default_threshold_grid();
  result.curve = accuracy_vs_threshold(result.reports, result.truths, grid);

  // report.csv: one row per test sample, per-class columns in class order.
  std::ofstream report_csv(dir / "report.csv");
  report_csv << "index,truth,predicted,correct,normalized_score";
  for (int cls : config.image_classes) {
    report_csv << ",sum_" << cls << ",score_" << cls << ",pos_" << cls << ",neg_" << cls;
  }
  report_csv << '\n';
  for (std::size_t i = 0; i < result.reports.size(); ++i) {
    const auto& r = result.reports[i];
    report_csv << i << ',' << test.labels[i] << ',' << r.predicted << ','
               << (r.predicted == test.labels[i] ? 1 : 0) << ','
               << detail::fmt(r.normalized_score);
    for (std::size_t k = 0; k < r.class_sums.size(); ++k) {
      report_csv << ',' << r.class_sums[k] << ',' << detail::fmt(r.individual_scores[k]) << ','
                 << r.clause_counts[k].first << ',' << r.clause_counts[k].second;
    }
    report_csv << '\n';
  }

  std::ofstream curve_csv(dir / "curve.csv");
  curve_csv << "threshold,accuracy,count\n";
  for (std::size_t i = 0; i < result.curve.thresholds.size(); ++i) {
    curve_csv << detail::fmt(result.curve.thresholds[i]) << ',';
    if (result.curve.count_at[i] == 0) {
      curve_csv << "nan";
    } else {
      curve_csv << detail::fmt(result.curve.accuracy_at[i]);
    }
    curve_csv << ',' << result.curve.count_at[i] << '\n';
  }

  // hist.csv: 20 uniform bins over [0,1] of the max-individual and
  // normalized scores, the latter split by correctness.
  std::array<std::size_t, 20> hist_individual{};
  std::array<std::size_t, 20> hist_normalized{};
  std::array<std::size_t, 20> hist_correct{};
  std::array<std::size_t, 20> hist_incorrect{};
  auto bin_of = [](double v) {
    int b = static_cast<int>(v * 20.0);
    return static_cast<std::size_t>(std::clamp(b, 0, 19));
  };
  for (std::size_t i = 0; i < result.reports.size(); ++i) {
    const auto& r = result.reports[i];
    const double max_ind =
        *std::max_element(r.individual_scores.begin(), r.individual_scores.end());
    ++hist_individual[bin_of(max_ind)];
    ++hist_normalized[bin_of(r.normalized_score)];
    if (r.predicted == test.labels[i]) {
      ++hist_correct[bin_of(r.normalized_score)];
    } else {
      ++hist_incorrect[bin_of(r.normalized_score)];
    }
  }
  std::ofstream hist_csv(dir / "hist.csv");
  hist_csv << "bin_lo,bin_hi,max_individual,normalized,normalized_correct,normalized_incorrect\n";
  for (std::size_t b = 0; b < 20; ++b) {
    hist_csv << detail::fmt(b * 0.05) << ',' << detail::fmt((b + 1) * 0.05) << ','
             << hist_individual[b] << ',' << hist_normalized[b] << ',' << hist_correct[b] << ','
             << hist_incorrect[b] << '\n';
  }

  ModelArchive archive = ModelArchive::of(std::move(tm));
  archive.image_encoder = encoder;
  archive.metadata["experiment"] = "image";
  archive.metadata["trained_epochs"] = config.epochs;
  result.model_path = dir / "model.json";
  save_model(archive, result.model_path);

  result.total_seconds = detail::wall_seconds(start);
  nlohmann::ordered_json metrics;
  metrics["accuracy"] = result.accuracy;
  metrics["test_samples"] = result.reports.size();
  metrics["mean_score_correct"] = result.mean_score_correct;
  metrics["mean_score_incorrect"] = result.mean_score_incorrect;
  metrics["welch_t"] = result.score_separation.t;
  metrics["welch_p_one_sided"] = result.score_separation.p_one_sided;
  metrics["train_seconds"] = result.train_seconds;
  metrics["total_seconds"] = result.total_seconds;
  std::ofstream mj(dir / "metrics.json");
  mj << metrics.dump(1) << '\n';
  return result;
}

inline ImageResult run_image(const ExperimentConfig& config) {
  if (config.data_dir.empty())
    throw ContractError("image experiment needs --data-dir with CIFAR-10 binaries");
  const LabeledImages train =
      load_cifar10(config.data_dir, true, config.image_classes, config.train_per_class);
  const LabeledImages test =
      load_cifar10(config.data_dir, false, config.image_classes, config.test_per_class);
  return run_image_on(config, train, test);
}

}  // namespace tsetlin
