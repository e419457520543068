// Experiment harness CLI. One subcommand per experiment plus model
// utilities:
//
//   tsetlin single-pattern --out-dir out/sp
//   tsetlin cpt            --out-dir out/cpt
//   tsetlin moons          --out-dir out/moons
//   tsetlin image          --data-dir data/cifar-10-batches-bin --out-dir out/img
//   tsetlin gen-data       --kind moons --n 1000 --out moons.csv [--binarize]
//   tsetlin predict        --model out/moons/model.json --csv points.csv
//   tsetlin predict        --model out/img/model.json --cifar-bin test_batch.bin --limit 16
//   tsetlin info           --model out/moons/model.json

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tsetlin/tsetlin.hpp"

using namespace tsetlin;

namespace {

void add_common_flags(CLI::App* cmd, ExperimentConfig& cfg) {
  cmd->add_option("--threshold,-T", cfg.threshold, "target value T")->capture_default_str();
  cmd->add_option("--specificity,-s", cfg.specificity, "specificity s")->capture_default_str();
  cmd->add_option("--clauses", cfg.clauses, "number of clauses")->capture_default_str();
  cmd->add_option("--states", cfg.states_per_action, "TA states per action")
      ->capture_default_str();
  cmd->add_flag("--boost-true-positive", cfg.boost_true_positive,
                "reinforce satisfied literals with probability 1");
  cmd->add_option("--epochs", cfg.epochs, "training epochs")->capture_default_str();
  cmd->add_option("--window", cfg.score_window, "trailing epochs averaged for scores")
      ->capture_default_str();
  cmd->add_option("--seed", cfg.seed, "experiment seed")->capture_default_str();
  cmd->add_option("--out-dir,-o", cfg.out_dir, "output directory")
      ->envname("TSETLIN_OUT_DIR")
      ->capture_default_str();
  cmd->add_option("--threads", cfg.threads, "inference threads")
      ->envname("TSETLIN_THREADS")
      ->capture_default_str();
  cmd->add_option("--mem-cap-mb", cfg.mem_cap_mb, "memory cap for large allocations (MiB)")
      ->capture_default_str();
}

std::vector<std::vector<double>> read_csv_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ContractError("cannot open CSV: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    // Skip a non-numeric header row.
    if (line.find_first_not_of("0123456789+-.eE, \t\r") != std::string::npos) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

int cmd_gen_data(const std::string& kind, std::size_t n, double noise, std::uint64_t seed,
                 const std::string& out, bool binarize, int bins) {
  std::ofstream os(out);
  if (!os) throw ContractError("cannot write: " + out);
  if (kind == "single-pattern") {
    const auto ds = single_pattern_dataset(n, noise, seed);
    os << "x0,x1,x2,y\n";
    for (std::size_t i = 0; i < ds.X.size(); ++i) {
      os << int(ds.X[i][0]) << ',' << int(ds.X[i][1]) << ',' << int(ds.X[i][2]) << ',' << ds.y[i]
         << '\n';
    }
  } else if (kind == "cpt") {
    const auto ds = cpt_dataset(n, seed);
    os << "A,B,C,y\n";
    for (std::size_t i = 0; i < ds.X.size(); ++i) {
      os << int(ds.X[i][0]) << ',' << int(ds.X[i][1]) << ',' << int(ds.X[i][2]) << ',' << ds.y[i]
         << '\n';
    }
  } else if (kind == "moons") {
    const auto ds = two_moons(n, noise, seed);
    if (binarize) {
      std::vector<std::vector<double>> rows;
      for (const auto& p : ds.X) rows.push_back({p[0], p[1]});
      const auto enc = ThermometerEncoder::fit(rows, bins, true);
      const std::size_t w = enc.encoded_width();
      for (std::size_t b = 0; b < w; ++b) os << 'b' << b << ',';
      os << "y\n";
      for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::uint8_t bit : enc.encode(rows[i])) os << int(bit) << ',';
        os << ds.y[i] << '\n';
      }
    } else {
      os << "x,y,label\n";
      char buf[80];
      for (std::size_t i = 0; i < ds.X.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.6f,%.6f,%d\n", ds.X[i][0], ds.X[i][1], ds.y[i]);
        os << buf;
      }
    }
  } else {
    std::fprintf(stderr, "unknown --kind %s\n", kind.c_str());
    return 2;
  }
  return 0;
}

int cmd_predict(const std::string& model_path, const std::string& csv,
                const std::string& cifar_bin, std::size_t limit) {
  const ModelArchive archive = load_model(model_path);

  if (!csv.empty()) {
    if (!archive.thermometer)
      throw ContractError("model has no thermometer encoder; --csv needs one");
    const auto rows = read_csv_points(csv);
    const std::size_t dims = archive.thermometer->num_dims();
    std::printf("index,prediction,score\n");
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() < dims)
        throw ShapeError("CSV row " + std::to_string(i) + " has fewer columns than the encoder");
      // Extra trailing columns (e.g. a label) are ignored.
      const BitRow bits =
          archive.thermometer->encode(std::span<const double>(rows[i].data(), dims));
      if (archive.kind == "binary") {
        const double score = probability_score(
            static_cast<double>(archive.binary->infer_sum(bits)),
            archive.binary->params().threshold);
        std::printf("%zu,%d,%.6f\n", i, score > 0.5 ? 1 : 0, score);
      } else if (archive.kind == "multiclass") {
        LiteralVector lv(bits);
        const auto rep = make_report(*archive.multiclass, PatchView(lv));
        std::printf("%zu,%d,%.6f\n", i, rep.predicted, rep.normalized_score);
      } else {
        throw ContractError("--csv input does not apply to a conv model");
      }
    }
    return 0;
  }

  if (!cifar_bin.empty()) {
    if (archive.kind != "conv") throw ContractError("--cifar-bin needs a conv model");
    if (!archive.image_encoder) throw ContractError("conv model archive lacks its image encoder");
    LabeledImages data;
    std::array<std::size_t, 10> counts{};
    load_cifar10_file(cifar_bin, data, {}, std::nullopt, counts);
    const std::size_t n = limit > 0 ? std::min(limit, data.images.size()) : data.images.size();
    std::printf("index,truth,prediction,normalized_score\n");
    for (std::size_t i = 0; i < n; ++i) {
      const BitPlanes planes = archive.image_encoder->encode(data.images[i]);
      const auto rep = make_report(*archive.conv, planes);
      std::printf("%zu,%d,%d,%.6f\n", i, data.labels[i], rep.predicted, rep.normalized_score);
    }
    return 0;
  }

  std::fprintf(stderr, "predict needs --csv or --cifar-bin\n");
  return 2;
}

int cmd_info(const std::string& model_path) {
  const ModelArchive archive = load_model(model_path);
  std::printf("kind: %s\n", archive.kind.c_str());

  auto print_unit = [](const BinaryTM& tm, const std::string& name) {
    const auto& p = tm.params();
    std::printf("%s: features=%zu clauses=%d T=%d s=%.3f budget=%s unique_clauses=%zu\n",
                name.c_str(), tm.num_features(), p.num_clauses, p.threshold, p.specificity,
                p.literal_budget ? std::to_string(*p.literal_budget).c_str() : "none",
                unique_clause_count(tm.bank()));
  };

  if (archive.kind == "binary") {
    print_unit(*archive.binary, "model");
  } else {
    const MulticlassTM& mc =
        archive.kind == "conv" ? archive.conv->inner() : *archive.multiclass;
    for (std::size_t k = 0; k < mc.num_units(); ++k) {
      print_unit(mc.unit(k), "class " + std::to_string(mc.classes()[k]));
    }
    if (archive.kind == "conv") {
      const auto& c = archive.conv->config();
      std::printf("patches: %dx%d over %dx%dx%d (%zu per image, position literals %s)\n",
                  c.patch_h, c.patch_w, c.height, c.width, c.planes, c.patches_per_image(),
                  c.position_literals ? "on" : "off");
    }
  }
  if (!archive.metadata.empty()) {
    std::printf("metadata: %s\n", archive.metadata.dump().c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tsetlin machine uncertainty-quantification experiments"};
  app.require_subcommand(1);

  ExperimentConfig sp_cfg = single_pattern_defaults();
  auto* sp = app.add_subcommand("single-pattern", "class-sum traces for the noisy single pattern");
  sp->add_option("--copies", sp_cfg.copies, "copies of the pattern")->capture_default_str();
  add_common_flags(sp, sp_cfg);

  ExperimentConfig cpt_cfg = cpt_defaults();
  auto* cpt = app.add_subcommand("cpt", "eight-pattern CPT traces over s in {1,2,5}");
  cpt->add_option("--copies", cpt_cfg.copies, "copies per pattern")->capture_default_str();
  add_common_flags(cpt, cpt_cfg);

  ExperimentConfig moons_cfg = moons_defaults();
  auto* moons = app.add_subcommand("moons", "two-moons probability grid and clause maps");
  moons->add_option("--n", moons_cfg.moons_n, "training samples")->capture_default_str();
  moons->add_option("--noise", moons_cfg.moons_noise, "gaussian noise sd")->capture_default_str();
  moons->add_option("--bins", moons_cfg.bins, "thermometer bins per feature")
      ->capture_default_str();
  moons->add_option("--mesh-steps", moons_cfg.mesh_steps, "mesh resolution")
      ->capture_default_str();
  moons->add_option("--mesh-expand", moons_cfg.mesh_expand, "bbox expansion per side")
      ->capture_default_str();
  add_common_flags(moons, moons_cfg);

  ExperimentConfig img_cfg = image_defaults();
  std::vector<std::string> class_names{"automobile", "ship"};
  auto* img = app.add_subcommand("image", "convolutional TM on CIFAR-10 binaries");
  img->add_option("--data-dir", img_cfg.data_dir, "directory with CIFAR-10 .bin batches")
      ->required();
  img->add_option("--classes", class_names, "two or more CIFAR-10 class names")
      ->capture_default_str();
  img->add_option("--train-per-class", img_cfg.train_per_class, "training cap per class")
      ->capture_default_str();
  img->add_option("--test-per-class", img_cfg.test_per_class, "test cap per class")
      ->capture_default_str();
  img->add_option("--patch", img_cfg.patch_h, "square patch side")->capture_default_str();
  img->add_option("--budget", *&img_cfg.literal_budget, "literal budget per clause");
  img->add_option("--resolution", img_cfg.image_resolution, "thermometer levels per channel")
      ->capture_default_str();
  img->add_flag("!--no-position-literals", img_cfg.position_literals,
                "drop thermometer-coded patch coordinates");
  add_common_flags(img, img_cfg);

  std::string gen_kind = "moons";
  std::size_t gen_n = 1000;
  double gen_noise = 0.15;
  std::uint64_t gen_seed = 42;
  std::string gen_out = "data.csv";
  bool gen_binarize = false;
  int gen_bins = 64;
  auto* gen = app.add_subcommand("gen-data", "export generated datasets as CSV / bit matrices");
  gen->add_option("--kind", gen_kind, "single-pattern | cpt | moons")->capture_default_str();
  gen->add_option("--n", gen_n, "rows (or copies per pattern)")->capture_default_str();
  gen->add_option("--noise", gen_noise, "noise parameter (p for single-pattern)")
      ->capture_default_str();
  gen->add_option("--seed", gen_seed, "seed")->capture_default_str();
  gen->add_option("--out", gen_out, "output file")->capture_default_str();
  gen->add_flag("--binarize", gen_binarize, "emit the thermometer bit matrix (moons)");
  gen->add_option("--bins", gen_bins, "bins when binarizing")->capture_default_str();

  std::string predict_model, predict_csv, predict_cifar;
  std::size_t predict_limit = 0;
  auto* predict = app.add_subcommand("predict", "score inputs with a saved model");
  predict->add_option("--model", predict_model, "model archive")->required();
  predict->add_option("--csv", predict_csv, "CSV of continuous feature rows");
  predict->add_option("--cifar-bin", predict_cifar, "CIFAR-10 binary batch file");
  predict->add_option("--limit", predict_limit, "max records from --cifar-bin");

  std::string info_model;
  auto* info = app.add_subcommand("info", "describe a saved model");
  info->add_option("--model", info_model, "model archive")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (sp->parsed()) {
      const auto r = run_single_pattern(sp_cfg);
      std::printf("single-pattern: results under %s (%.1fs)\n", sp_cfg.out_dir.c_str(), r.seconds);
      for (std::size_t i = 0; i < r.noise_levels.size(); ++i) {
        std::printf("  p=%.2f averaged score %.4f\n", r.noise_levels[i], r.averaged_scores[i]);
      }
    } else if (cpt->parsed()) {
      const auto r = run_cpt(cpt_cfg);
      std::printf("cpt: results under %s (%.1fs)\n", cpt_cfg.out_dir.c_str(), r.seconds);
      for (std::size_t i = 0; i < r.s_values.size(); ++i) {
        std::printf("  s=%.1f spearman=%.3f unique_clauses=%zu\n", r.s_values[i],
                    r.spearman_vs_table[i], r.unique_clauses[i]);
      }
    } else if (moons->parsed()) {
      const auto r = run_moons(moons_cfg);
      std::printf("moons: results under %s (%.1fs)\n", moons_cfg.out_dir.c_str(), r.seconds);
      std::printf("  test accuracy %.4f, outside-mean score %.4f, interior scores %.4f / %.4f\n",
                  r.test_accuracy, r.outside_mean_score, r.upper_interior_mean,
                  r.lower_interior_mean);
    } else if (img->parsed()) {
      img_cfg.patch_w = img_cfg.patch_h;
      img_cfg.image_classes.clear();
      for (const auto& name : class_names) {
        img_cfg.image_classes.push_back(cifar10_class_id(name));
      }
      const auto r = run_image(img_cfg);
      std::printf("image: results under %s (train %.0fs, total %.0fs)\n", img_cfg.out_dir.c_str(),
                  r.train_seconds, r.total_seconds);
      std::printf("  accuracy %.4f, mean score correct %.4f vs incorrect %.4f (p=%.2e)\n",
                  r.accuracy, r.mean_score_correct, r.mean_score_incorrect,
                  r.score_separation.p_one_sided);
    } else if (gen->parsed()) {
      return cmd_gen_data(gen_kind, gen_n, gen_noise, gen_seed, gen_out, gen_binarize, gen_bins);
    } else if (predict->parsed()) {
      return cmd_predict(predict_model, predict_csv, predict_cifar, predict_limit);
    } else if (info->parsed()) {
      return cmd_info(info_model);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
