#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tsetlin/binary_tm.hpp"
#include "tsetlin/conv.hpp"
#include "tsetlin/error.hpp"
#include "tsetlin/multiclass.hpp"
#include "tsetlin/thermometer.hpp"

namespace tsetlin {

// Versioned JSON model container: hyperparameters, per-clause TA states and
// weights, RNG states, the encoder the model was trained behind, and
// free-form training metadata. Text JSON keeps the format byte-order
// independent; integer state arrays and round-trip-exact doubles make a
// reloaded model predict bit-identically.
struct ModelArchive {
  static constexpr int kVersion = 1;
  static constexpr const char* kFormat = "tsetlin-model";

  std::string kind;  // "binary" | "multiclass" | "conv"
  std::optional<BinaryTM> binary;
  std::optional<MulticlassTM> multiclass;
  std::optional<ConvolutionalTM> conv;
  std::optional<ThermometerEncoder> thermometer;
  std::optional<ImageThermometer> image_encoder;
  nlohmann::ordered_json metadata = nlohmann::ordered_json::object();

  static ModelArchive of(BinaryTM tm) {
    ModelArchive a;
    a.kind = "binary";
    a.binary = std::move(tm);
    return a;
  }
  static ModelArchive of(MulticlassTM tm) {
    ModelArchive a;
    a.kind = "multiclass";
    a.multiclass = std::move(tm);
    return a;
  }
  static ModelArchive of(ConvolutionalTM tm) {
    ModelArchive a;
    a.kind = "conv";
    a.conv = std::move(tm);
    return a;
  }
};

namespace detail {

inline nlohmann::ordered_json params_to_json(const TMParams& p) {
  nlohmann::ordered_json j;
  j["threshold"] = p.threshold;
  j["specificity"] = p.specificity;
  j["num_clauses"] = p.num_clauses;
  if (p.literal_budget) {
    j["literal_budget"] = *p.literal_budget;
  } else {
    j["literal_budget"] = nullptr;
  }
  j["states_per_action"] = p.states_per_action;
  j["seed"] = p.seed;
  j["boost_true_positive"] = p.boost_true_positive;
  return j;
}

inline TMParams params_from_json(const nlohmann::json& j) {
  TMParams p;
  p.threshold = j.at("threshold").get<int>();
  p.specificity = j.at("specificity").get<double>();
  p.num_clauses = j.at("num_clauses").get<int>();
  if (!j.at("literal_budget").is_null()) p.literal_budget = j.at("literal_budget").get<int>();
  p.states_per_action = j.at("states_per_action").get<int>();
  p.seed = j.at("seed").get<std::uint64_t>();
  p.boost_true_positive = j.at("boost_true_positive").get<bool>();
  return p;
}

inline nlohmann::ordered_json unit_to_json(const BinaryTM& tm) {
  nlohmann::ordered_json j;
  j["seed"] = tm.params().seed;
  j["rng"] = tm.rng().save_state();
  auto& weights = j["weights"] = nlohmann::ordered_json::array();
  auto& states = j["states"] = nlohmann::ordered_json::array();
  const ClauseBank& bank = tm.bank();
  for (int c = 0; c < bank.num_clauses(); ++c) {
    weights.push_back(bank.weight(c));
    const auto row = bank.clause_states(c);
    states.push_back(std::vector<int>(row.begin(), row.end()));
  }
  return j;
}

inline void unit_from_json(const nlohmann::json& j, BinaryTM& tm) {
  const auto& weights = j.at("weights");
  const auto& states = j.at("states");
  ClauseBank& bank = tm.bank();
  if (static_cast<int>(weights.size()) != bank.num_clauses() ||
      static_cast<int>(states.size()) != bank.num_clauses())
    throw ArchiveError("archive clause count does not match params");
  for (int c = 0; c < bank.num_clauses(); ++c) {
    std::vector<std::uint16_t> row;
    row.reserve(states[c].size());
    for (const auto& v : states[c]) row.push_back(v.get<std::uint16_t>());
    bank.load_clause(c, row, weights[c].get<std::uint32_t>());
  }
  tm.rng().restore_state(j.at("rng").get<std::string>());
}

inline nlohmann::ordered_json thermometer_to_json(const ThermometerEncoder& enc) {
  nlohmann::ordered_json j;
  j["type"] = "thermometer";
  j["bins"] = enc.bins();
  j["boundary_bit"] = enc.boundary_bit();
  auto& th = j["thresholds"] = nlohmann::ordered_json::array();
  for (std::size_t f = 0; f < enc.num_dims(); ++f) th.push_back(enc.thresholds(f));
  return j;
}

inline nlohmann::ordered_json image_encoder_to_json(const ImageThermometer& enc) {
  nlohmann::ordered_json j;
  j["type"] = "image";
  j["channels"] = enc.channels;
  j["resolution"] = enc.resolution;
  j["lo"] = enc.lo;
  j["hi"] = enc.hi;
  return j;
}

inline nlohmann::ordered_json patch_config_to_json(const PatchConfig& c) {
  nlohmann::ordered_json j;
  j["height"] = c.height;
  j["width"] = c.width;
  j["planes"] = c.planes;
  j["patch_h"] = c.patch_h;
  j["patch_w"] = c.patch_w;
  j["position_literals"] = c.position_literals;
  return j;
}

inline PatchConfig patch_config_from_json(const nlohmann::json& j) {
  PatchConfig c;
  c.height = j.at("height").get<int>();
  c.width = j.at("width").get<int>();
  c.planes = j.at("planes").get<int>();
  c.patch_h = j.at("patch_h").get<int>();
  c.patch_w = j.at("patch_w").get<int>();
  c.position_literals = j.at("position_literals").get<bool>();
  return c;
}

}  // namespace detail

inline nlohmann::ordered_json archive_to_json(const ModelArchive& archive) {
  nlohmann::ordered_json j;
  j["format"] = ModelArchive::kFormat;
  j["version"] = ModelArchive::kVersion;
  j["kind"] = archive.kind;

  const MulticlassTM* mc = nullptr;
  if (archive.kind == "binary") {
    if (!archive.binary) throw ArchiveError("binary archive without a model");
    j["num_features"] = archive.binary->num_features();
    j["params"] = detail::params_to_json(archive.binary->params());
    j["units"] = nlohmann::ordered_json::array({detail::unit_to_json(*archive.binary)});
  } else if (archive.kind == "multiclass") {
    if (!archive.multiclass) throw ArchiveError("multiclass archive without a model");
    mc = &*archive.multiclass;
  } else if (archive.kind == "conv") {
    if (!archive.conv) throw ArchiveError("conv archive without a model");
    j["patch_config"] = detail::patch_config_to_json(archive.conv->config());
    mc = &archive.conv->inner();
  } else {
    throw ArchiveError("unknown archive kind: " + archive.kind);
  }

  if (mc != nullptr) {
    j["num_features"] = mc->num_features();
    TMParams shared = mc->unit(0).params();
    j["params"] = detail::params_to_json(shared);
    j["classes"] = mc->classes();
    j["order_rng"] = mc->order_rng_state();
    auto& units = j["units"] = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < mc->num_units(); ++k) {
      units.push_back(detail::unit_to_json(mc->unit(k)));
    }
  }

  if (archive.thermometer) j["encoder"] = detail::thermometer_to_json(*archive.thermometer);
  if (archive.image_encoder) j["encoder"] = detail::image_encoder_to_json(*archive.image_encoder);
  if (!j.contains("encoder")) j["encoder"] = nullptr;
  j["metadata"] = archive.metadata;
  return j;
}

inline ModelArchive archive_from_json(const nlohmann::json& j) {
  try {
    if (j.at("format").get<std::string>() != ModelArchive::kFormat)
      throw ArchiveError("not a tsetlin model archive");
    if (j.at("version").get<int>() != ModelArchive::kVersion)
      throw ArchiveError("unsupported archive version " + j.at("version").dump());

    ModelArchive archive;
    archive.kind = j.at("kind").get<std::string>();
    const TMParams params = detail::params_from_json(j.at("params"));
    const std::size_t num_features = j.at("num_features").get<std::size_t>();

    auto load_multiclass = [&]() {
      std::vector<int> classes = j.at("classes").get<std::vector<int>>();
      const auto& units = j.at("units");
      std::vector<std::uint64_t> seeds;
      for (const auto& u : units) seeds.push_back(u.at("seed").get<std::uint64_t>());
      MulticlassTM tm(classes, num_features, params, seeds);
      if (units.size() != tm.num_units()) throw ArchiveError("unit count mismatch");
      for (std::size_t k = 0; k < tm.num_units(); ++k) {
        detail::unit_from_json(units[k], tm.unit(k));
      }
      tm.restore_order_rng(j.at("order_rng").get<std::string>());
      return tm;
    };

    if (archive.kind == "binary") {
      TMParams p = params;
      p.seed = j.at("units").at(0).at("seed").get<std::uint64_t>();
      BinaryTM tm(num_features, p);
      detail::unit_from_json(j.at("units").at(0), tm);
      archive.binary = std::move(tm);
    } else if (archive.kind == "multiclass") {
      archive.multiclass = load_multiclass();
    } else if (archive.kind == "conv") {
      const PatchConfig cfg = detail::patch_config_from_json(j.at("patch_config"));
      if (cfg.patch_features() != num_features)
        throw ArchiveError("patch config disagrees with num_features");
      ConvolutionalTM tm(j.at("classes").get<std::vector<int>>(), cfg, params);
      MulticlassTM inner = load_multiclass();
      tm.inner() = std::move(inner);
      archive.conv = std::move(tm);
    } else {
      throw ArchiveError("unknown archive kind: " + archive.kind);
    }

    if (!j.at("encoder").is_null()) {
      const auto& enc = j.at("encoder");
      const std::string type = enc.at("type").get<std::string>();
      if (type == "thermometer") {
        archive.thermometer = ThermometerEncoder::from_thresholds(
            enc.at("thresholds").get<std::vector<std::vector<double>>>(),
            enc.at("bins").get<int>(), enc.at("boundary_bit").get<bool>());
      } else if (type == "image") {
        ImageThermometer it;
        it.channels = enc.at("channels").get<int>();
        it.resolution = enc.at("resolution").get<int>();
        it.lo = enc.at("lo").get<double>();
        it.hi = enc.at("hi").get<double>();
        archive.image_encoder = it;
      } else {
        throw ArchiveError("unknown encoder type: " + type);
      }
    }
    if (j.contains("metadata")) archive.metadata = j.at("metadata");
    return archive;
  } catch (const ArchiveError&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    throw ArchiveError(std::string("corrupt archive: ") + e.what());
  } catch (const std::exception& e) {
    throw ArchiveError(std::string("corrupt archive: ") + e.what());
  }
}

inline void save_model(const ModelArchive& archive, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ArchiveError("cannot write archive: " + path.string());
  out << archive_to_json(archive).dump(1) << '\n';
}

inline ModelArchive load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ArchiveError("cannot open archive: " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ArchiveError(std::string("corrupt archive: ") + e.what());
  }
  return archive_from_json(j);
}

}  // namespace tsetlin
