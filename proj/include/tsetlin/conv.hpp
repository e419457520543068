#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "tsetlin/bitvec.hpp"
#include "tsetlin/error.hpp"
#include "tsetlin/multiclass.hpp"
#include "tsetlin/params.hpp"

namespace tsetlin {

// Patch geometry for convolutional clause evaluation. Patches are dense,
// stride 1, row-major. Each patch's feature vector is the plane-major scan
// of its pixels, optionally followed by thermometer-coded row and column
// offsets (bit t of the row code is set iff the patch starts below row t).
struct PatchConfig {
  int height = 0;
  int width = 0;
  int planes = 0;
  int patch_h = 0;
  int patch_w = 0;
  bool position_literals = true;

  void validate() const {
    if (height < 1 || width < 1 || planes < 1) throw ContractError("image dims must be >= 1");
    if (patch_h < 1 || patch_w < 1) throw ContractError("patch dims must be >= 1");
    if (patch_h > height || patch_w > width)
      throw ContractError("patch dims exceed image dims");
  }

  int rows() const { return height - patch_h + 1; }
  int cols() const { return width - patch_w + 1; }
  std::size_t patches_per_image() const {
    return static_cast<std::size_t>(rows()) * static_cast<std::size_t>(cols());
  }
  int row_position_bits() const { return position_literals ? height - patch_h : 0; }
  int col_position_bits() const { return position_literals ? width - patch_w : 0; }
  std::size_t patch_features() const {
    return static_cast<std::size_t>(patch_h) * patch_w * planes + row_position_bits() +
           col_position_bits();
  }
};

// All stride-1 patches of one binarized image, packed as literal vectors.
// Appended to `into` starting at patch slot `first`; `into` must have been
// sized for the config's feature count.
inline void extract_patches_into(const BitPlanes& img, const PatchConfig& cfg,
                                 PatchMatrix& into, std::size_t first) {
  if (img.planes != cfg.planes || img.height != cfg.height || img.width != cfg.width)
    throw ShapeError("image dimensions do not match the patch config");
  std::size_t idx = first;
  for (int r = 0; r < cfg.rows(); ++r) {
    for (int c = 0; c < cfg.cols(); ++c, ++idx) {
      std::size_t f = 0;
      for (int p = 0; p < cfg.planes; ++p) {
        for (int dr = 0; dr < cfg.patch_h; ++dr) {
          for (int dc = 0; dc < cfg.patch_w; ++dc, ++f) {
            into.set_literal(idx, f, img.at(p, r + dr, c + dc) != 0);
          }
        }
      }
      for (int t = 0; t < cfg.row_position_bits(); ++t, ++f) into.set_literal(idx, f, r > t);
      for (int t = 0; t < cfg.col_position_bits(); ++t, ++f) into.set_literal(idx, f, c > t);
    }
  }
}

inline PatchMatrix extract_patches(const BitPlanes& img, const PatchConfig& cfg) {
  cfg.validate();
  PatchMatrix m(cfg.patches_per_image(), words_for_literals(cfg.patch_features()));
  extract_patches_into(img, cfg, m, 0);
  return m;
}

// Convolutional multiclass TM: a MulticlassTM over the patch feature space,
// evaluated existentially over all patches of an image (a clause fires if it
// matches at least one patch).
class ConvolutionalTM {
 public:
  ConvolutionalTM(std::vector<int> classes, const PatchConfig& config, const TMParams& params)
      : config_((config.validate(), config)),
        inner_(std::move(classes), config.patch_features(), params) {}

  const PatchConfig& config() const { return config_; }
  const MulticlassTM& inner() const { return inner_; }
  MulticlassTM& inner() { return inner_; }
  const std::vector<int>& classes() const { return inner_.classes(); }

  PatchMatrix patches(const BitPlanes& img) const { return extract_patches(img, config_); }

  // Pre-extracts every sample's patches into one flat cache, then runs the
  // shared multiclass loop over patch views.
  void fit(const std::vector<BitPlanes>& images, const std::vector<int>& y, int epochs) {
    if (images.empty()) throw ContractError("fit: empty dataset");
    if (images.size() != y.size()) throw ShapeError("fit: |X| != |y|");
    const std::size_t ppi = config_.patches_per_image();
    PatchMatrix cache(images.size() * ppi, words_for_literals(config_.patch_features()));
    for (std::size_t i = 0; i < images.size(); ++i) {
      extract_patches_into(images[i], config_, cache, i * ppi);
    }
    inner_.fit_views([&](std::size_t i) { return cache.view(i * ppi, ppi); }, y, epochs);
  }

  std::vector<long long> class_sums_all(const BitPlanes& img) const {
    const PatchMatrix m = patches(img);
    return inner_.class_sums_all(m.view());
  }

  int predict(const BitPlanes& img) const {
    return classes()[MulticlassTM::argmax(class_sums_all(img))];
  }

  // Estimated resident bytes of the patch cache fit() will allocate.
  std::size_t patch_cache_bytes(std::size_t num_images) const {
    return num_images * config_.patches_per_image() *
           words_for_literals(config_.patch_features()) * sizeof(std::uint64_t);
  }

 private:
  PatchConfig config_;
  MulticlassTM inner_;
};

}  // namespace tsetlin
