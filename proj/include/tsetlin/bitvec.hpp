#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tsetlin/error.hpp"

namespace tsetlin {

using BitRow = std::vector<std::uint8_t>;  // one binary feature vector, values 0/1

// Literal layout shared by clause masks and packed inputs: literal 2k is
// feature k, literal 2k+1 is its negation. Bit i of word w is literal 64w+i.
inline constexpr std::size_t literal_index(std::size_t feature, bool negated) {
  return 2 * feature + (negated ? 1 : 0);
}

inline constexpr std::size_t words_for_literals(std::size_t num_features) {
  return (2 * num_features + 63) / 64;
}

// Packed literal values of one input: for every feature both the feature bit
// and its complement are materialized, so a clause match is a plain masked
// compare against the include mask.
class LiteralVector {
 public:
  LiteralVector() = default;

  explicit LiteralVector(std::span<const std::uint8_t> feature_bits)
      : num_features_(feature_bits.size()),
        words_(words_for_literals(feature_bits.size()), 0) {
    for (std::size_t k = 0; k < num_features_; ++k) {
      const std::size_t lit = literal_index(k, feature_bits[k] == 0);
      words_[lit >> 6] |= std::uint64_t{1} << (lit & 63);
    }
  }

  std::size_t num_features() const { return num_features_; }
  std::span<const std::uint64_t> words() const { return words_; }

 private:
  std::size_t num_features_ = 0;
  std::vector<std::uint64_t> words_;
};

// Non-owning view over the packed literal words of one or more patches laid
// out back to back. A flat (non-convolutional) input is a PatchView of one
// patch. words_per_patch is fixed by the model's feature count.
class PatchView {
 public:
  PatchView(const std::uint64_t* base, std::size_t count, std::size_t words_per_patch)
      : base_(base), count_(count), stride_(words_per_patch) {}

  explicit PatchView(const LiteralVector& single)
      : base_(single.words().data()), count_(1), stride_(single.words().size()) {}

  std::size_t count() const { return count_; }
  std::size_t words_per_patch() const { return stride_; }

  const std::uint64_t* patch(std::size_t i) const { return base_ + i * stride_; }

 private:
  const std::uint64_t* base_;
  std::size_t count_;
  std::size_t stride_;
};

// Owning, contiguous store for the packed patches of one sample (or of a
// whole cached dataset). Avoids one heap allocation per patch.
class PatchMatrix {
 public:
  PatchMatrix() = default;
  PatchMatrix(std::size_t patch_count, std::size_t words_per_patch)
      : count_(patch_count), stride_(words_per_patch), words_(patch_count * words_per_patch, 0) {}

  std::size_t count() const { return count_; }
  std::size_t words_per_patch() const { return stride_; }

  std::uint64_t* patch(std::size_t i) { return words_.data() + i * stride_; }
  const std::uint64_t* patch(std::size_t i) const { return words_.data() + i * stride_; }

  void set_literal(std::size_t patch_idx, std::size_t feature, bool value) {
    const std::size_t lit = literal_index(feature, !value);
    patch(patch_idx)[lit >> 6] |= std::uint64_t{1} << (lit & 63);
  }

  PatchView view() const { return PatchView(words_.data(), count_, stride_); }
  PatchView view(std::size_t first, std::size_t n) const {
    return PatchView(words_.data() + first * stride_, n, stride_);
  }

 private:
  std::size_t count_ = 0;
  std::size_t stride_ = 0;
  std::vector<std::uint64_t> words_;
};

// Binarized image: `planes` bit-planes of height x width cells, one byte per
// cell holding 0 or 1. Plane index = channel * resolution + level for
// thermometer-encoded images.
struct BitPlanes {
  int planes = 0;
  int height = 0;
  int width = 0;
  std::vector<std::uint8_t> bits;  // planes * height * width

  BitPlanes() = default;
  BitPlanes(int p, int h, int w)
      : planes(p), height(h), width(w),
        bits(static_cast<std::size_t>(p) * h * w, 0) {}

  std::uint8_t at(int plane, int row, int col) const {
    return bits[(static_cast<std::size_t>(plane) * height + row) * width + col];
  }
  void set(int plane, int row, int col, std::uint8_t v) {
    bits[(static_cast<std::size_t>(plane) * height + row) * width + col] = v;
  }

  // Plane-major flatten; this is the canonical flat feature order for an
  // image, and the degenerate whole-image patch reproduces it.
  BitRow flatten() const { return BitRow(bits.begin(), bits.end()); }
};

}  // namespace tsetlin
