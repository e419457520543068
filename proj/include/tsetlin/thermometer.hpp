#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tsetlin/bitvec.hpp"
#include "tsetlin/error.hpp"

namespace tsetlin {

// Thermometer encoder for continuous features. Fitting places bins-1
// interior thresholds uniformly over each feature's [min, max], at
// min + k*(max-min)/bins for k = 1..bins-1. With the boundary bit enabled a
// final threshold equal to the training maximum is appended, so values above
// the training domain encode as all ones and values below as all zeros.
// Encoded bit j of a feature is 1 iff the value is >= threshold j.
class ThermometerEncoder {
 public:
  ThermometerEncoder() = default;

  static ThermometerEncoder fit(const std::vector<std::vector<double>>& X, int bins,
                                bool boundary_bit) {
    if (X.empty()) throw ContractError("fit: empty dataset");
    if (bins < 1) throw ContractError("bins must be >= 1");
    if (bins == 1 && !boundary_bit)
      throw ContractError("1 bin without a boundary bit encodes zero bits per feature");
    const std::size_t dims = X.front().size();
    ThermometerEncoder enc;
    enc.bins_ = bins;
    enc.boundary_ = boundary_bit;
    enc.thresholds_.resize(dims);
    for (std::size_t f = 0; f < dims; ++f) {
      double lo = X[0][f];
      double hi = X[0][f];
      for (const auto& row : X) {
        if (row.size() != dims) throw ShapeError("ragged dataset");
        lo = std::min(lo, row[f]);
        hi = std::max(hi, row[f]);
      }
      if (!(hi > lo))
        throw DegenerateFeatureError("feature " + std::to_string(f) + " is constant");
      auto& t = enc.thresholds_[f];
      for (int k = 1; k < bins; ++k) {
        t.push_back(lo + static_cast<double>(k) * (hi - lo) / bins);
      }
      if (boundary_bit) t.push_back(hi);
    }
    return enc;
  }

  std::size_t num_dims() const { return thresholds_.size(); }
  int bins() const { return bins_; }
  bool boundary_bit() const { return boundary_; }
  std::size_t width_per_feature() const { return thresholds_.empty() ? 0 : thresholds_[0].size(); }
  std::size_t encoded_width() const { return num_dims() * width_per_feature(); }
  const std::vector<double>& thresholds(std::size_t f) const { return thresholds_[f]; }

  BitRow encode(std::span<const double> x) const {
    if (x.size() != num_dims()) throw ShapeError("encode: wrong dimension count");
    BitRow out;
    out.reserve(encoded_width());
    for (std::size_t f = 0; f < x.size(); ++f) {
      if (!std::isfinite(x[f])) throw ContractError("encode: non-finite input");
      for (double t : thresholds_[f]) out.push_back(x[f] >= t ? 1 : 0);
    }
    return out;
  }

  // Used by the archive loader; thresholds must be strictly ascending.
  static ThermometerEncoder from_thresholds(std::vector<std::vector<double>> thresholds, int bins,
                                            bool boundary_bit) {
    for (const auto& t : thresholds) {
      for (std::size_t i = 1; i < t.size(); ++i) {
        if (!(t[i] > t[i - 1])) throw ContractError("thresholds must be strictly ascending");
      }
    }
    ThermometerEncoder enc;
    enc.thresholds_ = std::move(thresholds);
    enc.bins_ = bins;
    enc.boundary_ = boundary_bit;
    return enc;
  }

  bool operator==(const ThermometerEncoder& other) const = default;

 private:
  std::vector<std::vector<double>> thresholds_;
  int bins_ = 0;
  bool boundary_ = false;
};

// Integer image with channel-major pixel storage (all of channel 0's pixels
// row-major, then channel 1, ...), the CIFAR-10 record layout.
struct Image {
  int channels = 0;
  int height = 0;
  int width = 0;
  std::vector<std::uint8_t> pixels;  // channels * height * width

  Image() = default;
  Image(int c, int h, int w)
      : channels(c), height(h), width(w),
        pixels(static_cast<std::size_t>(c) * h * w, 0) {}

  std::uint8_t at(int ch, int r, int c) const {
    return pixels[(static_cast<std::size_t>(ch) * height + r) * width + c];
  }
  void set(int ch, int r, int c, std::uint8_t v) {
    pixels[(static_cast<std::size_t>(ch) * height + r) * width + c] = v;
  }
};

// Thermometer encoding for integer images: per channel, `resolution` bit
// planes with uniform thresholds over the declared pixel range,
// lo + k*(hi-lo)/resolution for k = 1..resolution. Plane index is
// channel * resolution + level.
struct ImageThermometer {
  int channels = 3;
  int resolution = 8;
  double lo = 0.0;
  double hi = 255.0;

  double threshold(int level) const {
    return lo + static_cast<double>(level + 1) * (hi - lo) / resolution;
  }

  BitPlanes encode(const Image& img) const {
    if (img.channels != channels) throw ShapeError("encode_image: wrong channel count");
    BitPlanes out(channels * resolution, img.height, img.width);
    for (int ch = 0; ch < channels; ++ch) {
      for (int r = 0; r < img.height; ++r) {
        for (int c = 0; c < img.width; ++c) {
          const double v = img.at(ch, r, c);
          if (v < lo || v > hi) throw ContractError("encode_image: pixel outside declared range");
          for (int k = 0; k < resolution; ++k) {
            out.set(ch * resolution + k, r, c, v >= threshold(k) ? 1 : 0);
          }
        }
      }
    }
    return out;
  }

  bool operator==(const ImageThermometer& other) const = default;
};

}  // namespace tsetlin
