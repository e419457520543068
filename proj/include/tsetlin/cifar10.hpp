#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "tsetlin/error.hpp"
#include "tsetlin/thermometer.hpp"

namespace tsetlin {

// CIFAR-10 binary layout: 3073-byte records, one label byte followed by
// 3072 channel-major pixels (1024 red, 1024 green, 1024 blue; row-major
// within a channel).
inline constexpr int kCifarDim = 32;
inline constexpr int kCifarChannels = 3;
inline constexpr std::size_t kCifarRecordBytes = 1 + 3 * 1024;

inline const std::array<std::string, 10>& cifar10_class_names() {
  static const std::array<std::string, 10> names = {
      "airplane", "automobile", "bird",  "cat",  "deer",
      "dog",      "frog",       "horse", "ship", "truck"};
  return names;
}

inline int cifar10_class_id(const std::string& name) {
  const auto& names = cifar10_class_names();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return static_cast<int>(i);
  }
  throw ContractError("unknown CIFAR-10 class name: " + name);
}

struct LabeledImages {
  std::vector<Image> images;
  std::vector<int> labels;
};

// Decodes one CIFAR-10 binary file. `keep` (when non-empty) filters labels;
// `per_class_cap` stops collecting a class once its quota is filled, counting
// across successive calls via `counts`.
inline void load_cifar10_file(const std::filesystem::path& file, LabeledImages& out,
                              const std::vector<int>& keep, std::optional<std::size_t> per_class_cap,
                              std::array<std::size_t, 10>& counts) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ArchiveError("cannot open CIFAR-10 file: " + file.string());
  in.seekg(0, std::ios::end);
  const std::streamoff size = in.tellg();
  in.seekg(0, std::ios::beg);
  if (size <= 0 || size % static_cast<std::streamoff>(kCifarRecordBytes) != 0)
    throw ArchiveError("malformed CIFAR-10 file (size not a multiple of 3073): " + file.string());

  std::array<char, kCifarRecordBytes> record;
  const std::size_t n = static_cast<std::size_t>(size) / kCifarRecordBytes;
  for (std::size_t i = 0; i < n; ++i) {
    in.read(record.data(), record.size());
    if (!in) throw ArchiveError("truncated CIFAR-10 record in " + file.string());
    const int label = static_cast<std::uint8_t>(record[0]);
    if (label > 9) throw ArchiveError("CIFAR-10 label byte out of range");
    if (!keep.empty() && std::find(keep.begin(), keep.end(), label) == keep.end()) continue;
    if (per_class_cap && counts[label] >= *per_class_cap) continue;
    ++counts[label];
    Image img(kCifarChannels, kCifarDim, kCifarDim);
    std::copy(record.begin() + 1, record.end(),
              reinterpret_cast<char*>(img.pixels.data()));
    out.images.push_back(std::move(img));
    out.labels.push_back(label);
  }
}

// Loads a CIFAR-10 split from a directory holding the standard binary
// batches. Train = data_batch_1..5.bin, test = test_batch.bin.
inline LabeledImages load_cifar10(const std::filesystem::path& dir, bool train,
                                  const std::vector<int>& keep = {},
                                  std::optional<std::size_t> per_class_cap = std::nullopt) {
  LabeledImages out;
  std::array<std::size_t, 10> counts{};
  if (train) {
    for (int b = 1; b <= 5; ++b) {
      load_cifar10_file(dir / ("data_batch_" + std::to_string(b) + ".bin"), out, keep,
                        per_class_cap, counts);
    }
  } else {
    load_cifar10_file(dir / "test_batch.bin", out, keep, per_class_cap, counts);
  }
  return out;
}

// Writes images in the CIFAR-10 binary record layout (fixture/export helper).
inline void write_cifar10_file(const std::filesystem::path& file,
                               const std::vector<Image>& images, const std::vector<int>& labels) {
  if (images.size() != labels.size()) throw ShapeError("write_cifar10_file: length mismatch");
  std::ofstream out(file, std::ios::binary);
  if (!out) throw ArchiveError("cannot write CIFAR-10 file: " + file.string());
  for (std::size_t i = 0; i < images.size(); ++i) {
    const Image& img = images[i];
    if (img.pixels.size() != kCifarRecordBytes - 1)
      throw ShapeError("write_cifar10_file: image is not 3x32x32");
    const char label = static_cast<char>(labels[i]);
    out.write(&label, 1);
    out.write(reinterpret_cast<const char*>(img.pixels.data()), img.pixels.size());
  }
}

}  // namespace tsetlin
