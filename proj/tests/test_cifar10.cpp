#include <catch2/catch_amalgamated.hpp>

#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "support/synthetic_images.hpp"
#include "tsetlin/cifar10.hpp"
#include "tsetlin/rng.hpp"

using namespace tsetlin;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("tsetlin_cifar_" + std::to_string(::getpid()) + "_" +
            std::to_string(std::chrono::steady_clock::now().time_since_epoch().count()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("label names follow the published order") {
  CHECK(cifar10_class_names()[8] == "ship");
  CHECK(cifar10_class_id("automobile") == 1);
  CHECK(cifar10_class_id("ship") == 8);
  CHECK_THROWS_AS(cifar10_class_id("zeppelin"), ContractError);
}

TEST_CASE("round-trips records through the binary layout") {
  TempDir tmp;
  Rng rng(77);
  std::vector<Image> images;
  std::vector<int> labels;
  for (int i = 0; i < 12; ++i) {
    Image img(kCifarChannels, kCifarDim, kCifarDim);
    for (auto& p : img.pixels) p = static_cast<std::uint8_t>(rng.below(256));
    images.push_back(std::move(img));
    labels.push_back(static_cast<int>(rng.below(10)));
  }
  write_cifar10_file(tmp.path / "test_batch.bin", images, labels);

  const auto loaded = load_cifar10(tmp.path, false);
  REQUIRE(loaded.images.size() == 12);
  CHECK(loaded.labels == labels);
  for (int i = 0; i < 12; ++i) {
    CHECK(loaded.images[i].pixels == images[i].pixels);
  }
  // Record layout check: byte 0 of record k is the label.
  std::ifstream raw(tmp.path / "test_batch.bin", std::ios::binary);
  for (int i = 0; i < 12; ++i) {
    char b;
    raw.read(&b, 1);
    CHECK(static_cast<int>(static_cast<unsigned char>(b)) == labels[i]);
    raw.seekg(3072, std::ios::cur);
  }
}

TEST_CASE("subset filter and per-class cap") {
  TempDir tmp;
  std::vector<Image> images;
  std::vector<int> labels;
  for (int i = 0; i < 40; ++i) {
    images.emplace_back(kCifarChannels, kCifarDim, kCifarDim);
    labels.push_back(i % 4);  // labels 0..3, ten of each
  }
  write_cifar10_file(tmp.path / "test_batch.bin", images, labels);

  const auto subset = load_cifar10(tmp.path, false, {1, 3}, 4);
  REQUIRE(subset.images.size() == 8);
  for (int label : subset.labels) CHECK((label == 1 || label == 3));
}

TEST_CASE("train split concatenates the five batches") {
  TempDir tmp;
  for (int b = 1; b <= 5; ++b) {
    std::vector<Image> images(3, Image(kCifarChannels, kCifarDim, kCifarDim));
    std::vector<int> labels(3, b % 10);
    write_cifar10_file(tmp.path / ("data_batch_" + std::to_string(b) + ".bin"), images, labels);
  }
  const auto all = load_cifar10(tmp.path, true);
  CHECK(all.images.size() == 15);
}

TEST_CASE("missing and malformed files raise archive errors") {
  TempDir tmp;
  CHECK_THROWS_AS(load_cifar10(tmp.path, false), ArchiveError);

  std::ofstream bad(tmp.path / "test_batch.bin", std::ios::binary);
  bad << "not a whole record";
  bad.close();
  CHECK_THROWS_AS(load_cifar10(tmp.path, false), ArchiveError);
}

TEST_CASE("synthetic stand-in data is reproducible and CIFAR-shaped") {
  const auto a = synth::make_dataset(10, 5);
  const auto b = synth::make_dataset(10, 5);
  REQUIRE(a.images.size() == 20);
  CHECK(a.labels == b.labels);
  for (std::size_t i = 0; i < a.images.size(); ++i) {
    CHECK(a.images[i].pixels == b.images[i].pixels);
    CHECK(a.images[i].pixels.size() == kCifarRecordBytes - 1);
  }
  // Both labels present, alternating.
  CHECK(a.labels[0] == 1);
  CHECK(a.labels[1] == 8);

  // Written out and loaded back through the real format.
  TempDir tmp;
  write_cifar10_file(tmp.path / "test_batch.bin", a.images, a.labels);
  const auto loaded = load_cifar10(tmp.path, false, {1, 8});
  CHECK(loaded.images.size() == 20);
}
