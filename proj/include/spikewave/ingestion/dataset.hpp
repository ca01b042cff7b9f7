#pragma once

#include <algorithm>
#include <filesystem>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "spikewave/core/config.hpp"
#include "spikewave/core/error.hpp"
#include "spikewave/core/rng.hpp"
#include "spikewave/core/types.hpp"

namespace spikewave {

struct LabeledImage {
  Image image;
  bool positive = false;
};

struct Split {
  std::vector<LabeledImage> train;
  std::vector<LabeledImage> test;
};

// Shuffles `items`, cuts them into two equal halves (an odd leftover is
// dropped), then draws n_sample from each half without replacement.
template <typename T>
std::pair<std::vector<T>, std::vector<T>> split_and_sample(
    const std::vector<T>& items, std::size_t n_sample, Rng& rng) {
  const std::size_t half = items.size() / 2;
  if (n_sample > half) {
    throw ContractViolation("n_sample " + std::to_string(n_sample) +
                            " exceeds the per-set size " +
                            std::to_string(half));
  }
  std::vector<std::size_t> order(items.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.shuffle(order);
  std::vector<std::size_t> first(order.begin(), order.begin() + half);
  std::vector<std::size_t> second(order.begin() + half,
                                  order.begin() + 2 * half);
  rng.shuffle(first);
  rng.shuffle(second);
  first.resize(n_sample);
  second.resize(n_sample);
  std::pair<std::vector<T>, std::vector<T>> out;
  out.first.reserve(n_sample);
  out.second.reserve(n_sample);
  for (std::size_t i : first) out.first.push_back(items[i]);
  for (std::size_t i : second) out.second.push_back(items[i]);
  return out;
}

// Loads <root>/<class>/*.{pgm,ppm,pnm} (sorted by filename), converted to
// grayscale and rescaled so the longest side is `image_size`.
std::vector<Image> load_class_directory(const std::filesystem::path& root,
                                        const std::string& class_name,
                                        int image_size);

// Builds the balanced train/test split used by training and evaluation:
// per class, an equal split followed by n_sample draws from each half.
// Images come from `data_root` when given, otherwise from the synthetic
// generator. The split depends only on (cfg, data).
Split build_split(const RunConfig& cfg, const std::filesystem::path& data_root);

}  // namespace spikewave
