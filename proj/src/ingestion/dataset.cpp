#include "spikewave/ingestion/dataset.hpp"

#include <algorithm>

#include "spikewave/ingestion/image_io.hpp"
#include "spikewave/ingestion/synthetic.hpp"

namespace spikewave {

std::vector<Image> load_class_directory(const std::filesystem::path& root,
                                        const std::string& class_name,
                                        int image_size) {
  const auto dir = root / class_name;
  if (!std::filesystem::is_directory(dir)) {
    throw IoError("missing class directory " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    auto ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), ::tolower);
    if (ext == ".pgm" || ext == ".ppm" || ext == ".pnm") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw IoError("no images in " + dir.string());

  std::vector<Image> images;
  images.reserve(files.size());
  for (const auto& f : files) {
    images.push_back(fit_longest_side(load_grayscale(f),
                                      static_cast<std::size_t>(image_size)));
  }
  return images;
}

Split build_split(const RunConfig& cfg, const std::filesystem::path& data_root) {
  const Rng root = rng_create(cfg.seed);
  Rng data_rng = root.split("data");
  Rng split_rng = root.split("split");

  Split split;
  for (int k = 0; k < 2; ++k) {
    const bool positive = (k == 0);
    std::vector<Image> images;
    if (data_root.empty()) {
      SyntheticParams params;
      params.size = cfg.image_size;
      const auto cls = positive ? SyntheticClass::Target : SyntheticClass::Clutter;
      for (int i = 0; i < cfg.synthetic_per_class; ++i) {
        images.push_back(generate_synthetic(cls, params, data_rng));
      }
    } else {
      images = load_class_directory(data_root, cfg.classes[k], cfg.image_size);
    }
    auto [train, test] = split_and_sample(
        images, static_cast<std::size_t>(cfg.n_sample), split_rng);
    for (auto& img : train) split.train.push_back({std::move(img), positive});
    for (auto& img : test) split.test.push_back({std::move(img), positive});
  }
  return split;
}

}  // namespace spikewave
