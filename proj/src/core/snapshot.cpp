#include "spikewave/core/snapshot.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "spikewave/core/error.hpp"

namespace spikewave {

std::string snapshot_to_text(const SynapseBank& bank) {
  const auto& s = bank.shape();
  std::string out;
  out.reserve(bank.all().size() * 24 + 64);
  out += std::to_string(bank.n_features()) + " " + std::to_string(s.rows) +
         " " + std::to_string(s.cols) + " " + std::to_string(s.orientations) +
         "\n";
  char buf[32];
  for (double w : bank.all()) {
    std::snprintf(buf, sizeof buf, "%.17g\n", w);
    out += buf;
  }
  return out;
}

SynapseBank snapshot_from_text(const std::string& text) {
  std::istringstream in(text);
  std::size_t n = 0;
  TensorShape shape;
  if (!(in >> n >> shape.rows >> shape.cols >> shape.orientations)) {
    throw IoError("snapshot header is malformed");
  }
  if (n == 0 || shape.size() == 0) throw IoError("snapshot has zero size");
  SynapseBank bank(n, shape);
  std::string token;
  for (double& w : bank.all()) {
    if (!(in >> token)) throw IoError("snapshot is truncated");
    // strtod handles the full %.17g output including inf/nan spellings.
    char* end = nullptr;
    w = std::strtod(token.c_str(), &end);
    if (end != token.c_str() + token.size()) {
      throw IoError("snapshot has a malformed weight '" + token + "'");
    }
  }
  if (in >> token) throw IoError("snapshot has trailing data");
  return bank;
}

void save_snapshot(const SynapseBank& bank, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write snapshot " + path.string());
  out << snapshot_to_text(bank);
}

SynapseBank load_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read snapshot " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return snapshot_from_text(ss.str());
}

std::string snapshot_filename(int iteration) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "weights_%04d.snap", iteration);
  return buf;
}

std::optional<int> snapshot_iteration(const std::filesystem::path& path) {
  const std::string name = path.filename().string();
  constexpr std::string_view prefix = "weights_";
  constexpr std::string_view suffix = ".snap";
  if (name.size() <= prefix.size() + suffix.size() ||
      !name.starts_with(prefix) || !name.ends_with(suffix)) {
    return std::nullopt;
  }
  const char* first = name.data() + prefix.size();
  const char* last = name.data() + name.size() - suffix.size();
  int value = 0;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) return std::nullopt;
  return value;
}

}  // namespace spikewave
