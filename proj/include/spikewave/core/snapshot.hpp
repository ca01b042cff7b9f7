#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "spikewave/core/types.hpp"

namespace spikewave {

// Portable text snapshot: a header line "n_features rows cols orientations"
// followed by every weight in row-major (feature, row, col, orientation)
// order, one per line, printed with enough digits to round-trip exactly.
std::string snapshot_to_text(const SynapseBank& bank);
SynapseBank snapshot_from_text(const std::string& text);

void save_snapshot(const SynapseBank& bank, const std::filesystem::path& path);
SynapseBank load_snapshot(const std::filesystem::path& path);

// "weights_0100.snap"
std::string snapshot_filename(int iteration);
// Inverse of snapshot_filename; nullopt for anything else.
std::optional<int> snapshot_iteration(const std::filesystem::path& path);

}  // namespace spikewave
