#pragma once

#include <filesystem>
#include <string>

#include "ifgi/montecarlo.hpp"

namespace ifgi {

/// Writes `content` to `path` via a temp file in the same directory followed
/// by an atomic rename.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content);

/// CSV with columns x, y, g0, g1, G.
std::string image_to_csv(const GhostImage& image, const BinarySample& sample);

/// Plain-text PGM (P2, maxval 65535) of the min-max normalized signal.
std::string image_to_pgm(const GhostImage& image, const BinarySample& sample);

/// Single JSON object with the report fields and the config echoed.
std::string report_to_json(const CnrReport& report, const SimConfig& cfg);

}  // namespace ifgi
