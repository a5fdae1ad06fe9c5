#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace ifgi {

/// Discretized binary sample plane. One pixel corresponds to one speckle of
/// the source and one CCD cell. `true` marks an opaque pixel.
class BinarySample {
 public:
  BinarySample(int width, int height, std::vector<std::uint8_t> opaque_mask);

  int width() const { return width_; }
  int height() const { return height_; }
  int total() const { return width_ * height_; }          // J
  int opaque_count() const { return opaque_count_; }      // J_b
  int transparent_count() const {                         // J_p
    return total() - opaque_count_;
  }
  /// J_b / J_p; requires at least one transparent pixel.
  double alpha() const;

  bool opaque(int index) const { return mask_[static_cast<std::size_t>(index)] != 0; }
  bool opaque(int x, int y) const { return opaque(y * width_ + x); }
  const std::vector<std::uint8_t>& mask() const { return mask_; }

  bool operator==(const BinarySample& other) const = default;

 private:
  int width_;
  int height_;
  int opaque_count_;
  std::vector<std::uint8_t> mask_;  // row-major, 1 = opaque
};

/// Builds a sample from a rectangular boolean grid (true = opaque).
BinarySample from_grid(const std::vector<std::vector<bool>>& grid);

enum class SamplePattern { checkerboard, half_plane, random_mask };

/// Deterministic test-fixture generator. For `random_mask`, exactly
/// round(J * alpha / (1 + alpha)) opaque pixels are placed by a seeded
/// shuffle; `checkerboard` ignores alpha and seed, `half_plane` fills the
/// rightmost columns opaque to approximate alpha.
BinarySample synthesize(SamplePattern pattern, int width, int height,
                        double alpha_target, std::uint64_t seed);

/// Plain-text PBM (P1) I/O; bit 1 maps to opaque.
BinarySample load_mask(const std::filesystem::path& path);
BinarySample parse_pbm(const std::string& text);
void save_mask(const BinarySample& sample, const std::filesystem::path& path);
std::string to_pbm(const BinarySample& sample);

}  // namespace ifgi
