#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "ifgi/analytics.hpp"
#include "ifgi/chain.hpp"
#include "ifgi/sample.hpp"

namespace ifgi {

enum class DetectorMode { continuous, poisson };

/// Full description of one simulated acquisition run.
struct SimConfig {
  ChainParams chain;
  BinarySample sample;
  long long shots = 0;  // K
  double u = 0.0;       // half the mean photons per speckle per shot
  std::uint64_t seed = 0;
  DetectorMode mode = DetectorMode::continuous;
  int threads = 0;  // 0 = hardware concurrency
};

/// Detector readings for a single shot: the two bucket totals and the two
/// per-pixel CCD maps.
struct ShotReadout {
  double bucket0 = 0.0;
  double bucket1 = 0.0;
  std::vector<double> ccd0;
  std::vector<double> ccd1;
};

namespace detail {

/// Compensated (Kahan) running sum.
struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    const double y = x - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

}  // namespace detail

struct GhostImage;
class ShotAccumulator;
GhostImage finalize(const ShotAccumulator& acc);

/// Running sums over a stream of shots; merging is associative so shot
/// ranges can be accumulated concurrently and combined afterwards.
class ShotAccumulator {
 public:
  ShotAccumulator() = default;
  explicit ShotAccumulator(int num_pixels);

  void add(const ShotReadout& readout);
  void merge(const ShotAccumulator& other);
  void reset();

  long long count() const { return count_; }
  int num_pixels() const { return static_cast<int>(sum_c0_.size()); }

  double mean_bucket0() const;
  double mean_bucket1() const;
  /// Mean of (bucket1 - bucket0) and the standard error of that mean.
  double mean_bucket_diff() const;
  double bucket_diff_stderr() const;

 private:
  long long count_ = 0;
  detail::KahanSum sum_b0_, sum_b1_;
  detail::KahanSum sum_diff_, sum_diff_sq_;
  std::vector<detail::KahanSum> sum_c0_, sum_c1_;
  std::vector<detail::KahanSum> sum_b0c0_, sum_b1c1_;

  friend GhostImage finalize(const ShotAccumulator& acc);
};

/// Background-subtracted reconstruction: g_i(x) = E[I_i I_ci(x)] -
/// E[I_i] E[I_ci(x)], and the output signal G = g1 - g0.
struct GhostImage {
  std::vector<double> g0;
  std::vector<double> g1;
  std::vector<double> signal;  // g1 - g0, per pixel
  long long shots = 0;
};

/// Empirical image-quality metrics with their analytic counterparts.
struct CnrReport {
  double mean_signal_transparent = 0.0;  // class mean of G over x_p
  double mean_signal_opaque = 0.0;       // class mean of G over x_b
  double var_signal_transparent = 0.0;   // unbiased pixel-ensemble variance
  double var_signal_opaque = 0.0;
  double cnr_empirical = 0.0;
  double cnr_analytic = 0.0;
  double visibility_empirical = 0.0;
  double visibility_analytic = 0.0;
  double mean_bucket0 = 0.0;
  double mean_bucket1 = 0.0;
  double bucket_diff = 0.0;
  double bucket_diff_stderr = 0.0;
};

struct SimResult {
  GhostImage image;
  CnrReport report;
};

/// Per-pixel thermal speckle field for one shot: independent circular complex
/// Gaussians with mean intensity 2u, derived from a stateless counter hash of
/// (seed, shot_index, pixel).
std::vector<std::complex<double>> generate_shot(std::uint64_t seed,
                                                long long shot_index, double u,
                                                int num_pixels);

/// Maps a speckle field through the chain to detector readings. In poisson
/// mode every reading is replaced by an independent Poisson draw with the
/// continuous value as its mean; seed and shot_index key those draws.
ShotReadout detector_readout(std::span<const std::complex<double>> field,
                             const BinarySample& sample,
                             const TransferCoefficients& tc, DetectorMode mode,
                             std::uint64_t seed, long long shot_index);

GhostImage finalize(const ShotAccumulator& acc);

CnrReport empirical_cnr(const GhostImage& image, const BinarySample& sample,
                        const TransferCoefficients& tc,
                        const ExperimentBudget& budget);

/// Runs the full acquisition: K shots, streaming accumulation, finalize,
/// empirical CNR. Deterministic for a fixed seed independent of the thread
/// count (shots are chunked on fixed boundaries and merged in chunk order).
SimResult run_simulation(const SimConfig& cfg);

}  // namespace ifgi
