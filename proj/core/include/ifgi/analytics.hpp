#pragma once

#include <cstdint>
#include <vector>

#include "ifgi/chain.hpp"

namespace ifgi {

/// Channel contrasts of the two pixel classes:
/// c_p = |chi_p1|^2 - |chi_p0|^2, c_b = |chi_b0|^2 - |chi_b1|^2.
struct Contrasts {
  double c_p = 0.0;
  double c_b = 0.0;
};

/// Measurement budget. `u` is half the mean source photon number per speckle
/// per shot (the per-speckle mean intensity is 2u).
struct ExperimentBudget {
  long long shots = 0;  // K
  double u = 0.0;
  long long j_p = 0;
  long long j_b = 0;

  double alpha() const;  // j_b / j_p, requires j_p > 0
};

/// Expected reconstructed-image levels: the transparent-class
/// mean and the (negative) opaque-class mean, in photons^2.
struct ImageLevels {
  double transparent = 0.0;  // (K-1)/(2K) * c_p * u^2
  double opaque = 0.0;       // -(K-1)/(2K) * c_b * u^2
};

/// Mean bucket-detector photon numbers per shot.
struct BucketMeans {
  double d0 = 0.0;    // (J_p |chi_p0|^2 + J_b |chi_b0|^2) u
  double d1 = 0.0;    // (J_p |chi_p1|^2 + J_b |chi_b1|^2) u
  double diff = 0.0;  // J_p (c_p - alpha c_b) u  ==  d1 - d0
};

enum class ComparisonMode { fixed_k, fixed_absorption };

/// Result of the loss-tuning solver: the smallest gamma0 where the
/// background-cancellation condition c_p = alpha * c_b holds, plus all roots
/// found on the scan grid and the contrasts at the returned root.
struct GammaRoot {
  double gamma0 = 0.0;
  double c_p = 0.0;
  double c_b = 0.0;
  std::vector<double> all_roots;
};

Contrasts contrasts(const TransferCoefficients& tc);

ImageLevels expected_image_levels(const Contrasts& c,
                                  const ExperimentBudget& budget);

/// Exact CNR:
/// (c_p + c_b) sqrt(K-1) /
///   sqrt(c_p^2 (J_p + 7/2 - 3/K) + c_b^2 (J_b + 7/2 - 3/K)).
double cnr_exact(const Contrasts& c, const ExperimentBudget& budget);

/// Large-K approximation sqrt(K/J_p) (c_p + c_b) / sqrt(c_p^2 + alpha c_b^2).
double cnr_large_k(const Contrasts& c, double shots, double j_p, double alpha);

/// Normalized visibility in [0, 1]; depends only on the chain geometry.
double visibility(const TransferCoefficients& tc);

BucketMeans bucket_means(const TransferCoefficients& tc,
                         const ExperimentBudget& budget);

/// Total photons absorbed by the sample over the whole run:
/// u * K * J_b * absorption_weight.
double total_absorption(const ChainParams& params, long long shots, long long j_b,
                        double u);

/// Number of measurements that delivers the same sample dose as k_prime
/// traditional measurements: floor(k_prime / absorption_weight).
long long equal_absorption_measurements(const ChainParams& params,
                                        long long k_prime);

/// Exact-CNR ratio of this scheme to an ideal traditional device
/// (c_p = 1, c_b = 0, K = k_prime).
double cnr_ratio(const ChainParams& params, long long j_p, long long j_b,
                 long long k_prime, ComparisonMode mode);

/// Large-K limit of the same ratio; K' drops out in fixed_k mode and enters
/// only through 1/sqrt(absorption_weight) in fixed_absorption mode.
double cnr_ratio_large_k(const ChainParams& params, double alpha,
                         ComparisonMode mode);

/// Solves c_p(gamma0) = alpha * c_b(gamma0) on gamma0 in [0, 1) by a
/// 1024-point sign-change scan followed by bisection. Throws NoRoot when the
/// scan finds no sign change.
GammaRoot optimize_gamma0(int cycles, double gamma1, double alpha);

}  // namespace ifgi
