#pragma once

#include <complex>
#include <numbers>
#include <vector>

namespace ifgi {

/// Geometry and loss of the M-stage chain interferometer.
///
/// The chain consists of `cycles` beam splitters with identical reflectivity
/// cos^2(theta), theta = pi/(2*cycles), interleaved with the sample plane and
/// the folding mirrors. gamma0 / gamma1 are the loss probabilities per
/// reflection on the lower / upper path mirrors; all other chain losses are
/// lumped into them.
struct ChainParams {
  int cycles = 1;        // M, number of beam splitters / interaction cycles
  double gamma0 = 0.0;   // lower-path loss probability per reflection
  double gamma1 = 0.0;   // upper-path loss probability per reflection

  ChainParams() = default;
  /// Validates M >= 1 and gamma in [0, 1]; throws InvalidParameter otherwise.
  ChainParams(int cycles_, double gamma0_, double gamma1_);

  double theta() const { return std::numbers::pi / (2.0 * cycles); }
  double eta0() const;  // amplitude reflectivity sqrt(1 - gamma0)
  double eta1() const;  // amplitude reflectivity sqrt(1 - gamma1)
};

/// Field amplitudes on the two chain paths, normalized to unit input
/// injected into the lower path.
struct PathAmplitudes {
  std::complex<double> lower{0.0, 0.0};
  std::complex<double> upper{0.0, 0.0};
};

enum class PixelKind { transparent, opaque };

struct CycleResult {
  PathAmplitudes state;
  std::complex<double> absorbed{0.0, 0.0};
};

/// Detector-plane transfer amplitudes relative to the source operator,
/// for a transparent pixel (chi_p*) and an opaque pixel (chi_b*), plus the
/// per-cycle absorbed amplitudes on an opaque pixel.
struct TransferCoefficients {
  std::complex<double> chi_p0{0.0, 0.0};  // transparent pixel, detector D0
  std::complex<double> chi_p1{0.0, 0.0};  // transparent pixel, detector D1
  std::complex<double> chi_b0{0.0, 0.0};  // opaque pixel, detector D0
  std::complex<double> chi_b1{0.0, 0.0};  // opaque pixel, detector D1 (always 0)
  std::vector<std::complex<double>> chi_abs;  // one entry per cycle
  double absorption_weight = 0.0;             // sum of |chi_abs|^2
};

/// One full interaction cycle: beam-splitter rotation, then sample action on
/// the upper path, then mirror attenuation. For an opaque pixel the returned
/// `absorbed` is the upper-path amplitude removed by the sample.
CycleResult cycle_step(const PathAmplitudes& state, const ChainParams& params,
                       PixelKind kind);

/// Runs the chain once for a transparent and once for an opaque pixel,
/// starting from unit amplitude on the lower path, and collects all chi
/// coefficients. Detection reads the state after the M-th full cycle.
TransferCoefficients compute_transfer(const ChainParams& params);

/// Closed-form total absorption weight sum_m |chi_abs^(m)|^2 =
/// sin^2(theta) * (1 - (eta0 cos theta)^(2M)) / (1 - (eta0 cos theta)^2).
double absorption_weight(const ChainParams& params);

}  // namespace ifgi
