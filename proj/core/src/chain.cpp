#include "ifgi/chain.hpp"

#include <cmath>

#include "ifgi/errors.hpp"

namespace ifgi {

ChainParams::ChainParams(int cycles_, double gamma0_, double gamma1_)
    : cycles(cycles_), gamma0(gamma0_), gamma1(gamma1_) {
  if (cycles < 1) {
    throw InvalidParameter("cycles must be >= 1");
  }
  if (!(gamma0 >= 0.0 && gamma0 <= 1.0)) {
    throw InvalidParameter("gamma0 must lie in [0, 1]");
  }
  if (!(gamma1 >= 0.0 && gamma1 <= 1.0)) {
    throw InvalidParameter("gamma1 must lie in [0, 1]");
  }
}

double ChainParams::eta0() const { return std::sqrt(1.0 - gamma0); }

double ChainParams::eta1() const { return std::sqrt(1.0 - gamma1); }

CycleResult cycle_step(const PathAmplitudes& state, const ChainParams& params,
                       PixelKind kind) {
  const double c = std::cos(params.theta());
  const double s = std::sin(params.theta());

  PathAmplitudes out;
  out.lower = state.lower * c - state.upper * s;
  out.upper = state.lower * s + state.upper * c;

  std::complex<double> absorbed{0.0, 0.0};
  if (kind == PixelKind::opaque) {
    absorbed = out.upper;
    out.upper = 0.0;
  }

  out.lower *= params.eta0();
  out.upper *= params.eta1();
  return {out, absorbed};
}

TransferCoefficients compute_transfer(const ChainParams& params) {
  TransferCoefficients tc;
  tc.chi_abs.reserve(static_cast<std::size_t>(params.cycles));

  PathAmplitudes transparent{1.0, 0.0};
  PathAmplitudes opaque{1.0, 0.0};
  for (int m = 0; m < params.cycles; ++m) {
    transparent = cycle_step(transparent, params, PixelKind::transparent).state;
    auto [next, absorbed] = cycle_step(opaque, params, PixelKind::opaque);
    opaque = next;
    tc.chi_abs.push_back(absorbed);
  }

  tc.chi_p0 = transparent.lower;
  tc.chi_p1 = transparent.upper;
  tc.chi_b0 = opaque.lower;
  tc.chi_b1 = opaque.upper;  // identically zero: the sample empties the upper path

  double weight = 0.0;
  for (const auto& amp : tc.chi_abs) {
    weight += std::norm(amp);
  }
  tc.absorption_weight = weight;
  return tc;
}

double absorption_weight(const ChainParams& params) {
  const double q = params.eta0() * std::cos(params.theta());
  const double s2 = std::sin(params.theta()) * std::sin(params.theta());
  // q < 1 always holds for M >= 1 since cos(theta) < 1.
  const double q2 = q * q;
  return s2 * (1.0 - std::pow(q2, params.cycles)) / (1.0 - q2);
}

}  // namespace ifgi
