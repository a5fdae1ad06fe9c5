#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "ifgi/analytics.hpp"
#include "ifgi/chain.hpp"
#include "ifgi/montecarlo.hpp"

namespace ifgi {

/// Parameter-sweep description. Defaults cover the standard comparison panels
/// at a 101x101 loss grid over [0, 0.99].
struct SweepSpec {
  std::string figure;  // fig2 | fig3 | fig4 | fig5

  std::vector<int> m_values{5, 10};
  std::vector<double> alpha_values{1.0, 4.0};                    // fig2
  std::vector<double> gamma1_list{0.0, 0.1, 0.2, 0.4};           // fig2
  std::vector<std::pair<int, double>> panels{                    // fig3
      {5, 0.25}, {10, 0.25}, {5, 1.0}, {10, 1.0}, {5, 4.0}, {10, 4.0}};

  int gamma0_count = 101;
  double gamma0_max = 0.99;
  int gamma1_count = 101;
  double gamma1_max = 0.99;

  bool exact = false;        // exact-CNR ratios instead of the large-K limit
  long long k_prime = 10000; // exact mode only
  long long j_p = 512;       // exact mode only; j_b = round(alpha * j_p)

  std::filesystem::path output_dir = ".";
};

struct Fig2Row {
  int m;
  double alpha;
  double gamma1;
  double gamma0;
  double cnr_ratio;
};

struct Fig3Row {
  int m;
  double alpha;
  double gamma0;
  double gamma1;
  double k_over_kprime;
  double cnr_ratio;
  bool no_advantage;  // cnr_ratio <= 1: no gain over the traditional scheme
};

struct Fig4Row {
  int m;
  int detector;  // bucket index i in {0, 1}
  double gamma0;
  double gamma1;
  double ratio;  // <I_i> / <I'_0> = |chi_pi|^2 + alpha |chi_bi|^2
  bool below_1e2;
  bool below_1e4;
  bool below_1e6;
};

struct Fig5Row {
  int m;
  double gamma0;
  double gamma1;
  double visibility;
  bool low_visibility;  // V < 0.5
};

std::vector<Fig2Row> sweep_fixed_k(const SweepSpec& spec);
std::vector<Fig3Row> sweep_fixed_absorption(const SweepSpec& spec);
std::vector<Fig4Row> sweep_bucket_intensity(const SweepSpec& spec);
std::vector<Fig5Row> sweep_visibility(const SweepSpec& spec);

std::string to_csv(const std::vector<Fig2Row>& rows);
std::string to_csv(const std::vector<Fig3Row>& rows);
std::string to_csv(const std::vector<Fig4Row>& rows);
std::string to_csv(const std::vector<Fig5Row>& rows);

/// Runs the sweep named by spec.figure and writes <figure>.csv plus a
/// <figure>_manifest.json echo of the spec into spec.output_dir.
void run_sweep(const SweepSpec& spec);

/// One analytic-vs-empirical cross-check point.
struct ValidationPoint {
  ChainParams chain;
  double alpha = 1.0;
  long long shots = 10000;
  double u = 100.0;
  int seed_count = 5;
  int width = 32;
  int height = 32;
  std::uint64_t base_seed = 1;
  DetectorMode mode = DetectorMode::continuous;
};

struct ValidationResult {
  ValidationPoint point;
  double cnr_analytic = 0.0;
  double cnr_empirical_mean = 0.0;
  double cnr_empirical_sd = 0.0;
  double cnr_ratio_min = 0.0;  // per-seed empirical/analytic extremes
  double cnr_ratio_max = 0.0;
  double level_transparent_analytic = 0.0;
  double level_transparent_mean = 0.0;
  double level_opaque_analytic = 0.0;
  double level_opaque_mean = 0.0;
  double bucket0_analytic = 0.0;
  double bucket0_mean = 0.0;
  double bucket1_analytic = 0.0;
  double bucket1_mean = 0.0;
  double bucket_diff_mean = 0.0;
  double bucket_diff_stderr = 0.0;  // averaged over seeds
  bool pass = false;
};

/// Runs seed_count simulations per point and compares empirical CNR, class
/// means, and bucket means against the closed forms. A point passes when the
/// ensemble means sit within 5% (2% for bucket means) and every per-seed CNR
/// ratio lies in [0.85, 1.15].
std::vector<ValidationResult> validate_montecarlo(
    const std::vector<ValidationPoint>& points);

std::string validation_to_json(const std::vector<ValidationResult>& results);

}  // namespace ifgi
