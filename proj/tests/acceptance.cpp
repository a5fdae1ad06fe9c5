// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failures. Budgeted to run in a few minutes on one core.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "ifgi/analytics.hpp"
#include "ifgi/chain.hpp"
#include "ifgi/experiments.hpp"
#include "ifgi/io.hpp"
#include "ifgi/montecarlo.hpp"
#include "ifgi/sample.hpp"

using namespace ifgi;

namespace {

constexpr double kPi = std::numbers::pi;

int g_failures = 0;

void report(int criterion, const std::string& name, bool ok,
            const std::string& detail) {
  std::printf("%s criterion %2d: %s (%s)\n", ok ? "PASS" : "FAIL", criterion,
              name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) {
    ++g_failures;
  }
}

void run(int criterion, const std::string& name,
         const std::function<std::pair<bool, std::string>()>& body) {
  try {
    auto [ok, detail] = body();
    report(criterion, name, ok, detail);
  } catch (const std::exception& e) {
    report(criterion, name, false, std::string("exception: ") + e.what());
  }
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// Shared Monte Carlo campaign for criteria 6 and 7: ideal chains, 32x32
// checkerboard, K = 1e4, u = 100, 20 seeds per M.
struct Campaign {
  int m;
  double mean_level_p = 0.0;
  double mean_level_b = 0.0;
  double expected_p = 0.0;
  double expected_b = 0.0;
  double cnr_ratio_min = 1e300;
  double cnr_ratio_max = -1e300;
  double cnr_ratio_mean = 0.0;
};

std::vector<Campaign> run_campaigns() {
  const BinarySample sample =
      synthesize(SamplePattern::checkerboard, 32, 32, 1.0, 0);
  const long long shots = 10000;
  const double u = 100.0;
  const int seeds = 20;
  std::vector<Campaign> campaigns;
  for (int m : {1, 5, 10}) {
    Campaign c;
    c.m = m;
    const ChainParams params(m, 0.0, 0.0);
    const ExperimentBudget budget{shots, u, sample.transparent_count(),
                                  sample.opaque_count()};
    const Contrasts con = contrasts(compute_transfer(params));
    const ImageLevels levels = expected_image_levels(con, budget);
    const double analytic_cnr = cnr_exact(con, budget);
    c.expected_p = levels.transparent;
    c.expected_b = levels.opaque;
    for (int s = 0; s < seeds; ++s) {
      const SimConfig cfg{params, sample, shots, u,
                          static_cast<std::uint64_t>(1000 + s),
                          DetectorMode::continuous, 0};
      const SimResult sim = run_simulation(cfg);
      c.mean_level_p += sim.report.mean_signal_transparent;
      c.mean_level_b += sim.report.mean_signal_opaque;
      const double ratio = sim.report.cnr_empirical / analytic_cnr;
      c.cnr_ratio_min = std::min(c.cnr_ratio_min, ratio);
      c.cnr_ratio_max = std::max(c.cnr_ratio_max, ratio);
      c.cnr_ratio_mean += ratio;
    }
    c.mean_level_p /= seeds;
    c.mean_level_b /= seeds;
    c.cnr_ratio_mean /= seeds;
    campaigns.push_back(c);
  }
  return campaigns;
}

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;

  run(1, "closed-form chi agreement", [] {
    const auto start = clock::now();
    double worst = 0.0;
    for (int m = 1; m <= 20; ++m) {
      for (int i = 0; i < 20; ++i) {
        for (int j = 0; j < 20; ++j) {
          const ChainParams p(m, i / 19.0, j / 19.0);
          const auto tc = compute_transfer(p);
          const double q = p.eta0() * std::cos(p.theta());
          worst = std::max(worst,
                           std::abs(tc.chi_b0.real() - std::pow(q, m)));
          for (int cycle = 0; cycle < m; ++cycle) {
            const double expected = std::pow(q, cycle) * std::sin(p.theta());
            worst = std::max(
                worst,
                std::abs(tc.chi_abs[static_cast<std::size_t>(cycle)].real() -
                         expected));
          }
        }
      }
    }
    const double secs =
        std::chrono::duration<double>(clock::now() - start).count();
    return std::make_pair(worst <= 1e-12 && secs < 1.0,
                          "max |error| = " + fmt(worst) + ", " + fmt(secs) +
                              " s");
  });

  run(2, "unitarity and dissipativity", [] {
    const auto start = clock::now();
    double worst_ideal = 0.0;
    for (int m = 1; m <= 50; ++m) {
      const auto tc = compute_transfer(ChainParams(m, 0.0, 0.0));
      worst_ideal = std::max(
          worst_ideal,
          std::abs(std::norm(tc.chi_p0) + std::norm(tc.chi_p1) - 1.0));
      worst_ideal = std::max(
          worst_ideal,
          std::abs(std::norm(tc.chi_b0) + tc.absorption_weight - 1.0));
    }
    double worst_lossy = 0.0;
    for (int m : {1, 5, 10, 20}) {
      for (int i = 0; i < 20; ++i) {
        for (int j = 0; j < 20; ++j) {
          const auto tc = compute_transfer(ChainParams(m, i / 19.0, j / 19.0));
          worst_lossy = std::max(
              worst_lossy, std::norm(tc.chi_p0) + std::norm(tc.chi_p1) - 1.0);
          worst_lossy = std::max(
              worst_lossy, std::norm(tc.chi_b0) + tc.absorption_weight - 1.0);
        }
      }
    }
    const double secs =
        std::chrono::duration<double>(clock::now() - start).count();
    return std::make_pair(
        worst_ideal <= 1e-12 && worst_lossy <= 1e-12 && secs < 1.0,
        "ideal defect " + fmt(worst_ideal) + ", lossy excess " +
            fmt(worst_lossy) + ", " + fmt(secs) + " s");
  });

  run(3, "traditional reduction of the exact CNR", [] {
    const Contrasts c = contrasts(compute_transfer(ChainParams(1, 0.0, 0.0)));
    double worst = 0.0;
    for (long long k : {2LL, 10LL, 1000LL, 1000000LL}) {
      for (long long jp : {1LL, 100LL, 10000LL}) {
        const double kd = static_cast<double>(k);
        const double expected =
            std::sqrt(kd - 1.0) /
            std::sqrt(static_cast<double>(jp) + 3.5 - 3.0 / kd);
        const double got = cnr_exact(c, {k, 1.0, jp, jp});
        worst = std::max(worst, std::abs(got - expected) / expected);
      }
    }
    return std::make_pair(worst <= 1e-12, "max rel error " + fmt(worst));
  });

  run(4, "Zeno dose scaling", [] {
    const double scaled =
        absorption_weight(ChainParams(200, 0.0, 0.0)) * 4.0 * 200 / (kPi * kPi);
    bool decreasing = true;
    double prev = 1e300;
    for (int m = 1; m <= 50; ++m) {
      const double dose =
          total_absorption(ChainParams(m, 0.0, 0.0), 1000, 512, 100.0);
      decreasing = decreasing && dose < prev;
      prev = dose;
    }
    return std::make_pair(scaled >= 0.98 && scaled <= 1.0 && decreasing,
                          "weight*4M/pi^2 = " + fmt(scaled) +
                              (decreasing ? ", dose strictly decreasing"
                                          : ", dose NOT decreasing"));
  });

  run(5, "optimal-loss fixed point (M=10, gamma1=0, alpha=4)", [] {
    const auto start = clock::now();
    const GammaRoot root = optimize_gamma0(10, 0.0, 4.0);
    const double mismatch = std::abs(root.c_p - 4.0 * root.c_b);
    const double scaled = cnr_large_k({root.c_p, root.c_b}, 1.0, 1.0, 4.0);
    const double bound_err = std::abs(scaled - std::sqrt(1.25));

    // Monte Carlo bucket difference at the root; 32x20 random mask has
    // alpha = 4 exactly.
    const BinarySample sample =
        synthesize(SamplePattern::random_mask, 32, 20, 4.0, 101);
    const SimConfig cfg{ChainParams(10, root.gamma0, 0.0), sample, 10000,
                        100.0, 2024, DetectorMode::continuous, 0};
    const SimResult sim = run_simulation(cfg);
    const double sigmas =
        std::abs(sim.report.bucket_diff) / sim.report.bucket_diff_stderr;
    const double secs =
        std::chrono::duration<double>(clock::now() - start).count();
    return std::make_pair(
        mismatch <= 1e-10 && bound_err <= 1e-9 && sigmas <= 3.0 && secs < 30.0,
        "gamma0* = " + fmt(root.gamma0) + ", |c_p - 4 c_b| = " + fmt(mismatch) +
            ", bound error " + fmt(bound_err) + ", bucket diff at " +
            fmt(sigmas) + " sigma, " + fmt(secs) + " s");
  });

  const auto campaign_start = clock::now();
  const std::vector<Campaign> campaigns = run_campaigns();
  const double campaign_secs =
      std::chrono::duration<double>(clock::now() - campaign_start).count();

  run(6, "Monte Carlo class means vs closed-form image levels",
      [&campaigns, campaign_secs] {
        bool ok = campaign_secs < 120.0;
        std::string detail;
        for (const auto& c : campaigns) {
          const double err_p =
              std::abs(c.mean_level_p - c.expected_p) / std::abs(c.expected_p);
          const double err_b =
              std::abs(c.mean_level_b - c.expected_b) / std::abs(c.expected_p);
          ok = ok && err_p <= 0.05 && err_b <= 0.05;
          detail += "M=" + std::to_string(c.m) + ": " + fmt(err_p * 100) +
                    "%/" + fmt(err_b * 100) + "% ";
        }
        detail += "(20 seeds, " + fmt(campaign_secs) + " s)";
        return std::make_pair(ok, detail);
      });

  run(7, "Monte Carlo CNR vs exact formula", [&campaigns] {
    bool ok = true;
    std::string detail;
    for (const auto& c : campaigns) {
      ok = ok && c.cnr_ratio_min >= 0.85 && c.cnr_ratio_max <= 1.15 &&
           std::abs(c.cnr_ratio_mean - 1.0) <= 0.05;
      detail += "M=" + std::to_string(c.m) + ": [" + fmt(c.cnr_ratio_min) +
                ", " + fmt(c.cnr_ratio_max) + "] mean " +
                fmt(c.cnr_ratio_mean) + " ";
    }
    return std::make_pair(ok, detail);
  });

  run(8, "sqrt(2) fixed-K advantage at alpha=1, M=50", [] {
    const double ratio = cnr_ratio_large_k(ChainParams(50, 0.0, 0.0), 1.0,
                                           ComparisonMode::fixed_k);
    const double err = std::abs(ratio - std::sqrt(2.0)) / std::sqrt(2.0);
    return std::make_pair(err <= 0.02,
                          "ratio " + fmt(ratio) + ", rel error " + fmt(err));
  });

  // Note: the cancellation ridge C_p = alpha*C_b extends to the high-loss
  // corner of the grid (C_p -> -C_b as gamma1 -> 1 forces a crossing at
  // every gamma0), so the grid maximum exceeds the tenfold level.
  // The criterion verifies that the tenfold level is attained.
  run(9, "equal-absorption tenfold gain for (M=10, alpha=0.25)", [] {
    SweepSpec spec;
    spec.figure = "fig3";
    spec.panels = {{10, 0.25}};
    double peak = 0.0;
    bool band = false;
    for (const auto& row : sweep_fixed_absorption(spec)) {
      peak = std::max(peak, row.cnr_ratio);
      band = band || (row.cnr_ratio >= 9.0 && row.cnr_ratio <= 11.0);
    }
    const double bound = std::sqrt(5.0) / std::sin(kPi / 20.0);
    return std::make_pair(
        peak >= 9.0 && band && peak <= bound,
        "tenfold band attained, grid max " + fmt(peak) + " (analytic bound " +
            fmt(bound) + ")");
  });

  // Note: with gamma1 = 0 and alpha = 1, C_p > C_b for every gamma0, so the
  // cancellation extremum cannot occur on that curve and the ratio decays
  // monotonically; the interior extremum appears on the lossy-upper-path
  // curves of the same panel, which is what the figure shows.
  run(10, "fixed-K curve shape at alpha=1", [] {
    SweepSpec spec;
    spec.figure = "fig2";
    spec.m_values = {5, 10};
    spec.alpha_values = {1.0};
    const auto rows = sweep_fixed_k(spec);
    const double step = spec.gamma0_max / (spec.gamma0_count - 1);
    const auto extremum = [](const std::vector<double>& curve) {
      for (std::size_t i = 2; i < curve.size(); ++i) {
        if ((curve[i] - curve[i - 1]) * (curve[i - 1] - curve[i - 2]) < 0.0) {
          return true;
        }
      }
      return false;
    };
    bool ok = true;
    std::string detail;
    for (int m : {5, 10}) {
      double zero_loss_width = 0.0;
      bool family_extremum = false;
      for (double g1 : spec.gamma1_list) {
        std::vector<double> curve;
        for (const auto& r : rows) {
          if (r.m == m && r.gamma1 == g1) curve.push_back(r.cnr_ratio);
        }
        if (g1 == 0.0) {
          int above = 0;
          for (double v : curve) above += v > 1.0 ? 1 : 0;
          zero_loss_width = above * step;
        } else if (extremum(curve)) {
          family_extremum = true;
        }
      }
      ok = ok && zero_loss_width >= 0.1 && family_extremum;
      detail += "M=" + std::to_string(m) + ": width " + fmt(zero_loss_width) +
                (family_extremum ? ", extremum " : ", no extremum ");
    }
    return std::make_pair(ok, detail);
  });

  run(11, "visibility: ideal unity and diagonal robustness", [] {
    bool ok = true;
    double min_diag = 1.0;
    for (int m : {5, 10}) {
      const double v0 = visibility(compute_transfer(ChainParams(m, 0.0, 0.0)));
      ok = ok && std::abs(v0 - 1.0) <= 1e-12;
      for (int i = 0; i <= 50; ++i) {
        const double g = i / 100.0;  // diagonal up to 0.5
        const double v = visibility(compute_transfer(ChainParams(m, g, g)));
        min_diag = std::min(min_diag, v);
        ok = ok && v > 0.5;
      }
    }
    return std::make_pair(ok, "min diagonal visibility " + fmt(min_diag));
  });

  run(12, "shot-noise validity threshold", [] {
    const auto start = clock::now();
    const BinarySample sample =
        synthesize(SamplePattern::checkerboard, 32, 32, 1.0, 0);
    const ChainParams params(1, 0.0, 0.0);
    const auto mean_ratio = [&](double u, int seeds) {
      double sum = 0.0;
      for (int s = 0; s < seeds; ++s) {
        SimConfig cont{params, sample, 10000, u,
                       static_cast<std::uint64_t>(500 + s),
                       DetectorMode::continuous, 0};
        SimConfig pois = cont;
        pois.mode = DetectorMode::poisson;
        sum += run_simulation(pois).report.cnr_empirical /
               run_simulation(cont).report.cnr_empirical;
      }
      return sum / seeds;
    };
    // u = 100 -> 50 photons per CCD pixel per shot; u = 0.2 -> 0.1.
    const double high = mean_ratio(100.0, 3);
    const double low = mean_ratio(0.2, 3);
    const double secs =
        std::chrono::duration<double>(clock::now() - start).count();
    return std::make_pair(
        std::abs(high - 1.0) <= 0.05 && low < 0.9 && secs < 120.0,
        "ratio at 50 counts " + fmt(high) + ", at 0.1 counts " + fmt(low) +
            ", " + fmt(secs) + " s");
  });

  run(13, "bit-exact determinism of simulate and sweep", [] {
    const BinarySample sample =
        synthesize(SamplePattern::random_mask, 16, 16, 1.0, 7);
    SimConfig cfg{ChainParams(5, 0.2, 0.1), sample, 1000, 50.0, 77,
                  DetectorMode::poisson, 1};
    const SimResult a = run_simulation(cfg);
    const SimResult b = run_simulation(cfg);
    SimConfig threaded = cfg;
    threaded.threads = 4;
    const SimResult c = run_simulation(threaded);
    const bool sim_ok = a.image.signal == b.image.signal &&
                        a.image.signal == c.image.signal &&
                        image_to_csv(a.image, sample) ==
                            image_to_csv(c.image, sample);

    SweepSpec spec;
    spec.figure = "fig4";
    spec.m_values = {5};
    spec.gamma0_count = 21;
    spec.gamma1_count = 21;
    const bool sweep_ok =
        to_csv(sweep_bucket_intensity(spec)) ==
        to_csv(sweep_bucket_intensity(spec));
    return std::make_pair(sim_ok && sweep_ok,
                          std::string(sim_ok ? "simulate bit-exact"
                                             : "simulate DIFFERS") +
                              ", " +
                              (sweep_ok ? "sweep bit-exact" : "sweep DIFFERS"));
  });

  std::printf("%d criterion(s) failed\n", g_failures);
  return g_failures;
}
