#include "cli_app.hpp"

#include <complex>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "ifgi/analytics.hpp"
#include "ifgi/chain.hpp"
#include "ifgi/errors.hpp"
#include "ifgi/experiments.hpp"
#include "ifgi/io.hpp"
#include "ifgi/montecarlo.hpp"
#include "ifgi/sample.hpp"

namespace ifgi::cli {

namespace {

nlohmann::json complex_json(const std::complex<double>& z) {
  return {{"re", z.real()}, {"im", z.imag()}};
}

std::filesystem::path default_out_dir() {
  if (const char* env = std::getenv("IFGI_OUT_DIR")) {
    return env;
  }
  return ".";
}

struct ChainFlags {
  int m = 1;
  double gamma0 = 0.0;
  double gamma1 = 0.0;

  void attach(CLI::App* app) {
    app->add_option("--m", m, "Number of interaction cycles M (beam splitters)")
        ->required()
        ->check(CLI::PositiveNumber);
    app->add_option("--gamma0", gamma0,
                    "Lower-path loss probability per reflection, in [0,1]")
        ->check(CLI::Range(0.0, 1.0));
    app->add_option("--gamma1", gamma1,
                    "Upper-path loss probability per reflection, in [0,1]")
        ->check(CLI::Range(0.0, 1.0));
  }

  ChainParams params() const { return {m, gamma0, gamma1}; }
};

nlohmann::json transfer_json(const TransferCoefficients& tc) {
  nlohmann::json chi_abs = nlohmann::json::array();
  for (const auto& amp : tc.chi_abs) {
    chi_abs.push_back(complex_json(amp));
  }
  const Contrasts c = contrasts(tc);
  return {
      {"chi_p0", complex_json(tc.chi_p0)},
      {"chi_p1", complex_json(tc.chi_p1)},
      {"chi_b0", complex_json(tc.chi_b0)},
      {"chi_b1", complex_json(tc.chi_b1)},
      {"chi_abs", chi_abs},
      {"absorption_weight", tc.absorption_weight},
      {"c_p", c.c_p},
      {"c_b", c.c_b},
      {"visibility", visibility(tc)},
  };
}

int run_impl(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{
      "Thermal-light interaction-free ghost imaging: chain transfer "
      "coefficients, closed-form image metrics, Monte Carlo validation, and "
      "figure sweeps"};
  app.require_subcommand(1);

  // transfer
  auto* transfer = app.add_subcommand(
      "transfer", "Compute chain transfer coefficients (JSON to stdout)");
  ChainFlags transfer_chain;
  transfer_chain.attach(transfer);

  // cnr
  auto* cnr = app.add_subcommand(
      "cnr", "Evaluate analytic CNR, image levels, and bucket means");
  ChainFlags cnr_chain;
  cnr_chain.attach(cnr);
  long long cnr_k = 10000;
  long long cnr_jp = 0;
  long long cnr_jb = 0;
  double cnr_u = 100.0;
  cnr->add_option("--k", cnr_k, "Number of measurements K (>= 2)")
      ->check(CLI::Range(2LL, std::numeric_limits<long long>::max()));
  cnr->add_option("--jp", cnr_jp, "Transparent pixel count J_p")
      ->required()
      ->check(CLI::PositiveNumber);
  cnr->add_option("--jb", cnr_jb, "Opaque pixel count J_b")
      ->required()
      ->check(CLI::NonNegativeNumber);
  cnr->add_option("--u", cnr_u,
                  "Half the mean photons per speckle per shot (default 100)")
      ->check(CLI::PositiveNumber);

  // simulate
  auto* simulate = app.add_subcommand(
      "simulate", "Run a seeded Monte Carlo acquisition and write image "
                  "CSV/PGM plus a JSON report");
  ChainFlags sim_chain;
  sim_chain.attach(simulate);
  std::string mask_path;
  std::string pattern = "checkerboard";
  int sim_width = 32;
  int sim_height = 32;
  double sim_alpha = 1.0;
  std::uint64_t mask_seed = 1;
  long long sim_k = 10000;
  double sim_u = 100.0;
  std::uint64_t sim_seed = 1;
  std::string sim_mode = "continuous";
  int sim_threads = 0;
  std::filesystem::path sim_out = default_out_dir();
  simulate->add_option("--mask", mask_path, "Sample mask file (plain PBM P1)");
  simulate->add_option("--pattern", pattern,
                       "Synthesized sample pattern when no mask is given")
      ->check(CLI::IsMember({"checkerboard", "half_plane", "random"}));
  simulate->add_option("--width", sim_width, "Synthesized sample width, pixels")
      ->check(CLI::PositiveNumber);
  simulate
      ->add_option("--height", sim_height, "Synthesized sample height, pixels")
      ->check(CLI::PositiveNumber);
  simulate
      ->add_option("--alpha", sim_alpha,
                   "Target opaque-to-transparent ratio J_b/J_p")
      ->check(CLI::NonNegativeNumber);
  simulate->add_option("--mask-seed", mask_seed,
                       "Seed for the synthesized random mask");
  simulate->add_option("--k", sim_k, "Number of measurements K (>= 2)")
      ->check(CLI::Range(2LL, std::numeric_limits<long long>::max()));
  simulate
      ->add_option("--u", sim_u,
                   "Half the mean photons per speckle per shot (default 100)")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim_seed, "Simulation RNG seed");
  simulate->add_option("--mode", sim_mode, "Detector model")
      ->check(CLI::IsMember({"continuous", "poisson"}));
  simulate->add_option("--threads", sim_threads,
                       "Worker threads (0 = hardware concurrency)")
      ->check(CLI::NonNegativeNumber);
  simulate->add_option("--out", sim_out,
                       "Output directory (default $IFGI_OUT_DIR or .)");

  // sweep
  auto* sweep = app.add_subcommand(
      "sweep", "Generate a comparison-figure data grid as CSV");
  SweepSpec spec;
  spec.output_dir = default_out_dir();
  sweep->add_option("--figure", spec.figure, "Which sweep to run")
      ->required()
      ->check(CLI::IsMember({"fig2", "fig3", "fig4", "fig5"}));
  sweep->add_option("--m", spec.m_values, "M values (fig2/fig4/fig5)");
  sweep->add_option("--alpha", spec.alpha_values,
                    "Alpha values (fig2; first value used for fig4)");
  sweep->add_option("--gamma1-values", spec.gamma1_list,
                    "Discrete gamma1 curve values (fig2)");
  sweep->add_option("--gamma0-count", spec.gamma0_count, "gamma0 grid points")
      ->check(CLI::Range(2, 100000));
  sweep->add_option("--gamma0-max", spec.gamma0_max, "gamma0 grid upper end")
      ->check(CLI::Range(0.0, 0.999999));
  sweep->add_option("--gamma1-count", spec.gamma1_count,
                    "gamma1 grid points (fig3/fig4/fig5)")
      ->check(CLI::Range(2, 100000));
  sweep->add_option("--gamma1-max", spec.gamma1_max, "gamma1 grid upper end")
      ->check(CLI::Range(0.0, 0.999999));
  sweep->add_flag("--exact", spec.exact,
                  "Use exact finite-K CNR ratios instead of the large-K limit");
  sweep->add_option("--kprime", spec.k_prime,
                    "Traditional-scheme measurement count (exact mode)")
      ->check(CLI::Range(2LL, std::numeric_limits<long long>::max()));
  sweep->add_option("--jp", spec.j_p, "Transparent pixel count (exact mode)")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--out", spec.output_dir,
                    "Output directory (default $IFGI_OUT_DIR or .)");

  // optimize
  auto* optimize = app.add_subcommand(
      "optimize", "Solve the background-cancellation loss gamma0*");
  int opt_m = 10;
  double opt_gamma1 = 0.0;
  double opt_alpha = 1.0;
  optimize->add_option("--m", opt_m, "Number of interaction cycles M (>= 2)")
      ->required()
      ->check(CLI::Range(2, std::numeric_limits<int>::max()));
  optimize
      ->add_option("--gamma1", opt_gamma1,
                   "Upper-path loss probability per reflection, in [0,1]")
      ->check(CLI::Range(0.0, 1.0));
  optimize
      ->add_option("--alpha", opt_alpha,
                   "Opaque-to-transparent pixel ratio J_b/J_p (> 0)")
      ->required()
      ->check(CLI::PositiveNumber);

  try {
    // CLI11 consumes the vector overload in reverse order.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "argument error: " << e.what() << "\n";
    return 2;
  }

  if (transfer->parsed()) {
    const TransferCoefficients tc = compute_transfer(transfer_chain.params());
    out << transfer_json(tc).dump(2) << "\n";
    err << "transfer: M=" << transfer_chain.m
        << " absorption_weight=" << tc.absorption_weight << "\n";
    return 0;
  }

  if (cnr->parsed()) {
    const TransferCoefficients tc = compute_transfer(cnr_chain.params());
    const Contrasts c = contrasts(tc);
    const ExperimentBudget budget{cnr_k, cnr_u, cnr_jp, cnr_jb};
    const ImageLevels levels = expected_image_levels(c, budget);
    const BucketMeans buckets = bucket_means(tc, budget);
    nlohmann::json j = {
        {"cnr", cnr_exact(c, budget)},
        {"cnr_large_k", cnr_large_k(c, static_cast<double>(cnr_k),
                                    static_cast<double>(cnr_jp),
                                    budget.alpha())},
        {"c_p", c.c_p},
        {"c_b", c.c_b},
        {"level_transparent", levels.transparent},
        {"level_opaque", levels.opaque},
        {"bucket0_mean", buckets.d0},
        {"bucket1_mean", buckets.d1},
        {"bucket_diff", buckets.diff},
        {"visibility", visibility(tc)},
        {"total_absorption",
         total_absorption(cnr_chain.params(), cnr_k, cnr_jb, cnr_u)},
    };
    const bool traditional =
        cnr_chain.m == 1 && cnr_chain.gamma0 == 0.0 && cnr_chain.gamma1 == 0.0;
    if (traditional) {
      j["note"] = "traditional reduction: M=1 ideal chain, C_p=1, C_b=0";
    }
    out << j.dump(2) << "\n";
    err << "cnr=" << j["cnr"].get<double>()
        << (traditional ? " (traditional reduction)" : "") << "\n";
    return 0;
  }

  if (simulate->parsed()) {
    std::optional<BinarySample> sample;
    if (!mask_path.empty()) {
      sample = load_mask(mask_path);
    } else if (pattern == "checkerboard") {
      sample = synthesize(SamplePattern::checkerboard, sim_width, sim_height,
                          sim_alpha, mask_seed);
    } else if (pattern == "half_plane") {
      sample = synthesize(SamplePattern::half_plane, sim_width, sim_height,
                          sim_alpha, mask_seed);
    } else {
      sample = synthesize(SamplePattern::random_mask, sim_width, sim_height,
                          sim_alpha, mask_seed);
    }
    const SimConfig cfg{sim_chain.params(),
                        *sample,
                        sim_k,
                        sim_u,
                        sim_seed,
                        sim_mode == "poisson" ? DetectorMode::poisson
                                              : DetectorMode::continuous,
                        sim_threads};
    const SimResult result = run_simulation(cfg);
    std::filesystem::create_directories(sim_out);
    write_file_atomic(sim_out / "image.csv",
                      image_to_csv(result.image, cfg.sample));
    write_file_atomic(sim_out / "image.pgm",
                      image_to_pgm(result.image, cfg.sample));
    write_file_atomic(sim_out / "report.json",
                      report_to_json(result.report, cfg));
    err << "simulate: K=" << sim_k << " J=" << cfg.sample.total()
        << " cnr_empirical=" << result.report.cnr_empirical
        << " cnr_analytic=" << result.report.cnr_analytic << "\n"
        << "wrote " << (sim_out / "image.csv").string() << ", image.pgm, "
        << "report.json\n";
    return 0;
  }

  if (sweep->parsed()) {
    run_sweep(spec);
    err << "sweep " << spec.figure << ": wrote "
        << (spec.output_dir / (spec.figure + ".csv")).string() << "\n";
    return 0;
  }

  if (optimize->parsed()) {
    const GammaRoot root = optimize_gamma0(opt_m, opt_gamma1, opt_alpha);
    nlohmann::json j = {
        {"gamma0_star", root.gamma0},
        {"all_roots", root.all_roots},
        {"c_p", root.c_p},
        {"c_b", root.c_b},
        {"cnr_max_over_sqrt_k_jp", std::sqrt(1.0 + 1.0 / opt_alpha)},
    };
    out << j.dump(2) << "\n";
    err << "optimize: gamma0*=" << root.gamma0 << " (" << root.all_roots.size()
        << " root(s) on scan grid)\n";
    return 0;
  }

  err << "no subcommand selected\n";
  return 2;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  try {
    return run_impl(args, out, err);
  } catch (const InvalidParameter& e) {
    err << "invalid argument: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace ifgi::cli
