#include "ifgi/experiments.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "ifgi/errors.hpp"
#include "ifgi/io.hpp"

namespace ifgi {

namespace {

std::vector<double> grid(int count, double max) {
  if (count < 2) {
    throw InvalidParameter("grid count must be >= 2");
  }
  if (!(max >= 0.0 && max < 1.0)) {
    throw InvalidParameter("loss grid must stay within [0, 1)");
  }
  std::vector<double> values(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    values[static_cast<std::size_t>(i)] = max * i / (count - 1);
  }
  return values;
}

double ratio_at(const ChainParams& params, double alpha, ComparisonMode mode,
                const SweepSpec& spec) {
  if (!spec.exact) {
    return cnr_ratio_large_k(params, alpha, mode);
  }
  const auto j_b = static_cast<long long>(std::lround(alpha * spec.j_p));
  return cnr_ratio(params, spec.j_p, j_b, spec.k_prime, mode);
}

std::ostringstream csv_stream() {
  std::ostringstream out;
  out.precision(12);
  return out;
}

}  // namespace

std::vector<Fig2Row> sweep_fixed_k(const SweepSpec& spec) {
  const auto gamma0 = grid(spec.gamma0_count, spec.gamma0_max);
  std::vector<Fig2Row> rows;
  for (int m : spec.m_values) {
    for (double alpha : spec.alpha_values) {
      for (double g1 : spec.gamma1_list) {
        for (double g0 : gamma0) {
          const ChainParams params(m, g0, g1);
          rows.push_back(
              {m, alpha, g1, g0,
               ratio_at(params, alpha, ComparisonMode::fixed_k, spec)});
        }
      }
    }
  }
  return rows;
}

std::vector<Fig3Row> sweep_fixed_absorption(const SweepSpec& spec) {
  const auto gamma0 = grid(spec.gamma0_count, spec.gamma0_max);
  const auto gamma1 = grid(spec.gamma1_count, spec.gamma1_max);
  std::vector<Fig3Row> rows;
  for (const auto& [m, alpha] : spec.panels) {
    for (double g0 : gamma0) {
      for (double g1 : gamma1) {
        const ChainParams params(m, g0, g1);
        const double weight = absorption_weight(params);
        const double k_over_kprime =
            spec.exact ? static_cast<double>(equal_absorption_measurements(
                             params, spec.k_prime)) /
                             static_cast<double>(spec.k_prime)
                       : 1.0 / weight;
        const double ratio =
            ratio_at(params, alpha, ComparisonMode::fixed_absorption, spec);
        rows.push_back({m, alpha, g0, g1, k_over_kprime, ratio, ratio <= 1.0});
      }
    }
  }
  return rows;
}

std::vector<Fig4Row> sweep_bucket_intensity(const SweepSpec& spec) {
  const double alpha = spec.alpha_values.empty() ? 1.0 : spec.alpha_values.front();
  const auto gamma0 = grid(spec.gamma0_count, spec.gamma0_max);
  const auto gamma1 = grid(spec.gamma1_count, spec.gamma1_max);
  std::vector<Fig4Row> rows;
  for (int m : spec.m_values) {
    for (int detector = 0; detector <= 1; ++detector) {
      for (double g0 : gamma0) {
        for (double g1 : gamma1) {
          const TransferCoefficients tc =
              compute_transfer(ChainParams(m, g0, g1));
          const double ratio =
              detector == 0
                  ? std::norm(tc.chi_p0) + alpha * std::norm(tc.chi_b0)
                  : std::norm(tc.chi_p1) + alpha * std::norm(tc.chi_b1);
          rows.push_back({m, detector, g0, g1, ratio, ratio <= 1e-2,
                          ratio <= 1e-4, ratio <= 1e-6});
        }
      }
    }
  }
  return rows;
}

std::vector<Fig5Row> sweep_visibility(const SweepSpec& spec) {
  const auto gamma0 = grid(spec.gamma0_count, spec.gamma0_max);
  const auto gamma1 = grid(spec.gamma1_count, spec.gamma1_max);
  std::vector<Fig5Row> rows;
  for (int m : spec.m_values) {
    for (double g0 : gamma0) {
      for (double g1 : gamma1) {
        const double v = visibility(compute_transfer(ChainParams(m, g0, g1)));
        rows.push_back({m, g0, g1, v, v < 0.5});
      }
    }
  }
  return rows;
}

std::string to_csv(const std::vector<Fig2Row>& rows) {
  auto out = csv_stream();
  out << "M,alpha,gamma1,gamma0,cnr_ratio\n";
  for (const auto& r : rows) {
    out << r.m << ',' << r.alpha << ',' << r.gamma1 << ',' << r.gamma0 << ','
        << r.cnr_ratio << '\n';
  }
  return out.str();
}

std::string to_csv(const std::vector<Fig3Row>& rows) {
  auto out = csv_stream();
  out << "M,alpha,gamma0,gamma1,K_over_Kprime,cnr_ratio,no_advantage\n";
  for (const auto& r : rows) {
    out << r.m << ',' << r.alpha << ',' << r.gamma0 << ',' << r.gamma1 << ','
        << r.k_over_kprime << ',' << r.cnr_ratio << ','
        << (r.no_advantage ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string to_csv(const std::vector<Fig4Row>& rows) {
  auto out = csv_stream();
  out << "M,i,gamma0,gamma1,ratio,below_1e-2,below_1e-4,below_1e-6\n";
  for (const auto& r : rows) {
    out << r.m << ',' << r.detector << ',' << r.gamma0 << ',' << r.gamma1
        << ',' << r.ratio << ',' << (r.below_1e2 ? 1 : 0) << ','
        << (r.below_1e4 ? 1 : 0) << ',' << (r.below_1e6 ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string to_csv(const std::vector<Fig5Row>& rows) {
  auto out = csv_stream();
  out << "M,gamma0,gamma1,visibility,low_visibility\n";
  for (const auto& r : rows) {
    out << r.m << ',' << r.gamma0 << ',' << r.gamma1 << ',' << r.visibility
        << ',' << (r.low_visibility ? 1 : 0) << '\n';
  }
  return out.str();
}

void run_sweep(const SweepSpec& spec) {
  std::string csv;
  if (spec.figure == "fig2") {
    csv = to_csv(sweep_fixed_k(spec));
  } else if (spec.figure == "fig3") {
    csv = to_csv(sweep_fixed_absorption(spec));
  } else if (spec.figure == "fig4") {
    csv = to_csv(sweep_bucket_intensity(spec));
  } else if (spec.figure == "fig5") {
    csv = to_csv(sweep_visibility(spec));
  } else {
    throw InvalidParameter("unknown figure: " + spec.figure);
  }

  std::filesystem::create_directories(spec.output_dir);
  write_file_atomic(spec.output_dir / (spec.figure + ".csv"), csv);

  nlohmann::json manifest;
  manifest["figure"] = spec.figure;
  manifest["m_values"] = spec.m_values;
  manifest["alpha_values"] = spec.alpha_values;
  manifest["gamma1_list"] = spec.gamma1_list;
  manifest["panels"] = spec.panels;
  manifest["gamma0_count"] = spec.gamma0_count;
  manifest["gamma0_max"] = spec.gamma0_max;
  manifest["gamma1_count"] = spec.gamma1_count;
  manifest["gamma1_max"] = spec.gamma1_max;
  manifest["exact"] = spec.exact;
  manifest["k_prime"] = spec.k_prime;
  manifest["j_p"] = spec.j_p;
  write_file_atomic(spec.output_dir / (spec.figure + "_manifest.json"),
                    manifest.dump(2) + "\n");
}

std::vector<ValidationResult> validate_montecarlo(
    const std::vector<ValidationPoint>& points) {
  std::vector<ValidationResult> results;
  results.reserve(points.size());
  for (const auto& point : points) {
    ValidationResult res;
    res.point = point;

    const BinarySample sample =
        point.alpha == 1.0
            ? synthesize(SamplePattern::checkerboard, point.width, point.height,
                         1.0, point.base_seed)
            : synthesize(SamplePattern::random_mask, point.width, point.height,
                         point.alpha, point.base_seed);
    const TransferCoefficients tc = compute_transfer(point.chain);
    const Contrasts c = contrasts(tc);
    const ExperimentBudget budget{point.shots, point.u,
                                  sample.transparent_count(),
                                  sample.opaque_count()};
    const ImageLevels levels = expected_image_levels(c, budget);
    const BucketMeans buckets = bucket_means(tc, budget);
    res.cnr_analytic = cnr_exact(c, budget);
    res.level_transparent_analytic = levels.transparent;
    res.level_opaque_analytic = levels.opaque;
    res.bucket0_analytic = buckets.d0;
    res.bucket1_analytic = buckets.d1;

    std::vector<double> cnr_values;
    cnr_values.reserve(static_cast<std::size_t>(point.seed_count));
    double sum_lp = 0.0, sum_lb = 0.0, sum_b0 = 0.0, sum_b1 = 0.0;
    double sum_diff = 0.0, sum_diff_se = 0.0;
    for (int s = 0; s < point.seed_count; ++s) {
      SimConfig cfg{point.chain, sample,          point.shots, point.u,
                    point.base_seed + static_cast<std::uint64_t>(s),
                    point.mode,  0};
      const SimResult sim = run_simulation(cfg);
      cnr_values.push_back(sim.report.cnr_empirical);
      sum_lp += sim.report.mean_signal_transparent;
      sum_lb += sim.report.mean_signal_opaque;
      sum_b0 += sim.report.mean_bucket0;
      sum_b1 += sim.report.mean_bucket1;
      sum_diff += sim.report.bucket_diff;
      sum_diff_se += sim.report.bucket_diff_stderr;
    }
    const double n = static_cast<double>(point.seed_count);
    double mean = 0.0, sq = 0.0;
    for (double v : cnr_values) {
      mean += v;
    }
    mean /= n;
    for (double v : cnr_values) {
      sq += (v - mean) * (v - mean);
    }
    res.cnr_empirical_mean = mean;
    res.cnr_empirical_sd = point.seed_count > 1 ? std::sqrt(sq / (n - 1.0)) : 0.0;
    res.cnr_ratio_min = cnr_values.front() / res.cnr_analytic;
    res.cnr_ratio_max = res.cnr_ratio_min;
    for (double v : cnr_values) {
      const double ratio = v / res.cnr_analytic;
      res.cnr_ratio_min = std::min(res.cnr_ratio_min, ratio);
      res.cnr_ratio_max = std::max(res.cnr_ratio_max, ratio);
    }
    res.level_transparent_mean = sum_lp / n;
    res.level_opaque_mean = sum_lb / n;
    res.bucket0_mean = sum_b0 / n;
    res.bucket1_mean = sum_b1 / n;
    res.bucket_diff_mean = sum_diff / n;
    res.bucket_diff_stderr = sum_diff_se / n;

    const auto within = [](double observed, double expected, double rel,
                           double scale) {
      const double tol = std::max(rel * std::abs(expected), rel * scale);
      return std::abs(observed - expected) <= tol;
    };
    const double level_scale =
        std::max(std::abs(res.level_transparent_analytic),
                 std::abs(res.level_opaque_analytic));
    const double bucket_scale =
        std::max(res.bucket0_analytic, res.bucket1_analytic);
    res.pass =
        within(res.cnr_empirical_mean, res.cnr_analytic, 0.05,
               std::abs(res.cnr_analytic)) &&
        res.cnr_ratio_min >= 0.85 && res.cnr_ratio_max <= 1.15 &&
        within(res.level_transparent_mean, res.level_transparent_analytic, 0.05,
               level_scale) &&
        within(res.level_opaque_mean, res.level_opaque_analytic, 0.05,
               level_scale) &&
        within(res.bucket0_mean, res.bucket0_analytic, 0.02, bucket_scale) &&
        within(res.bucket1_mean, res.bucket1_analytic, 0.02, bucket_scale);
    results.push_back(std::move(res));
  }
  return results;
}

std::string validation_to_json(const std::vector<ValidationResult>& results) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& res : results) {
    j.push_back({
        {"point",
         {{"m", res.point.chain.cycles},
          {"gamma0", res.point.chain.gamma0},
          {"gamma1", res.point.chain.gamma1},
          {"alpha", res.point.alpha},
          {"k", res.point.shots},
          {"u", res.point.u},
          {"seed_count", res.point.seed_count},
          {"width", res.point.width},
          {"height", res.point.height},
          {"base_seed", res.point.base_seed}}},
        {"cnr_analytic", res.cnr_analytic},
        {"cnr_empirical_mean", res.cnr_empirical_mean},
        {"cnr_empirical_sd", res.cnr_empirical_sd},
        {"cnr_ratio_min", res.cnr_ratio_min},
        {"cnr_ratio_max", res.cnr_ratio_max},
        {"level_transparent_analytic", res.level_transparent_analytic},
        {"level_transparent_mean", res.level_transparent_mean},
        {"level_opaque_analytic", res.level_opaque_analytic},
        {"level_opaque_mean", res.level_opaque_mean},
        {"bucket0_analytic", res.bucket0_analytic},
        {"bucket0_mean", res.bucket0_mean},
        {"bucket1_analytic", res.bucket1_analytic},
        {"bucket1_mean", res.bucket1_mean},
        {"bucket_diff_mean", res.bucket_diff_mean},
        {"bucket_diff_stderr", res.bucket_diff_stderr},
        {"pass", res.pass},
    });
  }
  return j.dump(2) + "\n";
}

}  // namespace ifgi
