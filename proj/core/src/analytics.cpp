#include "ifgi/analytics.hpp"

#include <cmath>

#include "ifgi/errors.hpp"

namespace ifgi {

namespace {

void check_budget(const ExperimentBudget& budget) {
  if (budget.shots < 1) {
    throw InvalidParameter("shots must be >= 1");
  }
  if (!(budget.u > 0.0)) {
    throw InvalidParameter("u must be > 0");
  }
  if (budget.j_p < 0 || budget.j_b < 0) {
    throw InvalidParameter("pixel counts must be >= 0");
  }
}

}  // namespace

double ExperimentBudget::alpha() const {
  if (j_p < 1) {
    throw InvalidParameter("alpha undefined: j_p must be >= 1");
  }
  return static_cast<double>(j_b) / static_cast<double>(j_p);
}

Contrasts contrasts(const TransferCoefficients& tc) {
  return {std::norm(tc.chi_p1) - std::norm(tc.chi_p0),
          std::norm(tc.chi_b0) - std::norm(tc.chi_b1)};
}

ImageLevels expected_image_levels(const Contrasts& c,
                                  const ExperimentBudget& budget) {
  check_budget(budget);
  const double k = static_cast<double>(budget.shots);
  const double prefactor = (k - 1.0) / (2.0 * k) * budget.u * budget.u;
  return {prefactor * c.c_p, -prefactor * c.c_b};
}

double cnr_exact(const Contrasts& c, const ExperimentBudget& budget) {
  check_budget(budget);
  if (budget.shots < 2) {
    throw InvalidParameter("cnr_exact needs shots >= 2");
  }
  if (budget.j_p < 1) {
    throw InvalidParameter("cnr_exact needs j_p >= 1");
  }
  if (c.c_p == 0.0 && c.c_b == 0.0) {
    throw DegenerateContrast("both contrasts vanish");
  }
  const double k = static_cast<double>(budget.shots);
  const double tail = 3.5 - 3.0 / k;
  const double denom =
      c.c_p * c.c_p * (static_cast<double>(budget.j_p) + tail) +
      c.c_b * c.c_b * (static_cast<double>(budget.j_b) + tail);
  return (c.c_p + c.c_b) * std::sqrt(k - 1.0) / std::sqrt(denom);
}

double cnr_large_k(const Contrasts& c, double shots, double j_p, double alpha) {
  if (!(shots >= 1.0) || !(j_p >= 1.0) || !(alpha >= 0.0)) {
    throw InvalidParameter("cnr_large_k needs shots >= 1, j_p >= 1, alpha >= 0");
  }
  if (c.c_p == 0.0 && c.c_b == 0.0) {
    throw DegenerateContrast("both contrasts vanish");
  }
  return std::sqrt(shots / j_p) * (c.c_p + c.c_b) /
         std::sqrt(c.c_p * c.c_p + alpha * c.c_b * c.c_b);
}

double visibility(const TransferCoefficients& tc) {
  const double p0 = std::norm(tc.chi_p0);
  const double p1 = std::norm(tc.chi_p1);
  const double b0 = std::norm(tc.chi_b0);
  const double b1 = std::norm(tc.chi_b1);
  const double total = p0 + p1 + b0 + b1;
  if (total == 0.0) {
    throw AllDark("all transfer amplitudes vanish");
  }
  return std::abs(p1 + b0 - b1 - p0) / total;
}

BucketMeans bucket_means(const TransferCoefficients& tc,
                         const ExperimentBudget& budget) {
  check_budget(budget);
  const double jp = static_cast<double>(budget.j_p);
  const double jb = static_cast<double>(budget.j_b);
  BucketMeans out;
  out.d0 = (jp * std::norm(tc.chi_p0) + jb * std::norm(tc.chi_b0)) * budget.u;
  out.d1 = (jp * std::norm(tc.chi_p1) + jb * std::norm(tc.chi_b1)) * budget.u;
  const Contrasts c = contrasts(tc);
  out.diff = jp * (c.c_p - budget.alpha() * c.c_b) * budget.u;
  return out;
}

double total_absorption(const ChainParams& params, long long shots,
                        long long j_b, double u) {
  if (shots < 1 || j_b < 0 || !(u > 0.0)) {
    throw InvalidParameter("total_absorption needs shots >= 1, j_b >= 0, u > 0");
  }
  return u * static_cast<double>(shots) * static_cast<double>(j_b) *
         absorption_weight(params);
}

long long equal_absorption_measurements(const ChainParams& params,
                                        long long k_prime) {
  if (k_prime < 1) {
    throw InvalidParameter("k_prime must be >= 1");
  }
  const double weight = absorption_weight(params);
  if (!(weight > 0.0)) {
    throw NoAbsorption("absorption weight is zero; dose cannot be equalized");
  }
  const long long shots =
      static_cast<long long>(std::floor(static_cast<double>(k_prime) / weight));
  return shots < 1 ? 1 : shots;
}

double cnr_ratio(const ChainParams& params, long long j_p, long long j_b,
                 long long k_prime, ComparisonMode mode) {
  const long long shots = mode == ComparisonMode::fixed_k
                              ? k_prime
                              : equal_absorption_measurements(params, k_prime);
  const Contrasts c = contrasts(compute_transfer(params));
  const double ours = cnr_exact(c, {shots, 1.0, j_p, j_b});
  const double traditional = cnr_exact({1.0, 0.0}, {k_prime, 1.0, j_p, j_b});
  return ours / traditional;
}

double cnr_ratio_large_k(const ChainParams& params, double alpha,
                         ComparisonMode mode) {
  const Contrasts c = contrasts(compute_transfer(params));
  if (c.c_p == 0.0 && c.c_b == 0.0) {
    throw DegenerateContrast("both contrasts vanish");
  }
  double ratio = (c.c_p + c.c_b) /
                 std::sqrt(c.c_p * c.c_p + alpha * c.c_b * c.c_b);
  if (mode == ComparisonMode::fixed_absorption) {
    const double weight = absorption_weight(params);
    if (!(weight > 0.0)) {
      throw NoAbsorption("absorption weight is zero; dose cannot be equalized");
    }
    ratio /= std::sqrt(weight);
  }
  return ratio;
}

GammaRoot optimize_gamma0(int cycles, double gamma1, double alpha) {
  if (cycles < 2) {
    throw InvalidParameter("optimize_gamma0 needs cycles >= 2");
  }
  if (!(alpha > 0.0)) {
    throw InvalidParameter("optimize_gamma0 needs alpha > 0");
  }

  const auto mismatch = [&](double gamma0) {
    const ChainParams params(cycles, gamma0, gamma1);
    const Contrasts c = contrasts(compute_transfer(params));
    return c.c_p - alpha * c.c_b;
  };

  constexpr int kScanPoints = 1024;
  constexpr double kSpan = 1.0;  // scan [0, 1)
  std::vector<double> roots;
  double prev_gamma = 0.0;
  double prev_value = mismatch(prev_gamma);
  for (int i = 1; i < kScanPoints; ++i) {
    const double gamma = kSpan * i / kScanPoints;
    const double value = mismatch(gamma);
    if (prev_value == 0.0) {
      roots.push_back(prev_gamma);
    } else if ((prev_value < 0.0) != (value < 0.0)) {
      double lo = prev_gamma;
      double hi = gamma;
      double f_lo = prev_value;
      while (hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = mismatch(mid);
        if (f_mid == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((f_lo < 0.0) != (f_mid < 0.0)) {
          hi = mid;
        } else {
          lo = mid;
          f_lo = f_mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    prev_gamma = gamma;
    prev_value = value;
  }

  if (roots.empty()) {
    throw NoRoot("c_p - alpha*c_b has no sign change on [0, 1)");
  }

  GammaRoot out;
  out.gamma0 = roots.front();
  out.all_roots = std::move(roots);
  const Contrasts c =
      contrasts(compute_transfer(ChainParams(cycles, out.gamma0, gamma1)));
  out.c_p = c.c_p;
  out.c_b = c.c_b;
  return out;
}

}  // namespace ifgi
