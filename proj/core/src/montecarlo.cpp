#include "ifgi/montecarlo.hpp"

#include <cmath>
#include <random>
#include <thread>

#include "ifgi/errors.hpp"
#include "ifgi/rng.hpp"

namespace ifgi {

namespace {

// Salt values partition the counter space between the Gaussian field draws
// and the Poisson detector draws.
constexpr std::uint64_t kSaltFieldA = 0;
constexpr std::uint64_t kSaltFieldB = 1;
constexpr std::uint64_t kSaltCcd0 = 2;
constexpr std::uint64_t kSaltCcd1 = 3;
constexpr std::uint64_t kSaltBucket0 = 4;
constexpr std::uint64_t kSaltBucket1 = 5;

// Shots are always processed in fixed-size chunks; thread-count independence
// of the final sums follows from merging chunk accumulators in index order.
constexpr long long kChunkShots = 128;

double poisson_draw(double mean, std::uint64_t key) {
  rng::CounterEngine engine(key);
  std::poisson_distribution<long long> dist(mean);
  return static_cast<double>(dist(engine));
}

}  // namespace

ShotAccumulator::ShotAccumulator(int num_pixels)
    : sum_c0_(static_cast<std::size_t>(num_pixels)),
      sum_c1_(static_cast<std::size_t>(num_pixels)),
      sum_b0c0_(static_cast<std::size_t>(num_pixels)),
      sum_b1c1_(static_cast<std::size_t>(num_pixels)) {
  if (num_pixels < 1) {
    throw InvalidParameter("accumulator needs at least one pixel");
  }
}

void ShotAccumulator::add(const ShotReadout& readout) {
  const std::size_t pixels = sum_c0_.size();
  if (readout.ccd0.size() != pixels || readout.ccd1.size() != pixels) {
    throw ShapeMismatch("readout pixel count does not match accumulator");
  }
  ++count_;
  sum_b0_.add(readout.bucket0);
  sum_b1_.add(readout.bucket1);
  const double diff = readout.bucket1 - readout.bucket0;
  sum_diff_.add(diff);
  sum_diff_sq_.add(diff * diff);
  for (std::size_t x = 0; x < pixels; ++x) {
    sum_c0_[x].add(readout.ccd0[x]);
    sum_c1_[x].add(readout.ccd1[x]);
    sum_b0c0_[x].add(readout.bucket0 * readout.ccd0[x]);
    sum_b1c1_[x].add(readout.bucket1 * readout.ccd1[x]);
  }
}

void ShotAccumulator::merge(const ShotAccumulator& other) {
  if (other.sum_c0_.size() != sum_c0_.size()) {
    throw ShapeMismatch("cannot merge accumulators of different pixel counts");
  }
  count_ += other.count_;
  sum_b0_.add(other.sum_b0_.value());
  sum_b1_.add(other.sum_b1_.value());
  sum_diff_.add(other.sum_diff_.value());
  sum_diff_sq_.add(other.sum_diff_sq_.value());
  for (std::size_t x = 0; x < sum_c0_.size(); ++x) {
    sum_c0_[x].add(other.sum_c0_[x].value());
    sum_c1_[x].add(other.sum_c1_[x].value());
    sum_b0c0_[x].add(other.sum_b0c0_[x].value());
    sum_b1c1_[x].add(other.sum_b1c1_[x].value());
  }
}

void ShotAccumulator::reset() {
  count_ = 0;
  sum_b0_ = {};
  sum_b1_ = {};
  sum_diff_ = {};
  sum_diff_sq_ = {};
  for (auto& s : sum_c0_) s = {};
  for (auto& s : sum_c1_) s = {};
  for (auto& s : sum_b0c0_) s = {};
  for (auto& s : sum_b1c1_) s = {};
}

double ShotAccumulator::mean_bucket0() const {
  if (count_ < 1) throw NotEnoughShots("no shots accumulated");
  return sum_b0_.value() / static_cast<double>(count_);
}

double ShotAccumulator::mean_bucket1() const {
  if (count_ < 1) throw NotEnoughShots("no shots accumulated");
  return sum_b1_.value() / static_cast<double>(count_);
}

double ShotAccumulator::mean_bucket_diff() const {
  if (count_ < 1) throw NotEnoughShots("no shots accumulated");
  return sum_diff_.value() / static_cast<double>(count_);
}

double ShotAccumulator::bucket_diff_stderr() const {
  if (count_ < 2) throw NotEnoughShots("stderr needs at least two shots");
  const double n = static_cast<double>(count_);
  const double mean = sum_diff_.value() / n;
  const double var =
      (sum_diff_sq_.value() - n * mean * mean) / (n - 1.0);
  return std::sqrt(std::max(var, 0.0) / n);
}

std::vector<std::complex<double>> generate_shot(std::uint64_t seed,
                                                long long shot_index, double u,
                                                int num_pixels) {
  if (!(u > 0.0)) {
    throw InvalidParameter("u must be > 0");
  }
  const double scale = std::sqrt(u);
  std::vector<std::complex<double>> field(
      static_cast<std::size_t>(num_pixels));
  const auto shot = static_cast<std::uint64_t>(shot_index);
  for (int x = 0; x < num_pixels; ++x) {
    const auto pixel = static_cast<std::uint64_t>(x);
    const std::complex<double> normal_pair = rng::standard_normal_pair(
        rng::counter_hash(seed, shot, pixel, kSaltFieldA),
        rng::counter_hash(seed, shot, pixel, kSaltFieldB));
    field[static_cast<std::size_t>(x)] = scale * normal_pair;
  }
  return field;
}

ShotReadout detector_readout(std::span<const std::complex<double>> field,
                             const BinarySample& sample,
                             const TransferCoefficients& tc, DetectorMode mode,
                             std::uint64_t seed, long long shot_index) {
  const int pixels = sample.total();
  if (field.size() != static_cast<std::size_t>(pixels)) {
    throw ShapeMismatch("field length does not match sample pixel count");
  }

  const double wp0 = std::norm(tc.chi_p0);
  const double wp1 = std::norm(tc.chi_p1);
  const double wb0 = std::norm(tc.chi_b0);
  const double wb1 = std::norm(tc.chi_b1);

  ShotReadout out;
  out.ccd0.resize(static_cast<std::size_t>(pixels));
  out.ccd1.resize(static_cast<std::size_t>(pixels));
  double bucket0 = 0.0;
  double bucket1 = 0.0;
  for (int x = 0; x < pixels; ++x) {
    const double intensity = std::norm(field[static_cast<std::size_t>(x)]);
    const double ccd = intensity / 4.0;
    out.ccd0[static_cast<std::size_t>(x)] = ccd;
    out.ccd1[static_cast<std::size_t>(x)] = ccd;
    if (sample.opaque(x)) {
      bucket0 += wb0 * intensity / 2.0;
      bucket1 += wb1 * intensity / 2.0;
    } else {
      bucket0 += wp0 * intensity / 2.0;
      bucket1 += wp1 * intensity / 2.0;
    }
  }
  out.bucket0 = bucket0;
  out.bucket1 = bucket1;

  if (mode == DetectorMode::poisson) {
    const auto shot = static_cast<std::uint64_t>(shot_index);
    for (int x = 0; x < pixels; ++x) {
      const auto pixel = static_cast<std::uint64_t>(x);
      auto& c0 = out.ccd0[static_cast<std::size_t>(x)];
      auto& c1 = out.ccd1[static_cast<std::size_t>(x)];
      c0 = poisson_draw(c0, rng::counter_hash(seed, shot, pixel, kSaltCcd0));
      c1 = poisson_draw(c1, rng::counter_hash(seed, shot, pixel, kSaltCcd1));
    }
    out.bucket0 = poisson_draw(
        out.bucket0, rng::counter_hash(seed, shot, 0, kSaltBucket0));
    out.bucket1 = poisson_draw(
        out.bucket1, rng::counter_hash(seed, shot, 0, kSaltBucket1));
  }
  return out;
}

GhostImage finalize(const ShotAccumulator& acc) {
  if (acc.count_ < 2) {
    throw NotEnoughShots("finalize needs at least two shots");
  }
  const double n = static_cast<double>(acc.count_);
  const std::size_t pixels = acc.sum_c0_.size();
  GhostImage img;
  img.shots = acc.count_;
  img.g0.resize(pixels);
  img.g1.resize(pixels);
  img.signal.resize(pixels);
  const double mean_b0 = acc.sum_b0_.value() / n;
  const double mean_b1 = acc.sum_b1_.value() / n;
  for (std::size_t x = 0; x < pixels; ++x) {
    img.g0[x] = acc.sum_b0c0_[x].value() / n -
                mean_b0 * (acc.sum_c0_[x].value() / n);
    img.g1[x] = acc.sum_b1c1_[x].value() / n -
                mean_b1 * (acc.sum_c1_[x].value() / n);
    img.signal[x] = img.g1[x] - img.g0[x];
  }
  return img;
}

CnrReport empirical_cnr(const GhostImage& image, const BinarySample& sample,
                        const TransferCoefficients& tc,
                        const ExperimentBudget& budget) {
  if (image.signal.size() != static_cast<std::size_t>(sample.total())) {
    throw ShapeMismatch("image size does not match sample");
  }
  if (sample.transparent_count() < 2 || sample.opaque_count() < 2) {
    throw ClassTooSmall("need at least two pixels in each class");
  }

  double sum_p = 0.0, sum_b = 0.0;
  double sum_g0p = 0.0, sum_g0b = 0.0, sum_g1p = 0.0, sum_g1b = 0.0;
  for (int x = 0; x < sample.total(); ++x) {
    const auto i = static_cast<std::size_t>(x);
    if (sample.opaque(x)) {
      sum_b += image.signal[i];
      sum_g0b += image.g0[i];
      sum_g1b += image.g1[i];
    } else {
      sum_p += image.signal[i];
      sum_g0p += image.g0[i];
      sum_g1p += image.g1[i];
    }
  }
  const double jp = sample.transparent_count();
  const double jb = sample.opaque_count();
  const double mean_p = sum_p / jp;
  const double mean_b = sum_b / jb;

  double ss_p = 0.0, ss_b = 0.0;
  for (int x = 0; x < sample.total(); ++x) {
    const double g = image.signal[static_cast<std::size_t>(x)];
    if (sample.opaque(x)) {
      ss_b += (g - mean_b) * (g - mean_b);
    } else {
      ss_p += (g - mean_p) * (g - mean_p);
    }
  }

  CnrReport report;
  report.mean_signal_transparent = mean_p;
  report.mean_signal_opaque = mean_b;
  report.var_signal_transparent = ss_p / (jp - 1.0);
  report.var_signal_opaque = ss_b / (jb - 1.0);
  report.cnr_empirical =
      (mean_p - mean_b) /
      std::sqrt(0.5 * (report.var_signal_transparent + report.var_signal_opaque));

  // Empirical visibility per the same class-mean construction as the
  // analytic formula: |G_p - G_b| over the summed coincidence signals.
  const double denom = sum_g1p / jp + sum_g1b / jb + sum_g0p / jp + sum_g0b / jb;
  report.visibility_empirical =
      denom != 0.0 ? std::abs(mean_p - mean_b) / denom : 0.0;

  report.cnr_analytic = cnr_exact(contrasts(tc), budget);
  report.visibility_analytic = visibility(tc);
  return report;
}

SimResult run_simulation(const SimConfig& cfg) {
  if (cfg.shots < 2) {
    throw InvalidParameter("simulation needs shots >= 2");
  }
  if (!(cfg.u > 0.0)) {
    throw InvalidParameter("u must be > 0");
  }

  const TransferCoefficients tc = compute_transfer(cfg.chain);
  const int pixels = cfg.sample.total();
  const long long num_chunks = (cfg.shots + kChunkShots - 1) / kChunkShots;

  unsigned threads = cfg.threads > 0
                         ? static_cast<unsigned>(cfg.threads)
                         : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<long long>(threads, num_chunks));

  const auto run_chunk = [&](long long chunk, ShotAccumulator& acc) {
    const long long begin = chunk * kChunkShots;
    const long long end = std::min(begin + kChunkShots, cfg.shots);
    for (long long shot = begin; shot < end; ++shot) {
      const auto field = generate_shot(cfg.seed, shot, cfg.u, pixels);
      acc.add(detector_readout(field, cfg.sample, tc, cfg.mode, cfg.seed, shot));
    }
  };

  // Chunk accumulators are merged into the total in chunk order even when
  // single-threaded, so the summation order is identical for every thread
  // count.
  ShotAccumulator total(pixels);
  if (threads <= 1) {
    ShotAccumulator chunk_acc(pixels);
    for (long long chunk = 0; chunk < num_chunks; ++chunk) {
      chunk_acc.reset();
      run_chunk(chunk, chunk_acc);
      total.merge(chunk_acc);
    }
  } else {
    std::vector<ShotAccumulator> slots(threads, ShotAccumulator(pixels));
    // Waves of `threads` chunks: compute in parallel, merge in chunk order.
    for (long long base = 0; base < num_chunks;
         base += static_cast<long long>(threads)) {
      const long long wave =
          std::min<long long>(threads, num_chunks - base);
      std::vector<std::thread> workers;
      workers.reserve(static_cast<std::size_t>(wave));
      for (long long t = 0; t < wave; ++t) {
        slots[static_cast<std::size_t>(t)].reset();
        workers.emplace_back(run_chunk, base + t,
                             std::ref(slots[static_cast<std::size_t>(t)]));
      }
      for (auto& w : workers) {
        w.join();
      }
      for (long long t = 0; t < wave; ++t) {
        total.merge(slots[static_cast<std::size_t>(t)]);
      }
    }
  }

  SimResult result;
  result.image = finalize(total);
  const ExperimentBudget budget{cfg.shots, cfg.u, cfg.sample.transparent_count(),
                                cfg.sample.opaque_count()};
  result.report = empirical_cnr(result.image, cfg.sample, tc, budget);
  result.report.mean_bucket0 = total.mean_bucket0();
  result.report.mean_bucket1 = total.mean_bucket1();
  result.report.bucket_diff = total.mean_bucket_diff();
  result.report.bucket_diff_stderr = total.bucket_diff_stderr();
  return result;
}

}  // namespace ifgi
