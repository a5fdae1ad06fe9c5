#include "ifgi/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ifgi/errors.hpp"

namespace ifgi {

void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content) {
  const auto dir = path.parent_path().empty() ? std::filesystem::path(".")
                                              : path.parent_path();
  const auto tmp = dir / (path.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw IoError("cannot open " + tmp.string() + " for writing");
    }
    out << content;
    if (!out) {
      throw IoError("write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw IoError("rename to " + path.string() + " failed: " + ec.message());
  }
}

std::string image_to_csv(const GhostImage& image, const BinarySample& sample) {
  if (image.signal.size() != static_cast<std::size_t>(sample.total())) {
    throw ShapeMismatch("image size does not match sample");
  }
  std::ostringstream out;
  out.precision(17);
  out << "x,y,g0,g1,G\n";
  for (int y = 0; y < sample.height(); ++y) {
    for (int x = 0; x < sample.width(); ++x) {
      const auto i = static_cast<std::size_t>(y * sample.width() + x);
      out << x << ',' << y << ',' << image.g0[i] << ',' << image.g1[i] << ','
          << image.signal[i] << '\n';
    }
  }
  return out.str();
}

std::string image_to_pgm(const GhostImage& image, const BinarySample& sample) {
  if (image.signal.size() != static_cast<std::size_t>(sample.total())) {
    throw ShapeMismatch("image size does not match sample");
  }
  const auto [lo_it, hi_it] =
      std::minmax_element(image.signal.begin(), image.signal.end());
  const double lo = *lo_it;
  const double span = *hi_it - lo;
  std::ostringstream out;
  out << "P2\n" << sample.width() << ' ' << sample.height() << "\n65535\n";
  for (int y = 0; y < sample.height(); ++y) {
    for (int x = 0; x < sample.width(); ++x) {
      const auto i = static_cast<std::size_t>(y * sample.width() + x);
      const int level =
          span > 0.0
              ? static_cast<int>(
                    std::lround((image.signal[i] - lo) / span * 65535.0))
              : 0;
      if (x > 0) {
        out << ' ';
      }
      out << level;
    }
    out << '\n';
  }
  return out.str();
}

std::string report_to_json(const CnrReport& report, const SimConfig& cfg) {
  nlohmann::json j;
  j["report"] = {
      {"mean_signal_transparent", report.mean_signal_transparent},
      {"mean_signal_opaque", report.mean_signal_opaque},
      {"var_signal_transparent", report.var_signal_transparent},
      {"var_signal_opaque", report.var_signal_opaque},
      {"cnr_empirical", report.cnr_empirical},
      {"cnr_analytic", report.cnr_analytic},
      {"visibility_empirical", report.visibility_empirical},
      {"visibility_analytic", report.visibility_analytic},
      {"mean_bucket0", report.mean_bucket0},
      {"mean_bucket1", report.mean_bucket1},
      {"bucket_diff", report.bucket_diff},
      {"bucket_diff_stderr", report.bucket_diff_stderr},
  };
  j["config"] = {
      {"m", cfg.chain.cycles},
      {"gamma0", cfg.chain.gamma0},
      {"gamma1", cfg.chain.gamma1},
      {"width", cfg.sample.width()},
      {"height", cfg.sample.height()},
      {"j_p", cfg.sample.transparent_count()},
      {"j_b", cfg.sample.opaque_count()},
      {"k", cfg.shots},
      {"u", cfg.u},
      {"seed", cfg.seed},
      {"detector_mode",
       cfg.mode == DetectorMode::poisson ? "poisson" : "continuous"},
      {"threads", cfg.threads},
  };
  return j.dump(2) + "\n";
}

}  // namespace ifgi
