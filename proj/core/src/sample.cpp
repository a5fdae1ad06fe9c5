#include "ifgi/sample.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "ifgi/errors.hpp"

namespace ifgi {

BinarySample::BinarySample(int width, int height,
                           std::vector<std::uint8_t> opaque_mask)
    : width_(width), height_(height), mask_(std::move(opaque_mask)) {
  if (width_ < 1 || height_ < 1) {
    throw EmptyGrid("sample dimensions must be positive");
  }
  if (mask_.size() != static_cast<std::size_t>(width_) * height_) {
    throw ShapeMismatch("mask size does not match dimensions");
  }
  opaque_count_ = static_cast<int>(std::count(mask_.begin(), mask_.end(), 1));
}

double BinarySample::alpha() const {
  if (transparent_count() == 0) {
    throw UnreachableAlpha("alpha undefined: sample has no transparent pixels");
  }
  return static_cast<double>(opaque_count_) / transparent_count();
}

BinarySample from_grid(const std::vector<std::vector<bool>>& grid) {
  if (grid.empty() || grid.front().empty()) {
    throw EmptyGrid("grid must be non-empty");
  }
  const std::size_t width = grid.front().size();
  std::vector<std::uint8_t> mask;
  mask.reserve(grid.size() * width);
  for (const auto& row : grid) {
    if (row.size() != width) {
      throw RaggedGrid("grid rows have unequal lengths");
    }
    for (bool cell : row) {
      mask.push_back(cell ? 1 : 0);
    }
  }
  return BinarySample(static_cast<int>(width), static_cast<int>(grid.size()),
                      std::move(mask));
}

BinarySample synthesize(SamplePattern pattern, int width, int height,
                        double alpha_target, std::uint64_t seed) {
  if (width < 1 || height < 1) {
    throw EmptyGrid("sample dimensions must be positive");
  }
  if (alpha_target < 0.0) {
    throw InvalidParameter("alpha_target must be >= 0");
  }
  const int total = width * height;
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(total), 0);

  switch (pattern) {
    case SamplePattern::checkerboard:
      for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
          mask[static_cast<std::size_t>(y) * width + x] =
              static_cast<std::uint8_t>((x + y) % 2);
        }
      }
      break;
    case SamplePattern::half_plane: {
      const int transparent_cols = static_cast<int>(
          std::lround(width / (1.0 + alpha_target)));
      if (transparent_cols == 0) {
        throw UnreachableAlpha("alpha_target leaves no transparent column");
      }
      for (int y = 0; y < height; ++y) {
        for (int x = transparent_cols; x < width; ++x) {
          mask[static_cast<std::size_t>(y) * width + x] = 1;
        }
      }
      break;
    }
    case SamplePattern::random_mask: {
      const int opaque = static_cast<int>(
          std::lround(total * alpha_target / (1.0 + alpha_target)));
      if (opaque >= total) {
        throw UnreachableAlpha("alpha_target rounds to zero transparent pixels");
      }
      std::vector<int> order(static_cast<std::size_t>(total));
      std::iota(order.begin(), order.end(), 0);
      std::mt19937_64 rng(seed);
      std::shuffle(order.begin(), order.end(), rng);
      for (int k = 0; k < opaque; ++k) {
        mask[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] = 1;
      }
      break;
    }
  }
  return BinarySample(width, height, std::move(mask));
}

namespace {

struct PbmCursor {
  const std::string& text;
  std::size_t pos = 0;
  int line = 1;
  int column = 1;

  bool eof() const { return pos >= text.size(); }

  char peek() const { return text[pos]; }

  char advance() {
    char c = text[pos++];
    if (c == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
    return c;
  }

  void skip_separators() {
    while (!eof()) {
      char c = peek();
      if (c == '#') {
        while (!eof() && peek() != '\n') {
          advance();
        }
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  int read_int(const char* what) {
    skip_separators();
    if (eof() || !std::isdigit(static_cast<unsigned char>(peek()))) {
      throw ParseError(std::string("expected ") + what, line, column);
    }
    long value = 0;
    while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
      value = value * 10 + (advance() - '0');
      if (value > 1'000'000'000) {
        throw ParseError("dimension too large", line, column);
      }
    }
    return static_cast<int>(value);
  }
};

}  // namespace

BinarySample parse_pbm(const std::string& text) {
  PbmCursor cur{text};
  cur.skip_separators();
  if (text.size() - cur.pos < 2 || cur.peek() != 'P') {
    throw ParseError("missing PBM magic", cur.line, cur.column);
  }
  cur.advance();
  const char kind = cur.advance();
  if (kind != '1') {
    throw ParseError(std::string("unsupported PBM variant P") + kind +
                         ", only plain P1 is accepted",
                     cur.line, cur.column);
  }

  const int width = cur.read_int("width");
  const int height = cur.read_int("height");
  if (width < 1 || height < 1) {
    throw ParseError("dimensions must be positive", cur.line, cur.column);
  }

  std::vector<std::uint8_t> mask;
  mask.reserve(static_cast<std::size_t>(width) * height);
  for (long needed = static_cast<long>(width) * height; needed > 0; --needed) {
    cur.skip_separators();
    if (cur.eof()) {
      throw ParseError("unexpected end of pixel data", cur.line, cur.column);
    }
    const char c = cur.advance();
    if (c != '0' && c != '1') {
      throw ParseError("pixel must be 0 or 1", cur.line, cur.column - 1);
    }
    mask.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return BinarySample(width, height, std::move(mask));
}

BinarySample load_mask(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_pbm(buf.str());
}

std::string to_pbm(const BinarySample& sample) {
  std::ostringstream out;
  out << "P1\n" << sample.width() << ' ' << sample.height() << '\n';
  for (int y = 0; y < sample.height(); ++y) {
    for (int x = 0; x < sample.width(); ++x) {
      if (x > 0) {
        out << ' ';
      }
      out << (sample.opaque(x, y) ? '1' : '0');
    }
    out << '\n';
  }
  return out.str();
}

void save_mask(const BinarySample& sample, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  out << to_pbm(sample);
  if (!out) {
    throw IoError("write failed for " + path.string());
  }
}

}  // namespace ifgi
