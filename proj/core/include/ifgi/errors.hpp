#pragma once

#include <stdexcept>
#include <string>

namespace ifgi {

/// Base class for all domain errors thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// sample_model
struct EmptyGrid : Error {
  using Error::Error;
};
struct RaggedGrid : Error {
  using Error::Error;
};
struct UnreachableAlpha : Error {
  using Error::Error;
};
struct ParseError : Error {
  int line = 0;
  int column = 0;
  ParseError(const std::string& msg, int line_, int column_)
      : Error(msg + " (line " + std::to_string(line_) + ", column " +
              std::to_string(column_) + ")"),
        line(line_),
        column(column_) {}
};
struct IoError : Error {
  using Error::Error;
};

// analytics
struct DegenerateContrast : Error {
  using Error::Error;
};
struct AllDark : Error {
  using Error::Error;
};
struct NoAbsorption : Error {
  using Error::Error;
};
struct NoRoot : Error {
  using Error::Error;
};

// montecarlo
struct ShapeMismatch : Error {
  using Error::Error;
};
struct NotEnoughShots : Error {
  using Error::Error;
};
struct ClassTooSmall : Error {
  using Error::Error;
};

struct InvalidParameter : Error {
  using Error::Error;
};

}  // namespace ifgi
