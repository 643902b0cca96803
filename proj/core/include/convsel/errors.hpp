#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace convsel {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Tensor or matrix dimensions disagree with each other or with a layer shape.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// The requested convolution cannot be realized by the chosen backend
/// (e.g. Winograd with a non-3x3 kernel, or a layer whose output extent
/// would be smaller than one pixel).
class UnsupportedShape : public Error {
 public:
  using Error::Error;
};

class EmptyGrid : public Error {
 public:
  using Error::Error;
};

/// Every method failed on a layer, so no label or oracle choice exists.
class AllMethodsFailed : public Error {
 public:
  using Error::Error;
};

class EmptyDataset : public Error {
 public:
  using Error::Error;
};

/// Impurity of a node with zero samples is undefined.
class EmptyNode : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Model file exists but does not start with the expected magic header.
class FormatVersionMismatch : public Error {
 public:
  using Error::Error;
};

/// A ranking-file timing source does not cover a requested layer shape.
class MissingShape : public Error {
 public:
  using Error::Error;
};

/// Malformed input file. Carries the 1-based line number of the offending row.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  explicit ParseError(const std::string& what) : Error(what), line_(0) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace convsel
