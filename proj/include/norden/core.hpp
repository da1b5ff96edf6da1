#pragma once

#include <charconv>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

namespace norden {

/// Largest chart dimension supported by the fixed-capacity jet types.
inline constexpr int kMaxDim = 6;

using Point = std::vector<double>;

/// Shortest decimal text that reads back to the same double.
inline std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, end);
}

inline std::string format_point(std::span<const double> p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ", ";
    out += format_double(p[i]);
  }
  return out + ")";
}

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression text. `offset` is the byte offset of the failure.
class ParseError : public Error {
 public:
  enum class Kind { syntax, unknown_identifier, arity };

  ParseError(Kind kind, const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), kind_(kind), offset_(offset) {}
  Kind kind() const noexcept { return kind_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  Kind kind_;
  std::size_t offset_;
};

/// Division by zero or log of a non-positive value during evaluation.
class EvalError : public Error {
 public:
  EvalError(const std::string& what, std::string subexpression)
      : Error(what + " in '" + subexpression + "'"), subexpression_(std::move(subexpression)) {}
  const std::string& subexpression() const noexcept { return subexpression_; }

 private:
  std::string subexpression_;
};

class DegenerateMetricError : public Error {
 public:
  explicit DegenerateMetricError(Point point)
      : Error("degenerate matrix at point " + format_point(point)), point_(std::move(point)) {}
  const Point& point() const noexcept { return point_; }

 private:
  Point point_;
};

class InvalidInputError : public Error {
 public:
  using Error::Error;
};

}  // namespace norden
