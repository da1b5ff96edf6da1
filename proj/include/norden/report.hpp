#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace norden {

enum class Verdict { pass, fail, hypothesis_not_met };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::hypothesis_not_met: return "hypothesis-not-met";
  }
  return "fail";
}

struct ResidualEntry {
  std::string name;
  double residual = 0.0;
};

/// Outcome of one named verification. verdict == pass iff
/// max_residual <= tolerance; hypothesis-not-met reports carry the
/// hypothesis residual (which exceeds the tolerance).
struct CheckReport {
  std::string check;
  Verdict verdict = Verdict::fail;
  double max_residual = 0.0;
  double tolerance = 0.0;
  int points = 0;
  std::uint64_t seed = 0;
  std::vector<ResidualEntry> breakdown;
  std::string note;

  bool passed() const { return verdict == Verdict::pass; }
};

/// max|a - b| / max(1, max|a|, max|b|).
inline double scaled_difference(std::span<const double> a, std::span<const double> b) {
  double diff = 0.0;
  double scale = 1.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = std::abs(a[i] - b[i]);
    diff = std::isnan(d) ? std::numeric_limits<double>::infinity() : std::max(diff, d);
    scale = std::max({scale, std::abs(a[i]), std::abs(b[i])});
  }
  return diff / scale;
}

/// Residual of a quantity that should vanish: max|a| / max(1, input_scale).
inline double scaled_magnitude(std::span<const double> a, double input_scale) {
  double m = 0.0;
  for (double x : a) m = std::isnan(x) ? std::numeric_limits<double>::infinity() : std::max(m, std::abs(x));
  return m / std::max(1.0, input_scale);
}

/// Running per-identity maxima, kept in first-seen order.
class ResidualTracker {
 public:
  void add(std::string_view name, double residual) {
    for (auto& e : entries_) {
      if (e.name == name) {
        e.residual = std::max(e.residual, residual);
        return;
      }
    }
    entries_.push_back({std::string(name), residual});
  }

  double get(std::string_view name) const {
    for (const auto& e : entries_)
      if (e.name == name) return e.residual;
    return 0.0;
  }

  double max() const {
    double m = 0.0;
    for (const auto& e : entries_) m = std::max(m, e.residual);
    return m;
  }

  const std::vector<ResidualEntry>& entries() const { return entries_; }

 private:
  std::vector<ResidualEntry> entries_;
};

}  // namespace norden
