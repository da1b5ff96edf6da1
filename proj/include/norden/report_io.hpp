#pragma once

// JSON and Markdown rendering of check reports. Needs nlohmann/json.

#include <cmath>
#include <string>
#include <vector>

#include "json.hpp"
#include "norden/catalog.hpp"
#include "norden/report.hpp"
#include "norden/suite.hpp"

namespace norden {

using Json = nlohmann::ordered_json;

namespace detail {

/// Non-finite residuals become null.
inline Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

}  // namespace detail

inline Json to_json(const CheckReport& r) {
  Json j;
  j["check"] = r.check;
  j["verdict"] = std::string(to_string(r.verdict));
  j["max_residual"] = detail::number(r.max_residual);
  j["tolerance"] = r.tolerance;
  j["points"] = r.points;
  j["seed"] = r.seed;
  Json b = Json::array();
  for (const auto& e : r.breakdown) b.push_back({{"name", e.name}, {"residual", detail::number(e.residual)}});
  j["breakdown"] = b;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

struct CheckRun {
  std::string structure;
  std::string connection;
  std::vector<CheckReport> reports;
};

inline Json to_json(const CheckRun& run) {
  Json j;
  j["structure"] = run.structure;
  j["connection"] = run.connection;
  Json reports = Json::array();
  for (const auto& r : run.reports) reports.push_back(to_json(r));
  j["reports"] = reports;
  return j;
}

inline std::string residual_text(double x) { return std::isfinite(x) ? format_double(x) : "inf"; }

inline std::string to_markdown(const CheckRun& run) {
  std::string out = "# " + run.structure + "\n\n";
  if (!run.connection.empty()) out += "connection: " + run.connection + "\n\n";
  out += "| check | verdict | max residual | tolerance | points | seed |\n";
  out += "|---|---|---|---|---|---|\n";
  for (const auto& r : run.reports)
    out += "| " + r.check + " | " + std::string(to_string(r.verdict)) + " | " + residual_text(r.max_residual) + " | " +
           format_double(r.tolerance) + " | " + std::to_string(r.points) + " | " + std::to_string(r.seed) + " |\n";
  for (const auto& r : run.reports) {
    out += "\n## " + r.check + "\n\n";
    if (!r.note.empty()) out += r.note + "\n\n";
    for (const auto& e : r.breakdown) out += "- " + e.name + ": " + residual_text(e.residual) + "\n";
  }
  return out;
}

inline Json to_json(const PaperSummary& s) {
  Json j;
  j["command"] = "verify-paper";
  j["seed"] = s.seed;
  j["points"] = s.points;
  j["tolerance"] = s.tolerance;
  j["seeds_per_case"] = kPaperSeeds;
  Json rows = Json::array();
  for (const auto& r : s.rows) {
    Json row;
    row["check"] = r.check;
    row["verdict"] = std::string(to_string(r.verdict));
    row["max_residual"] = detail::number(r.max_residual);
    row["tolerance"] = s.tolerance;
    row["points"] = s.points;
    row["seed"] = s.seed;
    row["cases"] = r.cases;
    row["negative_cases"] = r.negative_cases;
    Json mm = Json::array();
    for (const auto& m : r.mismatches) {
      Json x;
      x["structure"] = m.spec.structure;
      x["generator"] = std::string(to_string(m.spec.generator));
      x["case_seed"] = m.seed;
      x["expected"] = std::string(to_string(m.spec.expected));
      x["report"] = to_json(m.report);
      mm.push_back(x);
    }
    row["mismatches"] = mm;
    rows.push_back(row);
  }
  j["checks"] = rows;
  j["all_passed"] = s.all_passed();
  return j;
}

inline std::string to_markdown(const PaperSummary& s) {
  std::string out = "# verify-paper\n\nseed " + std::to_string(s.seed) + ", " + std::to_string(s.points) +
                    " points, tolerance " + format_double(s.tolerance) + ", " + std::to_string(kPaperSeeds) +
                    " seeds per case\n\n";
  out += "| check | verdict | worst residual | cases | expected negatives | mismatches |\n";
  out += "|---|---|---|---|---|---|\n";
  for (const auto& r : s.rows)
    out += "| " + r.check + " | " + std::string(to_string(r.verdict)) + " | " + residual_text(r.max_residual) + " | " +
           std::to_string(r.cases) + " | " + std::to_string(r.negative_cases) + " | " +
           std::to_string(r.mismatches.size()) + " |\n";
  for (const auto& r : s.rows)
    for (const auto& m : r.mismatches)
      out += "\n- " + r.check + " on " + m.spec.structure + " (" + std::string(to_string(m.spec.generator)) +
             ", case seed " + std::to_string(m.seed) + "): expected " + std::string(to_string(m.spec.expected)) +
             ", got " + std::string(to_string(m.report.verdict)) + " with residual " +
             residual_text(m.report.max_residual) + (m.report.note.empty() ? "" : " (" + m.report.note + ")") + "\n";
  return out;
}

inline Json catalog_json() {
  Json list = Json::array();
  for (const auto& e : catalog()) {
    const Structure s = e.build();
    Json j;
    j["name"] = e.name;
    j["dimension"] = s.dim();
    j["description"] = e.description;
    j["anti_kahler"] = e.anti_kahler;
    j["integrable_J"] = e.integrable;
    j["standard_J"] = e.standard_j;
    Json box = Json::array();
    for (const auto& iv : s.chart().box()) box.push_back({iv.lo, iv.hi});
    j["box"] = box;
    list.push_back(j);
  }
  return list;
}

inline std::string catalog_markdown() {
  std::string out = "| name | dim | anti-Kähler | integrable J | description |\n|---|---|---|---|---|\n";
  for (const auto& e : catalog()) {
    const Structure s = e.build();
    out += "| " + e.name + " | " + std::to_string(s.dim()) + " | " + (e.anti_kahler ? "yes" : "no") + " | " +
           (e.integrable ? "yes" : "no") + " | " + e.description + " |\n";
  }
  return out;
}

}  // namespace norden
