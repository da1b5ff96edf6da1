#pragma once

// Named checks, connection choices, and the full verification matrix over
// the catalog.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "norden/catalog.hpp"
#include "norden/checkers.hpp"
#include "norden/conjugation.hpp"
#include "norden/curvature.hpp"
#include "norden/operators.hpp"

namespace norden {

struct CheckInfo {
  std::string id;
  bool uses_connection;
  std::string summary;
};

/// Stable check identifiers, sorted.
inline const std::vector<CheckInfo>& check_registry() {
  static const std::vector<CheckInfo> checks = {
      {"almost_complex", false, "J^2 = -id"},
      {"anti_kahler", false, "nabla^LC(g) J = 0 and Phi_J g = 0"},
      {"antikahler_iff", true, "anti-Kähler iff (nabla_JX G)(Y,Z) = (nabla_X g)(JY,JZ)"},
      {"corollary_torsions", true, "T = T* = T-dagger for Codazzi (nabla,G) and (nabla*,J)"},
      {"cubic_form", true, "F = -F* and F(X,Y,Z) = g(X,(nabla*-nabla)_Z Y)"},
      {"gc4", false, "Phi_J G (X,Y,Z) = Phi_J g (X,JY,Z) + g(N_J(X,Y),Z)"},
      {"klein_group", true, "conjugations form a Klein four-group"},
      {"prop31", true, "consequences of (nabla, G) Codazzi"},
      {"prop32", true, "equivalent Codazzi conditions for (nabla, G)"},
      {"prop_dagger_J", true, "(nabla-dagger, J) Codazzi iff (nabla, g) Codazzi"},
      {"prop_pr3", true, "Tachibana operators through a Codazzi (nabla, J)"},
      {"prop_pr4_pr5", true, "J-invariance is shared by conjugates; nabla-dagger = nabla*"},
      {"purity", false, "g(JX,Y) = g(X,JY)"},
      {"statistical", true, "statistical structures of J-invariant connections"},
      {"theorem2", true, "R(X,Y,JZ,W) = -R*(X,Y,W,JZ) = RJ(X,Y,Z,JW)"},
  };
  return checks;
}

inline const CheckInfo* find_check(std::string_view id) {
  for (const auto& c : check_registry())
    if (c.id == id) return &c;
  return nullptr;
}

/// Runs one named check. `connection` is required when the check uses one.
inline CheckReport run_check(std::string_view id, const Structure& s, const ConnectionField* connection,
                             const SampleSet& samples, double tol) {
  const CheckInfo* info = find_check(id);
  if (!info) throw InvalidInputError("unknown check '" + std::string(id) + "'");
  if (info->uses_connection && !connection) throw InvalidInputError("check '" + info->id + "' needs a connection");
  const ConnectionField* c = connection;
  if (id == "purity") return check_purity(s.g, s.J, samples, tol);
  if (id == "almost_complex") return check_almost_complex(s.J, samples, tol);
  if (id == "anti_kahler") return check_anti_kahler(s, samples, tol);
  if (id == "gc4") return verify_gc4(s, samples, tol);
  if (id == "klein_group") return verify_klein_group(*c, s, samples, tol);
  if (id == "theorem2") return verify_theorem2(*c, s, samples, tol);
  if (id == "cubic_form") return verify_cubic_form(*c, s, samples, tol);
  if (id == "prop31") return verify_prop31(*c, s, samples, tol);
  if (id == "prop32") return verify_prop32(*c, s, samples, tol);
  if (id == "corollary_torsions") return verify_corollary_torsions(*c, s, samples, tol);
  if (id == "prop_dagger_J") return verify_prop_dagger_J(*c, s, samples, tol);
  if (id == "prop_pr3") return verify_prop_pr3(*c, s, samples, tol);
  if (id == "antikahler_iff") return verify_antikahler_iff(*c, s, samples, tol);
  if (id == "prop_pr4_pr5") return verify_prop_pr4_pr5(*c, s, samples, tol);
  return verify_statistical_theorems(*c, s, samples, tol);
}

enum class Generator { none, levi_civita, zero, random, codazzi, j_invariant, j_invariant_codazzi, perturbation };

inline std::string_view to_string(Generator g) {
  switch (g) {
    case Generator::none: return "none";
    case Generator::levi_civita: return "levi-civita";
    case Generator::zero: return "zero";
    case Generator::random: return "random";
    case Generator::codazzi: return "codazzi";
    case Generator::j_invariant: return "j-invariant";
    case Generator::j_invariant_codazzi: return "j-invariant-codazzi";
    case Generator::perturbation: return "perturbation";
  }
  return "none";
}

inline std::optional<Generator> parse_generator(std::string_view name) {
  for (Generator g : {Generator::levi_civita, Generator::zero, Generator::random, Generator::codazzi,
                      Generator::j_invariant, Generator::j_invariant_codazzi})
    if (to_string(g) == name) return g;
  return std::nullopt;
}

/// The connection produced by `g` on `s`.
inline ConnectionField make_connection(Generator g, const Structure& s, std::uint64_t seed) {
  switch (g) {
    case Generator::levi_civita: return levi_civita(s.g);
    case Generator::zero: return ConnectionField::zero(s.chart());
    case Generator::random: return random_connection(s.chart(), seed);
    case Generator::codazzi: return random_codazzi_connection(s.G, seed);
    case Generator::j_invariant: return random_J_invariant_connection(s, seed);
    case Generator::j_invariant_codazzi: return random_J_invariant_codazzi_connection(s, seed);
    default: break;
  }
  throw InvalidInputError("generator '" + std::string(to_string(g)) + "' does not produce a connection");
}

/// Seed of the connection drawn for a run with user seed `seed`; sample
/// points use `seed` itself.
inline std::uint64_t connection_seed(std::uint64_t seed) { return derive_seed(seed, 1); }

// ---- the verification matrix ------------------------------------------------

struct PaperCase {
  std::string check;
  std::string structure;
  Generator generator;
  Verdict expected;
};

inline constexpr int kPaperSeeds = 20;

/// Every (check, structure, generator) combination with its expected verdict.
inline std::vector<PaperCase> paper_cases() {
  std::vector<PaperCase> cases;
  std::vector<std::string> all, anti_kahler_j0, standard_j;
  for (const auto& e : catalog()) {
    all.push_back(e.name);
    if (e.j_invariant_codazzi) anti_kahler_j0.push_back(e.name);
    if (e.standard_j) standard_j.push_back(e.name);
  }
  auto add = [&](const std::string& check, const std::vector<std::string>& structures, Generator g, Verdict v) {
    for (const auto& s : structures) cases.push_back({check, s, g, v});
  };
  const Verdict pass = Verdict::pass;
  const Verdict hnm = Verdict::hypothesis_not_met;

  add("purity", all, Generator::none, pass);
  add("almost_complex", all, Generator::none, pass);
  for (const auto& e : catalog())
    cases.push_back({"anti_kahler", e.name, Generator::none, e.anti_kahler ? pass : Verdict::fail});
  add("gc4", all, Generator::none, pass);
  add("gc4", all, Generator::perturbation, pass);
  for (const char* id : {"klein_group", "theorem2", "cubic_form"}) add(id, all, Generator::random, pass);
  for (const char* id : {"prop31", "prop_dagger_J"}) {
    add(id, all, Generator::codazzi, pass);
    add(id, all, Generator::random, hnm);
  }
  add("prop32", all, Generator::codazzi, pass);
  add("prop32", all, Generator::random, pass);
  add("corollary_torsions", anti_kahler_j0, Generator::j_invariant_codazzi, pass);
  add("corollary_torsions", all, Generator::random, hnm);
  for (const char* id : {"prop_pr3", "antikahler_iff", "prop_pr4_pr5"}) {
    add(id, standard_j, Generator::j_invariant, pass);
    add(id, all, Generator::random, hnm);
  }
  add("prop_pr3", {"holomorphic"}, Generator::levi_civita, pass);
  add("antikahler_iff", {"holomorphic"}, Generator::levi_civita, pass);
  add("statistical", anti_kahler_j0, Generator::j_invariant_codazzi, pass);
  add("statistical", {"flat4"}, Generator::j_invariant, pass);
  add("statistical", all, Generator::random, hnm);
  return cases;
}

struct CaseOutcome {
  PaperCase spec;
  std::uint64_t seed;
  CheckReport report;
};

struct PaperRow {
  std::string check;
  Verdict verdict = Verdict::pass;
  /// Worst residual over the cases expected to pass.
  double max_residual = 0.0;
  int cases = 0;
  int negative_cases = 0;
  std::vector<CaseOutcome> mismatches;
};

struct PaperSummary {
  std::uint64_t seed;
  int points;
  double tolerance;
  std::vector<PaperRow> rows;

  bool all_passed() const {
    return std::all_of(rows.begin(), rows.end(), [](const PaperRow& r) { return r.verdict == Verdict::pass; });
  }
};

/// Runs one case with seed index `r`: a derived seed drives both the sample
/// points and any generated field.
inline CaseOutcome run_paper_case(const PaperCase& pc, const Structure& base, std::uint64_t seed, int r, int points,
                                  double tol) {
  const std::uint64_t case_seed = derive_seed(seed, static_cast<std::uint64_t>(r));
  const Structure s = pc.generator == Generator::perturbation ? perturbed_structure(base, connection_seed(case_seed)) : base;
  const SampleSet samples = sample_structure_points(s, points, case_seed);
  CheckReport report = [&] {
    if (pc.generator == Generator::none || pc.generator == Generator::perturbation)
      return run_check(pc.check, s, nullptr, samples, tol);
    const ConnectionField c = make_connection(pc.generator, s, connection_seed(case_seed));
    return run_check(pc.check, s, &c, samples, tol);
  }();
  return {pc, case_seed, std::move(report)};
}

/// Every check over the catalog and kPaperSeeds derived seeds.
inline PaperSummary verify_paper(std::uint64_t seed, int points, double tol) {
  PaperSummary summary{seed, points, tol, {}};
  std::vector<Structure> structures;
  for (const auto& e : catalog()) structures.push_back(e.build());
  auto structure = [&](const std::string& name) -> const Structure& {
    for (const auto& s : structures)
      if (s.name == name) return s;
    throw InvalidInputError("unknown catalog structure '" + name + "'");
  };
  const std::vector<PaperCase> cases = paper_cases();
  for (const auto& info : check_registry()) {
    PaperRow row{info.id};
    for (const auto& pc : cases) {
      if (pc.check != info.id) continue;
      for (int r = 0; r < kPaperSeeds; ++r) {
        CaseOutcome out = run_paper_case(pc, structure(pc.structure), seed, r, points, tol);
        ++row.cases;
        if (pc.expected != Verdict::pass) ++row.negative_cases;
        if (out.report.verdict != pc.expected)
          row.mismatches.push_back(std::move(out));
        else if (pc.expected == Verdict::pass)
          row.max_residual = std::max(row.max_residual, out.report.max_residual);
      }
    }
    row.verdict = row.mismatches.empty() ? Verdict::pass : Verdict::fail;
    summary.rows.push_back(std::move(row));
  }
  return summary;
}

}  // namespace norden
