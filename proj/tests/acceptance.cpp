// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "norden/norden.hpp"
#include "norden/report_io.hpp"
#include "oracles.hpp"

using namespace norden;

namespace {

constexpr std::uint64_t kSeed = 42;
constexpr int kPoints = 50;

constexpr double kKleinTol = 1e-8;
constexpr double kCurvatureTol = 1e-7;
constexpr double kAntiKahlerZero = 1e-9;
constexpr double kAntiKahlerNonzero = 0.05;
constexpr double kCubicTol = 1e-9;
constexpr double kSuiteTol = 1e-8;
constexpr double kGc4Tol = 1e-8;
constexpr double kNijenhuisNonzero = 0.01;
constexpr double kDerivativeRel = 1e-4;
constexpr double kCurvatureRel = 1e-4;
constexpr double kBracketAbs = 1e-3;

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("[%s] %d %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

std::vector<Structure> all_structures() {
  std::vector<Structure> out;
  for (const auto& e : catalog()) out.push_back(e.build());
  return out;
}

std::vector<Structure> klein_matrix() { return {flat_model(1), flat_model(2), holomorphic_metric_example()}; }

/// Seeds for case r: the points use case_seed and the connection a child of it.
std::uint64_t case_seed(int r) { return derive_seed(kSeed, static_cast<std::uint64_t>(r)); }

double worst_over_random_connections(const std::vector<Structure>& structures, int count,
                                     const std::function<CheckReport(const ConnectionField&, const Structure&,
                                                                     const SampleSet&)>& check,
                                     bool& all_pass) {
  double worst = 0;
  all_pass = true;
  for (const auto& s : structures)
    for (int r = 0; r < count; ++r) {
      const ConnectionField c = random_connection(s.chart(), connection_seed(case_seed(r)));
      const CheckReport rep = check(c, s, sample_structure_points(s, kPoints, case_seed(r)));
      worst = std::max(worst, rep.max_residual);
      all_pass = all_pass && rep.passed();
    }
  return worst;
}

Outcome klein() {
  bool ok = false;
  const double worst = worst_over_random_connections(
      klein_matrix(), 100,
      [](const ConnectionField& c, const Structure& s, const SampleSet& p) { return verify_klein_group(c, s, p, kKleinTol); },
      ok);
  return {ok, "flat2, flat4, holomorphic x 100 random connections, 9 identities, worst " + sci(worst) + " <= " +
                  sci(kKleinTol)};
}

Outcome curvature_relation() {
  bool ok = false;
  const double worst = worst_over_random_connections(
      klein_matrix(), 100,
      [](const ConnectionField& c, const Structure& s, const SampleSet& p) {
        return verify_theorem2(c, s, p, kCurvatureTol);
      },
      ok);
  return {ok, "same matrix, 50 points, worst " + sci(worst) + " <= " + sci(kCurvatureTol)};
}

struct RawAntiKahler {
  double nabla_j = 0;
  double phi = 0;
};

RawAntiKahler raw_anti_kahler(const Structure& s, const std::vector<Point>& points) {
  RawAntiKahler r;
  const ConnectionField lc = levi_civita(s.g);
  for (const auto& p : points) {
    r.nabla_j = std::max(r.nabla_j, covariant_derivative_11(lc, s.J, p).max_abs());
    r.phi = std::max(r.phi, tachibana(s.g, s.J, p).max_abs());
  }
  return r;
}

Outcome anti_kahler_equivalence() {
  const Structure h = holomorphic_metric_example();
  const RawAntiKahler hr = raw_anti_kahler(h, sample_structure_points(h, kPoints, kSeed).points);
  const Structure n = non_cr_example();
  const RawAntiKahler nr = raw_anti_kahler(n, {{1.0, 0.5}});
  bool ok = hr.nabla_j <= kAntiKahlerZero && hr.phi <= kAntiKahlerZero && nr.nabla_j >= kAntiKahlerNonzero &&
            nr.phi >= kAntiKahlerNonzero;
  int disagreements = 0;
  for (const auto& s : all_structures()) {
    const RawAntiKahler r = raw_anti_kahler(s, sample_structure_points(s, kPoints, kSeed).points);
    if ((r.nabla_j <= kAntiKahlerZero) != (r.phi <= kAntiKahlerZero)) ++disagreements;
  }
  ok = ok && disagreements == 0;
  return {ok, "holomorphic max|nabla J| " + sci(hr.nabla_j) + ", max|Phi g| " + sci(hr.phi) + "; noncr at (1,0.5) " +
                  sci(nr.nabla_j) + ", " + sci(nr.phi) + "; disagreements " + std::to_string(disagreements) + "/" +
                  std::to_string(catalog().size())};
}

Outcome cubic_duality() {
  bool ok = false;
  const double worst = worst_over_random_connections(
      all_structures(), 20,
      [](const ConnectionField& c, const Structure& s, const SampleSet& p) { return verify_cubic_form(c, s, p, kCubicTol); },
      ok);
  return {ok, "5 structures x 20 random connections, worst " + sci(worst) + " <= " + sci(kCubicTol)};
}

struct SuiteRow {
  std::string check;
  Generator satisfying;
  std::function<bool(const CatalogEntry&)> applies;
  Verdict generic_expected;
};

Outcome proposition_suite() {
  auto any = [](const CatalogEntry&) { return true; };
  auto standard = [](const CatalogEntry& e) { return e.standard_j; };
  auto codazzi_j0 = [](const CatalogEntry& e) { return e.j_invariant_codazzi; };
  const Verdict hnm = Verdict::hypothesis_not_met;
  const std::vector<SuiteRow> rows = {
      {"prop31", Generator::codazzi, any, hnm},
      {"prop32", Generator::codazzi, any, Verdict::pass},
      {"corollary_torsions", Generator::j_invariant_codazzi, codazzi_j0, hnm},
      {"prop_dagger_J", Generator::codazzi, any, hnm},
      {"prop_pr3", Generator::j_invariant, standard, hnm},
      {"antikahler_iff", Generator::j_invariant, standard, hnm},
      {"prop_pr4_pr5", Generator::j_invariant, standard, hnm},
      {"statistical", Generator::j_invariant_codazzi, codazzi_j0, hnm},
  };
  int runs = 0, bad = 0, false_pass = 0;
  double worst = 0;
  std::string first_bad;
  for (const auto& row : rows)
    for (const auto& e : catalog()) {
      const Structure s = e.build();
      for (int r = 0; r < 20; ++r) {
        const SampleSet samples = sample_structure_points(s, kPoints, case_seed(r));
        const std::uint64_t cs = connection_seed(case_seed(r));
        auto run = [&](Generator g, Verdict expected) {
          const ConnectionField c = make_connection(g, s, cs);
          const CheckReport rep = run_check(row.check, s, &c, samples, kSuiteTol);
          ++runs;
          if (expected == Verdict::pass && rep.verdict == Verdict::pass) worst = std::max(worst, rep.max_residual);
          if (expected != Verdict::pass && rep.verdict == Verdict::pass) ++false_pass;
          if (rep.verdict != expected) {
            ++bad;
            if (first_bad.empty())
              first_bad = row.check + " on " + s.name + " (" + std::string(to_string(g)) + "): " +
                          std::string(to_string(rep.verdict));
          }
        };
        if (row.applies(e)) run(row.satisfying, Verdict::pass);
        run(Generator::random, row.generic_expected);
      }
    }
  std::string detail = "8 checks, " + std::to_string(runs) + " runs, mismatches " + std::to_string(bad) +
                       ", false passes " + std::to_string(false_pass) + ", worst passing residual " + sci(worst);
  if (!first_bad.empty()) detail += "; first mismatch " + first_bad;
  return {bad == 0, detail};
}

Outcome gc4() {
  double worst = 0;
  bool ok = true;
  for (const auto& s : all_structures()) {
    const CheckReport r = verify_gc4(s, sample_structure_points(s, kPoints, kSeed), kGc4Tol);
    worst = std::max(worst, r.max_residual);
    ok = ok && r.passed();
  }
  const Structure n = nonintegrable_J_example();
  double nj = 0;
  for (const auto& p : sample_structure_points(n, kPoints, kSeed).points)
    nj = std::max(nj, nijenhuis_bracket(n.J, p).max_abs());
  ok = ok && nj >= kNijenhuisNonzero;
  return {ok, "all 5 structures, worst " + sci(worst) + " <= " + sci(kGc4Tol) + "; nonintegrableJ max|N_J| " + sci(nj)};
}

Outcome oracle_cross_checks() {
  // symbolic derivatives
  SplitMix64 rng(kSeed);
  double deriv = 0;
  for (int t = 0; t < 100; ++t) {
    const int dim = t % 2 == 0 ? 2 : 4;
    const Expr e = random_polynomial(dim, rng) * sin(random_polynomial(dim, rng, 1)) +
                   exp(random_polynomial(dim, rng, 1)) / (Expr::constant(3.0) + pow(random_polynomial(dim, rng, 1), 2));
    std::vector<double> p(static_cast<std::size_t>(dim));
    for (auto& x : p) x = rng.uniform(-1, 1);
    for (int i = 0; i < dim; ++i) {
      const double exact = eval(differentiate(e, i), p);
      const double fd = oracle::partial([&](const oracle::Vec& q) { return eval(e, q); }, p, i);
      deriv = std::max(deriv, std::abs(exact - fd) / std::max(1.0, std::abs(exact)));
    }
  }
  // curvature
  double curv = 0;
  auto curvature_error = [&](const ConnectionField& c, const std::vector<double>& p) {
    const auto exact = oracle::values(curvature(c, p));
    curv = std::max(curv, oracle::max_abs_diff(exact, oracle::curvature(c, p).v) / std::max(1.0, oracle::max_abs(exact)));
  };
  const Structure h = holomorphic_metric_example();
  curvature_error(levi_civita(h.g), {0.3, 0.2});
  for (const auto& s : all_structures())
    for (int r = 0; r < 5; ++r) {
      const ConnectionField c = random_connection(s.chart(), connection_seed(case_seed(r)));
      const std::vector<double> p = sample_structure_points(s, 1, case_seed(r)).points.front();
      curvature_error(c, p);
      curvature_error(g_conjugate(c, s.g), p);
      curvature_error(J_conjugate(c, s.J), p);
    }
  // Nijenhuis bracket
  const Structure n = nonintegrable_J_example();
  double bracket = 0;
  for (const auto& p : sample_structure_points(n, 20, kSeed).points)
    bracket = std::max(bracket, oracle::max_abs_diff(oracle::values(nijenhuis_bracket(n.J, p)),
                                                     oracle::nijenhuis(oracle::matrix_of(n.J.components(), 4), p).v));
  const bool ok = deriv <= kDerivativeRel && curv <= kCurvatureRel && bracket <= kBracketAbs;
  return {ok, "derivatives rel " + sci(deriv) + " <= " + sci(kDerivativeRel) + ", curvature rel " + sci(curv) +
                  " <= " + sci(kCurvatureRel) + ", N_J abs " + sci(bracket) + " <= " + sci(kBracketAbs)};
}

Outcome determinism() {
  const PaperSummary a = verify_paper(kSeed, kPoints, kDefaultTolerance);
  const std::string ja = to_json(a).dump(2);
  const std::string jb = to_json(verify_paper(kSeed, kPoints, kDefaultTolerance)).dump(2);
  const bool same = ja == jb;
  return {same && a.all_passed(), std::string("verify-paper --seed 42 twice: ") +
                                      (same ? "byte-identical" : "outputs differ") + " (" +
                                      std::to_string(ja.size()) + " bytes), all rows " +
                                      (a.all_passed() ? "pass" : "NOT passing")};
}

}  // namespace

int main() {
  report(1, "Klein group of conjugations", klein);
  report(2, "curvature relation R(X,Y,JZ,W) = -R*(X,Y,W,JZ) = RJ(X,Y,Z,JW)", curvature_relation);
  report(3, "anti-Kähler equivalence", anti_kahler_equivalence);
  report(4, "cubic-form duality", cubic_duality);
  report(5, "proposition suite", proposition_suite);
  report(6, "twin Tachibana identity with N_J term", gc4);
  report(7, "oracle cross-checks", oracle_cross_checks);
  report(8, "determinism", determinism);
  std::printf("%s: %d of 8 criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
