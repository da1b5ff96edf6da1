#pragma once

// Codazzi, statistical and anti-Kähler predicates, and the verification of
// each relation between a connection, its conjugates and the structure.
//
// Every verify_* function evaluates its hypotheses at every sample point
// first. If any hypothesis residual exceeds the tolerance the report says
// hypothesis-not-met and carries that residual. Equivalences are checked as
// agreement of pass/fail verdicts at each point.

#include <algorithm>
#include <initializer_list>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "norden/conjugation.hpp"
#include "norden/connections.hpp"
#include "norden/curvature.hpp"
#include "norden/geometry.hpp"
#include "norden/operators.hpp"
#include "norden/report.hpp"

namespace norden {

// ---- pointwise residuals -------------------------------------------------

/// (nabla_k rho)_ij against (nabla_i rho)_kj.
inline double codazzi_metric_residual(const ConnectionJet& c, const MatrixJet& rho) {
  const TensorValue a = covariant_derivative_02(c, rho);
  const int d = c.dim();
  std::vector<double> lhs, rhs;
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        lhs.push_back(a(k, i, j));
        rhs.push_back(a(i, k, j));
      }
  return scaled_difference(lhs, rhs);
}

/// (nabla_k J)^i_j against (nabla_j J)^i_k.
inline double codazzi_J_residual(const ConnectionJet& c, const MatrixJet& j) {
  const TensorValue a = covariant_derivative_11(c, j);
  const int d = c.dim();
  std::vector<double> lhs, rhs;
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int jj = 0; jj < d; ++jj) {
        lhs.push_back(a(k, i, jj));
        rhs.push_back(a(jj, i, k));
      }
  return scaled_difference(lhs, rhs);
}

/// Torsion-free and Codazzi: the larger of the two residuals.
inline double statistical_residual(const ConnectionJet& c, const MatrixJet& rho) {
  return std::max(torsion_residual(c), codazzi_metric_residual(c, rho));
}

/// Largest deviation of F_xyz from F_yxz and F_zyx.
inline double total_symmetry_residual(const TensorValue& f) {
  const int d = f.dim();
  std::vector<double> a, b, c;
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y)
      for (int z = 0; z < d; ++z) {
        a.push_back(f(x, y, z));
        b.push_back(f(y, x, z));
        c.push_back(f(z, y, x));
      }
  return std::max(scaled_difference(a, b), scaled_difference(a, c));
}

inline double torsion_difference(const ConnectionJet& a, const ConnectionJet& b) {
  return scaled_difference(torsion(a).data(), torsion(b).data());
}

/// Residuals of nabla^{LC(g)} J = 0 and Phi_J g = 0 at one point.
struct AntiKahlerResiduals {
  double levi_civita = 0.0;
  double tachibana = 0.0;
};

inline AntiKahlerResiduals anti_kahler_residuals(const Frame& f) {
  const ConnectionJet lc = levi_civita_jet(f.g, f.g_inv);
  const double scale = std::max({detail::max_abs_value(f.g), detail::max_abs_first_derivative(f.g),
                                 detail::max_abs_value(f.J), detail::max_abs_first_derivative(f.J)});
  return {j_invariance_residual(lc, f.J), scaled_magnitude(tachibana(f.g, f.J).data(), scale)};
}

// ---- report assembly ------------------------------------------------------

namespace detail {

/// Pointwise agreement of several pass/fail verdicts. A point where all
/// sub-residuals pass contributes the largest of them, a point where all
/// fail contributes 0, and a disagreeing point contributes the smallest
/// failing residual, so the aggregate exceeds tol iff some point disagrees.
class Agreement {
 public:
  explicit Agreement(std::string name) : name_(std::move(name)) {}

  void add(std::initializer_list<std::pair<std::string_view, double>> subs, double tol) {
    bool any_pass = false, any_fail = false;
    double max_pass = 0.0;
    double min_fail = std::numeric_limits<double>::infinity();
    for (const auto& [label, r] : subs) {
      raw_.add(label, r);
      if (r <= tol) {
        any_pass = true;
        max_pass = std::max(max_pass, r);
      } else {
        any_fail = true;
        min_fail = std::min(min_fail, r);
      }
    }
    const double point = any_pass && any_fail ? min_fail : any_fail ? 0.0 : max_pass;
    residual_ = std::max(residual_, point);
  }

  const std::string& name() const { return name_; }
  double residual() const { return residual_; }
  const ResidualTracker& raw() const { return raw_; }

 private:
  std::string name_;
  double residual_ = 0.0;
  ResidualTracker raw_;
};

struct Assembly {
  std::string check;
  double tol;
  const SampleSet& samples;
  ResidualTracker hypotheses;
  ResidualTracker conclusions;
  std::vector<ResidualEntry> info;

  void add_agreement(const Agreement& a) {
    conclusions.add(a.name(), a.residual());
    for (const auto& e : a.raw().entries()) info.push_back({a.name() + " / " + e.name, e.residual});
  }

  CheckReport finish() const {
    CheckReport r{check, Verdict::pass, 0.0, tol, samples.size(), samples.seed};
    for (const auto& e : hypotheses.entries()) r.breakdown.push_back({"hypothesis: " + e.name, e.residual});
    for (const auto& e : conclusions.entries()) r.breakdown.push_back(e);
    for (const auto& e : info) r.breakdown.push_back({"verdict input: " + e.name, e.residual});
    if (hypotheses.max() > tol) {
      r.verdict = Verdict::hypothesis_not_met;
      r.max_residual = hypotheses.max();
      for (const auto& e : hypotheses.entries())
        if (e.residual > tol) r.note += (r.note.empty() ? "hypothesis failed: " : ", ") + e.name;
      return r;
    }
    r.max_residual = conclusions.max();
    r.verdict = r.max_residual <= tol ? Verdict::pass : Verdict::fail;
    return r;
  }
};

inline CheckReport single_residual_report(std::string check, std::string label, double worst, double tol,
                                          const SampleSet& samples) {
  CheckReport r{std::move(check), worst <= tol ? Verdict::pass : Verdict::fail, worst, tol, samples.size(),
                samples.seed};
  r.breakdown.push_back({std::move(label), worst});
  return r;
}

}  // namespace detail

// ---- predicates -----------------------------------------------------------

inline CheckReport check_codazzi_metric(const ConnectionField& c, const MetricField& rho, const SampleSet& samples,
                                        double tol = kDefaultTolerance) {
  double worst = 0.0;
  for (const auto& p : samples.points) worst = std::max(worst, codazzi_metric_residual(c.jet(p), rho.jet(p)));
  return detail::single_residual_report("codazzi_metric", "(nabla_Z rho)(X,Y) - (nabla_X rho)(Z,Y)", worst, tol,
                                        samples);
}

inline CheckReport check_codazzi_J(const ConnectionField& c, const ComplexStructureField& j, const SampleSet& samples,
                                   double tol = kDefaultTolerance) {
  double worst = 0.0;
  for (const auto& p : samples.points) worst = std::max(worst, codazzi_J_residual(c.jet(p), j.jet(p)));
  return detail::single_residual_report("codazzi_J", "(nabla_Z J)X - (nabla_X J)Z", worst, tol, samples);
}

/// Torsion-free and Codazzi with rho. A torsionful connection fails and the
/// torsion residual is reported.
inline CheckReport check_statistical(const ConnectionField& c, const MetricField& rho, const SampleSet& samples,
                                     double tol = kDefaultTolerance) {
  ResidualTracker t;
  for (const auto& p : samples.points) {
    const ConnectionJet cj = c.jet(p);
    t.add("torsion", torsion_residual(cj));
    t.add("codazzi", codazzi_metric_residual(cj, rho.jet(p)));
  }
  CheckReport r{"statistical_structure", t.max() <= tol ? Verdict::pass : Verdict::fail, t.max(), tol,
                samples.size(), samples.seed, t.entries()};
  if (t.get("torsion") > tol) r.note = "connection has torsion";
  return r;
}

/// Passes iff both nabla^{LC(g)} J and Phi_J g vanish; both are reported.
inline CheckReport check_anti_kahler(const Structure& s, const SampleSet& samples, double tol = kDefaultTolerance) {
  ResidualTracker t;
  for (const auto& p : samples.points) {
    const AntiKahlerResiduals a = anti_kahler_residuals(make_frame(s, p));
    t.add("nabla^LC(g) J", a.levi_civita);
    t.add("Phi_J g", a.tachibana);
  }
  CheckReport r{"anti_kahler", t.max() <= tol ? Verdict::pass : Verdict::fail, t.max(), tol, samples.size(),
                samples.seed, t.entries()};
  if ((t.get("nabla^LC(g) J") <= tol) != (t.get("Phi_J g") <= tol))
    r.note = "nabla^LC(g) J and Phi_J g disagree";
  return r;
}

// ---- relations ------------------------------------------------------------

/// F = -F* and F(X,Y,Z) = g(X, (nabla* - nabla)_Z Y) for the pair (nabla, g).
inline CheckReport verify_cubic_form(const ConnectionField& c, const Structure& s, const SampleSet& samples,
                                     double tol = kDefaultTolerance) {
  const int d = s.dim();
  ResidualTracker t;
  for (const auto& p : samples.points) {
    const Frame f = make_frame(s, p);
    const ConnectionJet base = c.jet(p);
    const ConnectionJet star = g_conjugate_jet(base, f);
    const TensorValue fc = cubic_form(base, f.g);
    const TensorValue fs = cubic_form(star, f.g);
    std::vector<double> a, minus_star, via;
    for (int x = 0; x < d; ++x)
      for (int y = 0; y < d; ++y)
        for (int z = 0; z < d; ++z) {
          double v = 0.0;
          for (int m = 0; m < d; ++m) v += f.g(x, m).value * (star.value(m, z, y) - base.value(m, z, y));
          a.push_back(fc(x, y, z));
          minus_star.push_back(-fs(x, y, z));
          via.push_back(v);
        }
    t.add("F = -F*", scaled_difference(a, minus_star));
    t.add("F(X,Y,Z) = g(X,(nabla* - nabla)_Z Y)", scaled_difference(a, via));
  }
  return CheckReport{"cubic_form", t.max() <= tol ? Verdict::pass : Verdict::fail, t.max(), tol, samples.size(),
                     samples.seed, t.entries()};
}

/// Consequences of (nabla, G) being a Codazzi pair.
inline CheckReport verify_prop31(const ConnectionField& c, const Structure& s, const SampleSet& samples,
                                 double tol = kDefaultTolerance) {
  const int d = s.dim();
  detail::Assembly out{"prop31", tol, samples};
  detail::Agreement iff("iii: T = T* iff (nabla*, J) Codazzi");
  for (const auto& p : samples.points) {
    const Frame f = make_frame(s, p);
    const ConnectionJet base = c.jet(p);
    out.hypotheses.add("(nabla, G) Codazzi", codazzi_metric_residual(base, f.G));

    const ConnectionJet star = g_conjugate_jet(base, f);
    const Eigen::MatrixXd jm = f.J.values();
    out.conclusions.add("i: F = nabla G totally symmetric", total_symmetry_residual(cubic_form(base, f.G)));

    const TensorValue ds = covariant_derivative_02(star, f.G);
    std::vector<double> l2, r2;
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          double a = 0.0, b = 0.0;
          for (int m = 0; m < d; ++m) {
            a += jm(m, k) * ds(m, i, j);
            b += jm(m, i) * ds(m, k, j);
          }
          l2.push_back(a);
          r2.push_back(b);
        }
    out.conclusions.add("ii: (nabla*_JZ G)(X,Y) = (nabla*_JX G)(Z,Y)", scaled_difference(l2, r2));

    const TensorValue dj = covariant_derivative_11(star, f.J);
    const TensorValue t_base = torsion(base);
    const TensorValue t_star = torsion(star);
    std::vector<double> l3, r3;
    for (int q = 0; q < d; ++q)
      for (int k = 0; k < d; ++k)
        for (int i = 0; i < d; ++i) {
          double v = t_star(q, k, i);
          for (int m = 0; m < d; ++m) v -= jm(q, m) * (dj(k, m, i) - dj(i, m, k));
          l3.push_back(v);
          r3.push_back(t_base(q, k, i));
        }
    out.conclusions.add("iii: J^-1{(nabla*_Z J)X - (nabla*_X J)Z} + T*(Z,X) = T(Z,X)", scaled_difference(l3, r3));
    iff.add({{"T = T*", torsion_difference(base, star)}, {"(nabla*, J) Codazzi", codazzi_J_residual(star, f.J)}},
            tol);

    out.conclusions.add("iv: T = T of (nabla*)^J", torsion_difference(base, J_conjugate_jet(star, f)));
  }
  out.add_agreement(iff);
  return out.finish();
}

/// Four equivalent statements about (nabla, G), checked as verdict agreement.
inline CheckReport verify_prop32(const ConnectionField& c, const Structure& s, const SampleSet& samples,
                                 double tol = kDefaultTolerance) {
  detail::Assembly out{"prop32", tol, samples};
  detail::Agreement agree("four-way agreement");
  for (const auto& p : samples.points) {
    const Frame f = make_frame(s, p);
    const ConnectionJet base = c.jet(p);
    const ConnectionJet dagger = G_conjugate_jet(base, f);
    agree.add({{"(nabla, G) Codazzi", codazzi_metric_residual(base, f.G)},
               {"(nabla-dagger, G) Codazzi", codazzi_metric_residual(dagger, f.G)},
               {"F-dagger totally symmetric", total_symmetry_residual(cubic_form(dagger, f.G))},
               {"T = T-dagger", torsion_difference(base, dagger)}},
              tol);
  }
  out.add_agreement(agree);
  return out.finish();
}

inline CheckReport verify_corollary_torsions(const ConnectionField& c, const Structure& s, const SampleSet& samples,
                                             double tol = kDefaultTolerance) {
  detail::Assembly out{"corollary_torsions", tol, samples};
  for (const auto& p : samples.points) {
    const Frame f = make_frame(s, p);
    const ConjugateSet k = conjugates(c.jet(p), f);
    out.hypotheses.add("(nabla, G) Codazzi", codazzi_metric_residual(k.base, f.G));
    out.hypotheses.add("(nabla*, J) Codazzi", codazzi_J_residual(k.star, f.J));
    out.conclusions.add("T = T*", torsion_difference(k.base, k.star));
    out.conclusions.add("T = T-dagger", torsion_difference(k.base, k.dagger));
  }
  return out.finish();
}

/// Under (nabla, G) Codazzi:
/// G((nabla-dagger_Z J)X - (nabla-dagger_X J)Z, Y) = (nabla_X g)(Z,Y) - (nabla_Z g)(X,Y).
inline CheckReport verify_prop_dagger_J(const ConnectionField& c, const Structure& s, const SampleSet& samples,
                                        double tol = kDefaultTolerance) {
  const int d = s.dim();
  detail::Assembly out{"prop_dagger_J", tol, samples};
  detail::Agreement iff("(nabla-dagger, J) Codazzi iff (nabla, g) Codazzi");
  for (const auto& p : samples.points) {
    const Frame f = make_frame(s, p);
    const ConnectionJet base = c.jet(p);
    out.hypotheses.add("(nabla, G) Codazzi", codazzi_metric_residual(base, f.G));
    const ConnectionJet dagger = G_conjugate_jet(base, f);
    const TensorValue dj = covariant_derivative_11(dagger, f.J);
    const TensorValue dg = covariant_derivative_02(base, f.g);
    std::vector<double> lhs, rhs;
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          double v = 0.0;
          for (int q = 0; q < d; ++q) v += f.G(q, j).value * (dj(k, q, i) - dj(i, q, k));
          lhs.push_back(v);
          rhs.push_back(dg(i, k, j) - dg(k, i, j));
        }
    out.conclusions.add("G((nabla-dagger_Z J)X - (nabla-dagger_X J)Z, Y) = (nabla_X g)(Z,Y) - (nabla_Z g)(X,Y)",
                        scaled_difference(lhs, rhs));
    iff.add({{"(nabla-dagger, J) Codazzi", codazzi_J_residual(dagger, f.J)},
             {"(nabla, g) Codazzi", codazzi_metric_residual(base, f.g)}},
            tol);
  }
  out.add_agreement(iff);
  return out.finish();
}

namespace detail {

/// (nabla_{JX} G)(Y,Z) and (nabla_X g)(JY,JZ), both indexed (x, y, z).
inline std::pair<std::vector<double>, std::vector<double>> antikahler_condition_sides(const ConnectionJet& c,
                                                                                    const Frame& f) {
  const int d = c.dim();
  const Eigen::MatrixXd jm = f.J.values();
  const TensorValue dG = covariant_derivative_02(c, f.G);
  const TensorValue dg = covariant_derivative_02(c, f.g);
  std::vector<double> lhs, rhs;
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y)
      for (int z = 0; z < d; ++z) {
        double a = 0.0, b = 0.0;
        for (int m = 0; m < d; ++m) {
          a += jm(m, x) * dG(m, y, z);
          for (int n = 0; n < d; ++n) b += jm(m, y) * jm(n, z) * dg(x, m, n);
        }
        lhs.push_back(a);
        rhs.push_back(b);
      }
  return {std::move(lhs), std::move(rhs)};
}

inline void add_torsion_free_codazzi_J(Assembly& out, const ConnectionJet& c, const Frame& f) {
  out.hypotheses.add("torsion-free", torsion_residual(c));
  out.hypotheses.add("(nabla, J) Codazzi", codazzi_J_residual(c, f.J));
}

}  // namespace detail

/// For torsion-free nabla with (nabla, J) Codazzi:
/// Phi_J G (X,Y,Z) = Phi_J g (X,JY,Z) = (nabla_JX G)(Y,Z) - (nabla_X g)(JY,JZ), and N_J = 0.
inline CheckReport verify_prop_pr3(const ConnectionField& c, const Structure& s, const SampleSet& samples,
                                   double tol = kDefaultTolerance) {
  const int d = s.dim();
  detail::Assembly out{"prop_pr3", tol, samples};
  for (const auto& p : samples.points) {
    const Frame f = make_frame(s, p);
    const ConnectionJet base = c.jet(p);
    detail::add_torsion_free_codazzi_J(out, base, f);

    const TensorValue phi_g = tachibana(f.g, f.J);
    const TensorValue phi_G = tachibana(f.G, f.J);
    const auto [dG_jx, dg_jj] = detail::antikahler_condition_sides(base, f);
    std::vector<double> a, b, cc;
    for (int x = 0; x < d; ++x)
      for (int y = 0; y < d; ++y)
        for (int z = 0; z < d; ++z) {
          double v = 0.0;
          for (int m = 0; m < d; ++m) v += f.J(m, y).value * phi_g(x, m, z);
          a.push_back(phi_G(x, y, z));
          b.push_back(v);
          const std::size_t idx = static_cast<std::size_t>((x * d + y) * d + z);
          cc.push_back(dG_jx[idx] - dg_jj[idx]);
        }
    out.conclusions.add("Phi_J G (X,Y,Z) = Phi_J g (X,JY,Z)", scaled_difference(a, b));
    out.conclusions.add("Phi_J g (X,JY,Z) = (nabla_JX G)(Y,Z) - (nabla_X g)(JY,JZ)", scaled_difference(b, cc));
    const double scale = detail::max_abs_value(f.J) * detail::max_abs_first_derivative(f.J);
    out.conclusions.add("N_J = 0", scaled_magnitude(nijenhuis_bracket(f.J).data(), scale));
  }
  return out.finish();
}

/// For torsion-free nabla with (nabla, J) Codazzi, the structure is
/// anti-Kähler iff (nabla_JX G)(Y,Z) = (nabla_X g)(JY,JZ).
inline CheckReport verify_antikahler_iff(const ConnectionField& c, const Structure& s, const SampleSet& samples,
                                         double tol = kDefaultTolerance) {
  detail::Assembly out{"antikahler_iff", tol, samples};
  detail::Agreement agree("anti-Kähler iff (nabla_JX G)(Y,Z) = (nabla_X g)(JY,JZ)");
  for (const auto& p : samples.points) {
    const Frame f = make_frame(s, p);
    const ConnectionJet base = c.jet(p);
    detail::add_torsion_free_codazzi_J(out, base, f);
    const auto [lhs, rhs] = detail::antikahler_condition_sides(base, f);
    const AntiKahlerResiduals ak = anti_kahler_residuals(f);
    agree.add({{"condition", scaled_difference(lhs, rhs)},
               {"anti-Kähler", std::max(ak.levi_civita, ak.tachibana)}},
              tol);
  }
  out.add_agreement(agree);
  return out.finish();
}

/// J-invariance of nabla, nabla* and nabla-dagger agree; for J-invariant
/// nabla also nabla-dagger = nabla* and (nabla, G), (nabla, g) are Codazzi
/// together.
inline CheckReport verify_prop_pr4_pr5(const ConnectionField& c, const Structure& s, const SampleSet& samples,
                                       double tol = kDefaultTolerance) {
  detail::Agreement pr4("pr4: J-invariance of nabla, nabla*, nabla-dagger agree");
  detail::Agreement codazzi("pr5 ii: (nabla, G) Codazzi iff (nabla, g) Codazzi");
  ResidualTracker hyp;
  ResidualTracker pr5;
  for (const auto& p : samples.points) {
    const Frame f = make_frame(s, p);
    const ConjugateSet k = conjugates(c.jet(p), f);
    const double base_inv = j_invariance_residual(k.base, f.J);
    hyp.add("nabla J-invariant", base_inv);
    pr4.add({{"nabla", base_inv},
             {"nabla*", j_invariance_residual(k.star, f.J)},
             {"nabla-dagger", j_invariance_residual(k.dagger, f.J)}},
            tol);
    pr5.add("pr5 i: nabla-dagger = nabla*", connection_difference(k.dagger, k.star));
    codazzi.add({{"(nabla, G)", codazzi_metric_residual(k.base, f.G)}, {"(nabla, g)", codazzi_metric_residual(k.base, f.g)}},
                tol);
  }
  CheckReport r{"prop_pr4_pr5", Verdict::pass, 0.0, tol, samples.size(), samples.seed};
  r.breakdown.push_back({pr4.name(), pr4.residual()});
  for (const auto& e : pr4.raw().entries()) r.breakdown.push_back({"verdict input: " + pr4.name() + " / " + e.name, e.residual});
  if (pr4.residual() > tol) {
    r.verdict = Verdict::fail;
    r.max_residual = pr4.residual();
    return r;
  }
  r.breakdown.push_back({"hypothesis: " + hyp.entries().front().name, hyp.max()});
  if (hyp.max() > tol) {
    r.verdict = Verdict::hypothesis_not_met;
    r.max_residual = hyp.max();
    r.note = "hypothesis failed: nabla J-invariant (pr5 not applicable)";
    return r;
  }
  r.breakdown.push_back(pr5.entries().front());
  r.breakdown.push_back({codazzi.name(), codazzi.residual()});
  r.max_residual = std::max({pr4.residual(), pr5.max(), codazzi.residual()});
  r.verdict = r.max_residual <= tol ? Verdict::pass : Verdict::fail;
  return r;
}

/// For J-invariant torsion-free nabla: the statistical verdicts of (nabla, G),
/// (nabla-dagger, g), (nabla, g), (nabla*, g) agree, and (nabla, G) is
/// statistical iff (nabla*, G) is.
inline CheckReport verify_statistical_theorems(const ConnectionField& c, const Structure& s,
                                               const SampleSet& samples, double tol = kDefaultTolerance) {
  detail::Assembly out{"statistical", tol, samples};
  detail::Agreement four("(nabla,G), (nabla-dagger,g), (nabla,g), (nabla*,g) statistical together");
  detail::Agreement iff("(nabla,G) statistical iff (nabla*,G) statistical");
  for (const auto& p : samples.points) {
    const Frame f = make_frame(s, p);
    const ConjugateSet k = conjugates(c.jet(p), f);
    out.hypotheses.add("nabla J-invariant", j_invariance_residual(k.base, f.J));
    out.hypotheses.add("torsion-free", torsion_residual(k.base));
    const double base_G = statistical_residual(k.base, f.G);
    four.add({{"(nabla, G)", base_G},
              {"(nabla-dagger, g)", statistical_residual(k.dagger, f.g)},
              {"(nabla, g)", statistical_residual(k.base, f.g)},
              {"(nabla*, g)", statistical_residual(k.star, f.g)}},
             tol);
    iff.add({{"(nabla, G)", base_G}, {"(nabla*, G)", statistical_residual(k.star, f.G)}}, tol);
  }
  out.add_agreement(four);
  out.add_agreement(iff);
  return out.finish();
}

}  // namespace norden
