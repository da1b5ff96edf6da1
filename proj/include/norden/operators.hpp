#pragma once

// Lie derivative of (0,2) fields, the Tachibana operator, the Nijenhuis
// tensor (bracket form and connection form) and cubic forms.

#include <span>
#include <string>
#include <vector>

#include "norden/connections.hpp"
#include "norden/geometry.hpp"
#include "norden/report.hpp"

namespace norden {

/// (L_V T)_ij = V^k d_k T_ij + T_kj d_i V^k + T_ik d_j V^k for a vector field
/// given by 1-jets of its components.
inline TensorValue lie_derivative_02(std::span<const Jet1> v, const MatrixJet& t, Point point = {}) {
  const int d = t.rows();
  TensorValue out(0, 2, d, std::move(point));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double s = 0.0;
      for (int k = 0; k < d; ++k)
        s += v[k].value * t(i, j).grad[k] + t(k, j).value * v[k].grad[i] + t(i, k).value * v[k].grad[j];
      out(i, j) = s;
    }
  return out;
}

inline TensorValue lie_derivative_02(std::span<const Expr> v, const MetricField& t, std::span<const double> p) {
  if (static_cast<int>(v.size()) != t.dim()) throw InvalidInputError("vector field needs one component per coordinate");
  std::vector<Jet1> vj;
  for (const auto& e : v) vj.push_back(jet1_of_expr(e, p));
  return lie_derivative_02(vj, t.jet(p), Point(p.begin(), p.end()));
}

/// (Phi_J rho)_kij = (L_{J d_k} rho - L_{d_k}(rho o J))_ij, stored (k, i, j),
/// where J d_k has components J^m_k and (rho o J)_ij = J^m_i rho_mj.
inline TensorValue tachibana(const MatrixJet& rho, const MatrixJet& j, Point point = {}) {
  const int d = rho.rows();
  const MatrixJet rho_j = twin(rho, j);
  TensorValue out(0, 3, d, point);
  std::vector<Jet1> jx(static_cast<std::size_t>(d));
  std::vector<Jet1> x(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) {
    for (int m = 0; m < d; ++m) {
      jx[m] = first_order(j(m, k));
      x[m] = Jet1{m == k ? 1.0 : 0.0};
    }
    const TensorValue a = lie_derivative_02(jx, rho);
    const TensorValue b = lie_derivative_02(x, rho_j);
    for (int i = 0; i < d; ++i)
      for (int jj = 0; jj < d; ++jj) out(k, i, jj) = a(i, jj) - b(i, jj);
  }
  return out;
}

/// Phi_J g at a point. Throws InvalidInputError when g is not pure there.
inline TensorValue tachibana(const MetricField& g, const ComplexStructureField& j, std::span<const double> p,
                             double purity_tol = kDefaultTolerance) {
  const double r = purity_residual(g.values(p), j.values(p));
  if (r > purity_tol) throw InvalidInputError("Tachibana operator needs a pure metric (residual " + format_double(r) + ")");
  return tachibana(g.jet(p), j.jet(p), Point(p.begin(), p.end()));
}

/// Phi_J G, the operator applied to the twin metric.
inline TensorValue tachibana_G(const Structure& s, std::span<const double> p) {
  return tachibana(twin(s.g.jet(p), s.J.jet(p)), s.J.jet(p), Point(p.begin(), p.end()));
}

/// N^k_ij = J^m_i d_m J^k_j - J^m_j d_m J^k_i - J^k_m d_i J^m_j + J^k_m d_j J^m_i, stored (k, i, j).
inline TensorValue nijenhuis_bracket(const MatrixJet& j, Point point = {}) {
  const int d = j.rows();
  TensorValue n(1, 2, d, std::move(point));
  for (int k = 0; k < d; ++k)
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        double v = 0.0;
        for (int m = 0; m < d; ++m)
          v += j(m, a).value * j(k, b).grad[m] - j(m, b).value * j(k, a).grad[m] - j(k, m).value * j(m, b).grad[a] +
               j(k, m).value * j(m, a).grad[b];
        n(k, a, b) = v;
      }
  return n;
}

inline TensorValue nijenhuis_bracket(const ComplexStructureField& j, std::span<const double> p) {
  return nijenhuis_bracket(j.jet(p), Point(p.begin(), p.end()));
}

/// N_J(X,Y) = -J{(nabla_{JY} J)JX - (nabla_{JX} J)JY} + J{(nabla_Y J)X - (nabla_X J)Y}
/// for a torsion-free connection; throws InvalidInputError otherwise.
inline TensorValue nijenhuis_via_connection(const ConnectionJet& c, const MatrixJet& j, Point point = {},
                                            double torsion_tol = kDefaultTolerance) {
  const double tr = torsion_residual(c);
  if (tr > torsion_tol)
    throw InvalidInputError("connection form of N_J needs a torsion-free connection (torsion " + format_double(tr) +
                            ")");
  const int d = c.dim();
  const TensorValue dj = covariant_derivative_11(c, j);
  const Eigen::MatrixXd jm = j.values();
  TensorValue n(1, 2, d, std::move(point));
  std::vector<double> inner(static_cast<std::size_t>(d));
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y) {
      for (int p = 0; p < d; ++p) {
        double t1 = 0.0, t2 = 0.0;
        for (int a = 0; a < d; ++a)
          for (int b = 0; b < d; ++b) {
            t1 += jm(a, y) * dj(a, p, b) * jm(b, x);
            t2 += jm(a, x) * dj(a, p, b) * jm(b, y);
          }
        inner[p] = -(t1 - t2) + (dj(y, p, x) - dj(x, p, y));
      }
      for (int k = 0; k < d; ++k) {
        double v = 0.0;
        for (int p = 0; p < d; ++p) v += jm(k, p) * inner[p];
        n(k, x, y) = v;
      }
    }
  return n;
}

inline TensorValue nijenhuis_via_connection(const ConnectionField& c, const ComplexStructureField& j,
                                            std::span<const double> p) {
  return nijenhuis_via_connection(c.jet(p), j.jet(p), Point(p.begin(), p.end()));
}

/// Checks Phi_J G (X,Y,Z) = Phi_J g (X,JY,Z) + g(N_J(X,Y), Z).
inline CheckReport verify_gc4(const Structure& s, const SampleSet& samples, double tol = kDefaultTolerance) {
  const int d = s.dim();
  double worst = 0.0;
  for (const auto& p : samples.points) {
    const MatrixJet g = s.g.jet(p);
    const MatrixJet j = s.J.jet(p);
    const TensorValue phi_g = tachibana(g, j);
    const TensorValue phi_G = tachibana(twin(g, j), j);
    const TensorValue n = nijenhuis_bracket(j);
    std::vector<double> lhs, rhs;
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i)
        for (int jj = 0; jj < d; ++jj) {
          double r = 0.0;
          for (int a = 0; a < d; ++a) r += j(a, i).value * phi_g(k, a, jj) + g(a, jj).value * n(a, k, i);
          lhs.push_back(phi_G(k, i, jj));
          rhs.push_back(r);
        }
    worst = std::max(worst, scaled_difference(lhs, rhs));
  }
  CheckReport r{"gc4", worst <= tol ? Verdict::pass : Verdict::fail, worst, tol, samples.size(), samples.seed};
  r.breakdown.push_back({"Phi G(X,Y,Z) = Phi g(X,JY,Z) + g(N(X,Y),Z)", worst});
  return r;
}

/// F_xyz = (nabla_z rho)_xy.
inline TensorValue cubic_form(const ConnectionJet& c, const MatrixJet& rho, Point point = {}) {
  const TensorValue nr = covariant_derivative_02(c, rho);
  const int d = c.dim();
  TensorValue f(0, 3, d, std::move(point));
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y)
      for (int z = 0; z < d; ++z) f(x, y, z) = nr(z, x, y);
  return f;
}

inline TensorValue cubic_form(const ConnectionField& c, const MetricField& rho, std::span<const double> p) {
  return cubic_form(c.jet(p), rho.jet(p), Point(p.begin(), p.end()));
}

}  // namespace norden
