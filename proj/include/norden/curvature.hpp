#pragma once

// Curvature of arbitrary linear connections, computed from the analytic
// first partials of the coefficients.

#include <span>
#include <vector>

#include "norden/conjugation.hpp"
#include "norden/connections.hpp"
#include "norden/geometry.hpp"
#include "norden/report.hpp"

namespace norden {

/// R^l_ijk = d_i Gamma^l_jk - d_j Gamma^l_ik + Gamma^l_im Gamma^m_jk - Gamma^l_jm Gamma^m_ik,
/// stored (l, i, j, k), so that R(d_i, d_j) d_k = R^l_ijk d_l.
inline TensorValue curvature(const ConnectionJet& c, Point point = {}) {
  const int d = c.dim();
  TensorValue r(1, 3, d, std::move(point));
  for (int l = 0; l < d; ++l)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
          double v = c.derivative(i, l, j, k) - c.derivative(j, l, i, k);
          for (int m = 0; m < d; ++m) v += c.value(l, i, m) * c.value(m, j, k) - c.value(l, j, m) * c.value(m, i, k);
          r(l, i, j, k) = v;
        }
  return r;
}

inline TensorValue curvature(const ConnectionField& c, std::span<const double> p) {
  return curvature(c.jet(p), Point(p.begin(), p.end()));
}

/// R_ijkm = g_lm R^l_ijk.
inline TensorValue lower_curvature(const Eigen::MatrixXd& g, const TensorValue& r) {
  const int d = r.dim();
  TensorValue out(0, 4, d, r.point());
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int m = 0; m < d; ++m) {
          double v = 0.0;
          for (int l = 0; l < d; ++l) v += g(l, m) * r(l, i, j, k);
          out(i, j, k, m) = v;
        }
  return out;
}

inline TensorValue lower_curvature(const MetricField& g, const TensorValue& r) {
  return lower_curvature(g.values(r.point()), r);
}

/// Checks R(X,Y,JZ,W) = -R*(X,Y,W,JZ) = R^J(X,Y,Z,JW) on coordinate fields,
/// all three tensors lowered with g.
inline CheckReport verify_theorem2(const ConnectionField& c, const Structure& s, const SampleSet& samples,
                                   double tol = kDefaultTolerance) {
  const int d = s.dim();
  ResidualTracker t;
  for (const auto& p : samples.points) {
    const Frame f = make_frame(s, p);
    const ConjugateSet k = conjugates(c.jet(p), f);
    const Eigen::MatrixXd g = f.g.values();
    const Eigen::MatrixXd jm = f.J.values();
    const TensorValue r = lower_curvature(g, curvature(k.base));
    const TensorValue rs = lower_curvature(g, curvature(k.star));
    const TensorValue rj = lower_curvature(g, curvature(k.jconj));
    std::vector<double> a, b, cc;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int z = 0; z < d; ++z)
          for (int w = 0; w < d; ++w) {
            double va = 0.0, vb = 0.0, vc = 0.0;
            for (int m = 0; m < d; ++m) {
              va += jm(m, z) * r(i, j, m, w);
              vb -= jm(m, z) * rs(i, j, w, m);
              vc += jm(m, w) * rj(i, j, z, m);
            }
            a.push_back(va);
            b.push_back(vb);
            cc.push_back(vc);
          }
    t.add("R(X,Y,JZ,W) = -R*(X,Y,W,JZ)", scaled_difference(a, b));
    t.add("R(X,Y,JZ,W) = RJ(X,Y,Z,JW)", scaled_difference(a, cc));
  }
  return CheckReport{"theorem2", t.max() <= tol ? Verdict::pass : Verdict::fail, t.max(), tol, samples.size(),
                     samples.seed, t.entries()};
}

}  // namespace norden
