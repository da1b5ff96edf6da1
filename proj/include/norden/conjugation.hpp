#pragma once

// Conjugation of connections relative to g, to the twin metric G and to J,
// and the check that the three conjugations generate a Klein four-group.

#include <span>
#include <string>
#include <utility>

#include "norden/connections.hpp"
#include "norden/geometry.hpp"
#include "norden/report.hpp"

namespace norden {

/// Conjugate of `c` relative to rho:
///   Gamma*^m_kj = rho^mi (d_k rho_ij - Gamma^l_ki rho_lj).
inline ConnectionJet metric_conjugate_jet(const ConnectionJet& c, const MatrixJet& rho, const MatrixJet& rho_inv) {
  const int d = c.dim();
  std::vector<Jet1> lowered(static_cast<std::size_t>(d * d * d));
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        Jet1 acc = partial(rho(i, j), k);
        for (int l = 0; l < d; ++l) acc -= c(l, k, i) * first_order(rho(l, j));
        lowered[static_cast<std::size_t>((k * d + i) * d + j)] = acc;
      }
  ConnectionJet out(d);
  for (int m = 0; m < d; ++m)
    for (int k = 0; k < d; ++k)
      for (int j = 0; j < d; ++j) {
        Jet1 acc{};
        for (int i = 0; i < d; ++i)
          acc += first_order(rho_inv(m, i)) * lowered[static_cast<std::size_t>((k * d + i) * d + j)];
        out(m, k, j) = acc;
      }
  return out;
}

/// J-conjugate J^-1 nabla J with J^-1 = -J:
///   Gamma^p_kj = -J^p_m (d_k J^m_j + Gamma^m_kl J^l_j).
inline ConnectionJet j_conjugate_jet(const ConnectionJet& c, const MatrixJet& j_jet) {
  const int d = c.dim();
  std::vector<Jet1> inner(static_cast<std::size_t>(d * d * d));
  for (int k = 0; k < d; ++k)
    for (int m = 0; m < d; ++m)
      for (int j = 0; j < d; ++j) {
        Jet1 acc = partial(j_jet(m, j), k);
        for (int l = 0; l < d; ++l) acc += c(m, k, l) * first_order(j_jet(l, j));
        inner[static_cast<std::size_t>((k * d + m) * d + j)] = acc;
      }
  ConnectionJet out(d);
  for (int p = 0; p < d; ++p)
    for (int k = 0; k < d; ++k)
      for (int j = 0; j < d; ++j) {
        Jet1 acc{};
        for (int m = 0; m < d; ++m)
          acc -= first_order(j_jet(p, m)) * inner[static_cast<std::size_t>((k * d + m) * d + j)];
        out(p, k, j) = acc;
      }
  return out;
}

inline ConnectionJet g_conjugate_jet(const ConnectionJet& c, const Frame& f) {
  return metric_conjugate_jet(c, f.g, f.g_inv);
}
inline ConnectionJet G_conjugate_jet(const ConnectionJet& c, const Frame& f) {
  return metric_conjugate_jet(c, f.G, f.G_inv);
}
inline ConnectionJet J_conjugate_jet(const ConnectionJet& c, const Frame& f) { return j_conjugate_jet(c, f.J); }

namespace detail {

inline ConnectionField metric_conjugate(const ConnectionField& c, const MetricField& rho, Provenance provenance) {
  return ConnectionField(c.chart(), provenance, std::string(to_string(provenance)) + " of " + c.description(),
                         [c, rho](std::span<const double> p) {
                           const MatrixJet m = rho.jet(p);
                           return metric_conjugate_jet(c.jet(p), m, matrix_inverse_jet(m, p));
                         });
}

}  // namespace detail

/// The g-conjugate nabla*.
inline ConnectionField g_conjugate(const ConnectionField& c, const MetricField& g) {
  return detail::metric_conjugate(c, g, Provenance::g_conjugate);
}

/// The G-conjugate nabla-dagger.
inline ConnectionField G_conjugate(const ConnectionField& c, const MetricField& G) {
  return detail::metric_conjugate(c, G, Provenance::G_conjugate);
}

inline ConnectionField J_conjugate(const ConnectionField& c, const ComplexStructureField& j) {
  return ConnectionField(c.chart(), Provenance::J_conjugate, "J-conjugate of " + c.description(),
                         [c, j](std::span<const double> p) { return j_conjugate_jet(c.jet(p), j.jet(p)); });
}

/// Residual of the defining identity d_k rho_ij = rho(nabla_k d_i, d_j) + rho(d_i, nabla*_k d_j).
inline double conjugate_identity_residual(const ConnectionJet& c, const ConnectionJet& conj, const MatrixJet& rho) {
  const int d = c.dim();
  std::vector<double> lhs, rhs;
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        double r = 0.0;
        for (int l = 0; l < d; ++l) r += c.value(l, k, i) * rho(l, j).value + conj.value(l, k, j) * rho(i, l).value;
        lhs.push_back(rho(i, j).grad[k]);
        rhs.push_back(r);
      }
  return scaled_difference(lhs, rhs);
}

/// A connection and its three conjugates at one point.
struct ConjugateSet {
  ConnectionJet base;
  ConnectionJet star;
  ConnectionJet dagger;
  ConnectionJet jconj;
};

inline ConjugateSet conjugates(const ConnectionJet& c, const Frame& f) {
  return {c, g_conjugate_jet(c, f), G_conjugate_jet(c, f), J_conjugate_jet(c, f)};
}

inline double connection_difference(const ConnectionJet& a, const ConnectionJet& b, bool with_derivatives = true) {
  return scaled_difference(a.flatten(with_derivatives), b.flatten(with_derivatives));
}

/// Checks the involutions and the products of pairs of conjugations on the
/// coefficient 1-jets (values and first partials) at every sample point.
inline CheckReport verify_klein_group(const ConnectionField& c, const Structure& s, const SampleSet& samples,
                                      double tol = kDefaultTolerance) {
  ResidualTracker t;
  for (const auto& p : samples.points) {
    const Frame f = make_frame(s, p);
    const ConjugateSet k = conjugates(c.jet(p), f);
    t.add("(*)* = id", connection_difference(g_conjugate_jet(k.star, f), k.base));
    t.add("(dagger)dagger = id", connection_difference(G_conjugate_jet(k.dagger, f), k.base));
    t.add("(J)J = id", connection_difference(J_conjugate_jet(k.jconj, f), k.base));
    t.add("(dagger)J = *", connection_difference(J_conjugate_jet(k.dagger, f), k.star));
    t.add("(J)dagger = *", connection_difference(G_conjugate_jet(k.jconj, f), k.star));
    t.add("(*)J = dagger", connection_difference(J_conjugate_jet(k.star, f), k.dagger));
    t.add("(J)* = dagger", connection_difference(g_conjugate_jet(k.jconj, f), k.dagger));
    t.add("(*)dagger = J", connection_difference(G_conjugate_jet(k.star, f), k.jconj));
    t.add("(dagger)* = J", connection_difference(g_conjugate_jet(k.dagger, f), k.jconj));
  }
  CheckReport r{"klein_group", t.max() <= tol ? Verdict::pass : Verdict::fail, t.max(), tol, samples.size(),
                samples.seed, t.entries()};
  return r;
}

}  // namespace norden
