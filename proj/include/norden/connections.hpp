#pragma once

// Linear connections. Coefficients follow nabla_{d_i} d_j = Gamma^k_ij d_k
// and are stored at (k, i, j): the first lower index is the direction of
// differentiation. A connection is evaluated as a 1-jet of its coefficients.

#include <algorithm>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "norden/core.hpp"
#include "norden/geometry.hpp"
#include "norden/jets.hpp"
#include "norden/report.hpp"
#include "norden/sampling.hpp"

namespace norden {

/// Gamma^k_ij and its first partials at one point.
class ConnectionJet {
 public:
  ConnectionJet() = default;
  explicit ConnectionJet(int dim) : dim_(dim), data_(static_cast<std::size_t>(dim * dim * dim)) {}

  int dim() const { return dim_; }
  Jet1& operator()(int k, int i, int j) { return data_[index(k, i, j)]; }
  const Jet1& operator()(int k, int i, int j) const { return data_[index(k, i, j)]; }
  double value(int k, int i, int j) const { return data_[index(k, i, j)].value; }
  /// d_l Gamma^k_ij.
  double derivative(int l, int k, int i, int j) const { return data_[index(k, i, j)].grad[l]; }

  double max_abs_value() const {
    double m = 0.0;
    for (const auto& c : data_) m = std::max(m, std::abs(c.value));
    return m;
  }

  /// Values followed by the first partials, for coefficientwise comparison.
  std::vector<double> flatten(bool with_derivatives = true) const {
    std::vector<double> out;
    out.reserve(data_.size() * (with_derivatives ? 1 + static_cast<std::size_t>(dim_) : 1));
    for (const auto& c : data_) out.push_back(c.value);
    if (with_derivatives)
      for (const auto& c : data_)
        for (int l = 0; l < dim_; ++l) out.push_back(c.grad[l]);
    return out;
  }

 private:
  std::size_t index(int k, int i, int j) const {
    return static_cast<std::size_t>((k * dim_ + i) * dim_ + j);
  }

  int dim_ = 0;
  std::vector<Jet1> data_;
};

enum class Provenance {
  explicit_coefficients,
  levi_civita_g,
  levi_civita_G,
  levi_civita_rho,
  g_conjugate,
  G_conjugate,
  J_conjugate,
  generated,
};

inline std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::explicit_coefficients: return "explicit";
    case Provenance::levi_civita_g: return "levi-civita(g)";
    case Provenance::levi_civita_G: return "levi-civita(G)";
    case Provenance::levi_civita_rho: return "levi-civita(rho)";
    case Provenance::g_conjugate: return "g-conjugate";
    case Provenance::G_conjugate: return "G-conjugate";
    case Provenance::J_conjugate: return "J-conjugate";
    case Provenance::generated: return "generated";
  }
  return "explicit";
}

/// A connection on a chart: either explicit coefficient expressions or a
/// producer closure yielding coefficient 1-jets at a point.
class ConnectionField {
 public:
  using Producer = std::function<ConnectionJet(std::span<const double>)>;

  ConnectionField(Chart chart, Provenance provenance, std::string description, Producer producer)
      : chart_(std::move(chart)),
        provenance_(provenance),
        description_(std::move(description)),
        producer_(std::move(producer)) {}

  /// `coefficients` has d^3 entries in (k, i, j) order for Gamma^k_ij.
  static ConnectionField from_expressions(const Chart& chart, std::vector<Expr> coefficients,
                                          std::string description = "explicit",
                                          Provenance provenance = Provenance::explicit_coefficients) {
    const int d = chart.dim();
    detail::check_components(chart, coefficients, static_cast<std::size_t>(d * d * d), "connection");
    auto shared = std::make_shared<const std::vector<Expr>>(std::move(coefficients));
    ConnectionField c(chart, provenance, std::move(description), [shared, d](std::span<const double> p) {
      ConnectionJet out(d);
      for (int k = 0; k < d; ++k)
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j)
            out(k, i, j) = jet1_of_expr((*shared)[static_cast<std::size_t>((k * d + i) * d + j)], p);
      return out;
    });
    c.expressions_ = std::move(shared);
    return c;
  }

  /// Gamma = 0.
  static ConnectionField zero(const Chart& chart) {
    const int d = chart.dim();
    return from_expressions(chart, std::vector<Expr>(static_cast<std::size_t>(d * d * d), Expr::constant(0.0)),
                            "zero");
  }

  const Chart& chart() const { return chart_; }
  int dim() const { return chart_.dim(); }
  Provenance provenance() const { return provenance_; }
  const std::string& description() const { return description_; }
  bool has_expressions() const { return expressions_ != nullptr; }
  const std::vector<Expr>& expressions() const { return *expressions_; }

  ConnectionJet jet(std::span<const double> p) const { return producer_(p); }

 private:
  Chart chart_;
  Provenance provenance_;
  std::string description_;
  Producer producer_;
  std::shared_ptr<const std::vector<Expr>> expressions_;
};

/// Christoffel symbols of rho as 1-jets.
inline ConnectionJet levi_civita_jet(const MatrixJet& rho, const MatrixJet& rho_inv) {
  const int d = rho.rows();
  ConnectionJet out(d);
  std::vector<Jet1> lowered(static_cast<std::size_t>(d * d * d));
  // Gamma_{l,ij} = (d_i rho_jl + d_j rho_il - d_l rho_ij) / 2
  for (int l = 0; l < d; ++l)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        lowered[static_cast<std::size_t>((l * d + i) * d + j)] =
            0.5 * (partial(rho(j, l), i) + partial(rho(i, l), j) - partial(rho(i, j), l));
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        Jet1 acc{};
        for (int l = 0; l < d; ++l)
          acc += first_order(rho_inv(k, l)) * lowered[static_cast<std::size_t>((l * d + i) * d + j)];
        out(k, i, j) = acc;
      }
  return out;
}

inline Provenance levi_civita_provenance(MetricRole role) {
  switch (role) {
    case MetricRole::primary: return Provenance::levi_civita_g;
    case MetricRole::twin: return Provenance::levi_civita_G;
    case MetricRole::generic: return Provenance::levi_civita_rho;
  }
  return Provenance::levi_civita_rho;
}

/// Levi-Civita connection of a nondegenerate symmetric field. Evaluation
/// throws DegenerateMetricError where rho is singular.
inline ConnectionField levi_civita(const MetricField& rho) {
  return ConnectionField(rho.chart(), levi_civita_provenance(rho.role()),
                         std::string(to_string(levi_civita_provenance(rho.role()))),
                         [rho](std::span<const double> p) {
                           const MatrixJet m = rho.jet(p);
                           return levi_civita_jet(m, matrix_inverse_jet(m, p));
                         });
}

/// T^k_ij = Gamma^k_ij - Gamma^k_ji, stored (k, i, j).
inline TensorValue torsion(const ConnectionJet& c, Point point = {}) {
  const int d = c.dim();
  TensorValue t(1, 2, d, std::move(point));
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) t(k, i, j) = c.value(k, i, j) - c.value(k, j, i);
  return t;
}

inline TensorValue torsion(const ConnectionField& c, std::span<const double> p) {
  return torsion(c.jet(p), Point(p.begin(), p.end()));
}

/// (nabla_k rho)_ij = d_k rho_ij - Gamma^l_ki rho_lj - Gamma^l_kj rho_il, stored (k, i, j).
inline TensorValue covariant_derivative_02(const ConnectionJet& c, const MatrixJet& rho, Point point = {}) {
  const int d = c.dim();
  TensorValue t(0, 3, d, std::move(point));
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        double v = rho(i, j).grad[k];
        for (int l = 0; l < d; ++l) v -= c.value(l, k, i) * rho(l, j).value + c.value(l, k, j) * rho(i, l).value;
        t(k, i, j) = v;
      }
  return t;
}

inline TensorValue covariant_derivative_02(const ConnectionField& c, const MetricField& rho,
                                           std::span<const double> p) {
  return covariant_derivative_02(c.jet(p), rho.jet(p), Point(p.begin(), p.end()));
}

/// (nabla_k J)^i_j = d_k J^i_j + Gamma^i_kl J^l_j - Gamma^l_kj J^i_l, stored (k, i, j).
inline TensorValue covariant_derivative_11(const ConnectionJet& c, const MatrixJet& j_jet, Point point = {}) {
  const int d = c.dim();
  TensorValue t(1, 2, d, std::move(point));
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        double v = j_jet(i, j).grad[k];
        for (int l = 0; l < d; ++l) v += c.value(i, k, l) * j_jet(l, j).value - c.value(l, k, j) * j_jet(i, l).value;
        t(k, i, j) = v;
      }
  return t;
}

inline TensorValue covariant_derivative_11(const ConnectionField& c, const ComplexStructureField& j,
                                           std::span<const double> p) {
  return covariant_derivative_11(c.jet(p), j.jet(p), Point(p.begin(), p.end()));
}

namespace detail {

inline double max_abs_first_derivative(const MatrixJet& m) {
  double s = 0.0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      for (double x : m(i, j).grad) s = std::max(s, std::abs(x));
  return s;
}

inline double max_abs_value(const MatrixJet& m) { return m.values().cwiseAbs().maxCoeff(); }

}  // namespace detail

/// Residual of torsion-freeness at one point, scaled by the coefficient size.
inline double torsion_residual(const ConnectionJet& c) {
  return scaled_magnitude(torsion(c).data(), c.max_abs_value());
}

/// Residual of nabla J = 0 at one point.
inline double j_invariance_residual(const ConnectionJet& c, const MatrixJet& j) {
  const double scale = std::max({c.max_abs_value(), detail::max_abs_first_derivative(j), detail::max_abs_value(j)});
  return scaled_magnitude(covariant_derivative_11(c, j).data(), scale);
}

inline CheckReport check_torsion_free(const ConnectionField& c, const SampleSet& samples,
                                      double tol = kDefaultTolerance) {
  double worst = 0.0;
  for (const auto& p : samples.points) worst = std::max(worst, torsion_residual(c.jet(p)));
  CheckReport r{"torsion_free", worst <= tol ? Verdict::pass : Verdict::fail, worst, tol, samples.size(),
                samples.seed};
  r.breakdown.push_back({"torsion", worst});
  return r;
}

inline CheckReport check_J_invariant(const ConnectionField& c, const ComplexStructureField& j,
                                     const SampleSet& samples, double tol = kDefaultTolerance) {
  double worst = 0.0;
  for (const auto& p : samples.points) worst = std::max(worst, j_invariance_residual(c.jet(p), j.jet(p)));
  CheckReport r{"J_invariant", worst <= tol ? Verdict::pass : Verdict::fail, worst, tol, samples.size(),
                samples.seed};
  r.breakdown.push_back({"nabla J", worst});
  return r;
}

}  // namespace norden
