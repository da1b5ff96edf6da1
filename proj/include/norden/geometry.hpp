#pragma once

// Charts, the metric and almost complex structure fields, evaluated tensors,
// and the algebraic axioms of an almost anti-Hermitian structure.
//
// Index conventions used everywhere:
//   J^i_j is stored at (i, j) and (JX)^i = J^i_j X^j, so J d_j = J^i_j d_i;
//   the twin metric is G_ij = g(J d_i, d_j) = J^m_i g_mj.

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "norden/core.hpp"
#include "norden/expr.hpp"
#include "norden/jets.hpp"
#include "norden/report.hpp"
#include "norden/sampling.hpp"

namespace norden {

class Chart {
 public:
  explicit Chart(int dim, std::vector<std::string> names = {}, std::vector<Interval> box = {})
      : dim_(dim), names_(std::move(names)), box_(std::move(box)) {
    if (dim_ < 2 || dim_ % 2 != 0) throw InvalidInputError("chart dimension must be even and >= 2");
    if (dim_ > kMaxDim) throw InvalidInputError("chart dimension exceeds " + std::to_string(kMaxDim));
    if (names_.empty()) names_ = default_coordinate_names(dim_);
    if (box_.empty()) box_.assign(static_cast<std::size_t>(dim_), Interval{-1.0, 1.0});
    if (static_cast<int>(names_.size()) != dim_) throw InvalidInputError("need one name per coordinate");
    if (static_cast<int>(box_.size()) != dim_) throw InvalidInputError("need one interval per coordinate");
    for (const auto& iv : box_)
      if (!(iv.lo <= iv.hi)) throw InvalidInputError("empty sample box interval");
    for (std::size_t i = 0; i < names_.size(); ++i)
      for (std::size_t j = i + 1; j < names_.size(); ++j)
        if (names_[i] == names_[j]) throw InvalidInputError("duplicate coordinate name '" + names_[i] + "'");
  }

  int dim() const { return dim_; }
  /// Half the dimension.
  int n() const { return dim_ / 2; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<Interval>& box() const { return box_; }

 private:
  int dim_;
  std::vector<std::string> names_;
  std::vector<Interval> box_;
};

namespace detail {

inline void check_components(const Chart& chart, const std::vector<Expr>& comps, std::size_t expected,
                             const char* what) {
  if (comps.size() != expected)
    throw InvalidInputError(std::string(what) + " needs " + std::to_string(expected) + " components, got " +
                            std::to_string(comps.size()));
  for (const auto& c : comps)
    if (c.max_coord() >= chart.dim())
      throw InvalidInputError(std::string(what) + " component references a coordinate outside the chart");
}

}  // namespace detail

enum class MetricRole { primary, twin, generic };

/// Symmetric (0,2) field with expression components, row-major d x d.
class MetricField {
 public:
  MetricField(Chart chart, std::vector<Expr> components, MetricRole role = MetricRole::primary)
      : chart_(std::move(chart)), comps_(std::move(components)), role_(role) {
    detail::check_components(chart_, comps_, static_cast<std::size_t>(chart_.dim() * chart_.dim()), "metric");
  }

  const Chart& chart() const { return chart_; }
  int dim() const { return chart_.dim(); }
  MetricRole role() const { return role_; }
  const Expr& operator()(int i, int j) const { return comps_[static_cast<std::size_t>(i * dim() + j)]; }
  const std::vector<Expr>& components() const { return comps_; }

  MatrixJet jet(std::span<const double> p) const { return matrix_jet(comps_, dim(), dim(), p); }
  Eigen::MatrixXd values(std::span<const double> p) const {
    Eigen::MatrixXd m(dim(), dim());
    for (int i = 0; i < dim(); ++i)
      for (int j = 0; j < dim(); ++j) m(i, j) = eval((*this)(i, j), p);
    return m;
  }

 private:
  Chart chart_;
  std::vector<Expr> comps_;
  MetricRole role_;
};

/// (1,1) field J^i_j with expression components, row-major d x d.
class ComplexStructureField {
 public:
  ComplexStructureField(Chart chart, std::vector<Expr> components)
      : chart_(std::move(chart)), comps_(std::move(components)) {
    detail::check_components(chart_, comps_, static_cast<std::size_t>(chart_.dim() * chart_.dim()),
                             "complex structure");
  }

  const Chart& chart() const { return chart_; }
  int dim() const { return chart_.dim(); }
  const Expr& operator()(int i, int j) const { return comps_[static_cast<std::size_t>(i * dim() + j)]; }
  const std::vector<Expr>& components() const { return comps_; }

  MatrixJet jet(std::span<const double> p) const { return matrix_jet(comps_, dim(), dim(), p); }
  Eigen::MatrixXd values(std::span<const double> p) const {
    Eigen::MatrixXd m(dim(), dim());
    for (int i = 0; i < dim(); ++i)
      for (int j = 0; j < dim(); ++j) m(i, j) = eval((*this)(i, j), p);
    return m;
  }

 private:
  Chart chart_;
  std::vector<Expr> comps_;
};

/// Evaluated components of an (r,s) tensor at one point, stored as a dense
/// d^(r+s) array. Each producing operation documents its index order.
class TensorValue {
 public:
  TensorValue(int contravariant, int covariant, int dim, Point point = {})
      : contravariant_(contravariant), covariant_(covariant), dim_(dim), point_(std::move(point)) {
    std::size_t n = 1;
    for (int r = 0; r < rank(); ++r) n *= static_cast<std::size_t>(dim_);
    data_.assign(n, 0.0);
  }

  int contravariant() const { return contravariant_; }
  int covariant() const { return covariant_; }
  int rank() const { return contravariant_ + covariant_; }
  int dim() const { return dim_; }
  const Point& point() const { return point_; }
  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  template <class... I>
  double& operator()(I... idx) {
    return data_[offset({static_cast<int>(idx)...})];
  }
  template <class... I>
  double operator()(I... idx) const {
    return data_[offset({static_cast<int>(idx)...})];
  }

  double max_abs() const {
    double m = 0.0;
    for (double x : data_) m = std::max(m, std::abs(x));
    return m;
  }

 private:
  std::size_t offset(std::initializer_list<int> idx) const {
    std::size_t o = 0;
    for (int i : idx) o = o * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
    return o;
  }

  int contravariant_;
  int covariant_;
  int dim_;
  Point point_;
  std::vector<double> data_;
};

/// G_ij = J^m_i rho_mj on jets.
inline MatrixJet twin(const MatrixJet& rho, const MatrixJet& j) {
  const int d = rho.rows();
  MatrixJet r(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      Jet2 acc{};
      for (int m = 0; m < d; ++m) acc += j(m, a) * rho(m, b);
      r(a, b) = acc;
    }
  return r;
}

/// Purity residual at one point: max|J^m_i g_mj - J^m_j g_im| / max(1, max|J^m_i g_mj|).
inline double purity_residual(const Eigen::MatrixXd& g, const Eigen::MatrixXd& j) {
  const Eigen::MatrixXd a = j.transpose() * g;
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  return (a - a.transpose()).cwiseAbs().maxCoeff() / scale;
}

inline constexpr double kDefaultTolerance = 1e-8;

inline CheckReport check_purity(const MetricField& g, const ComplexStructureField& j, const SampleSet& samples,
                                double tol = kDefaultTolerance) {
  double worst = 0.0;
  for (const auto& p : samples.points) worst = std::max(worst, purity_residual(g.values(p), j.values(p)));
  CheckReport r{"purity", worst <= tol ? Verdict::pass : Verdict::fail, worst, tol, samples.size(), samples.seed};
  r.breakdown.push_back({"g(JX,Y) - g(X,JY)", worst});
  return r;
}

inline CheckReport check_almost_complex(const ComplexStructureField& j, const SampleSet& samples,
                                        double tol = kDefaultTolerance) {
  double worst = 0.0;
  for (const auto& p : samples.points) {
    const Eigen::MatrixXd jv = j.values(p);
    const Eigen::MatrixXd sq = jv * jv;
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(jv.rows(), jv.cols());
    const double scale = std::max(1.0, sq.cwiseAbs().maxCoeff());
    worst = std::max(worst, (sq + id).cwiseAbs().maxCoeff() / scale);
  }
  CheckReport r{"almost_complex", worst <= tol ? Verdict::pass : Verdict::fail, worst, tol, samples.size(),
                samples.seed};
  r.breakdown.push_back({"J^2 + id", worst});
  return r;
}

struct Signature {
  int positive = 0;
  int negative = 0;
  bool operator==(const Signature&) const = default;
};

/// Counts positive and negative eigenvalues of a symmetric matrix.
inline Signature signature(const Eigen::MatrixXd& m) {
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw InvalidInputError("signature needs a symmetric matrix");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  const double cutoff = 1e-12 * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  Signature s;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    if (es.eigenvalues()(i) > cutoff) ++s.positive;
    else if (es.eigenvalues()(i) < -cutoff) ++s.negative;
  }
  return s;
}

inline Signature signature(const MetricField& g, std::span<const double> p) { return signature(g.values(p)); }

/// Symbolic twin metric G_ij = J^m_i g_mj. Throws InvalidInputError when g
/// is not pure with respect to J at a set of probe points in the chart box.
inline MetricField twin_metric(const MetricField& g, const ComplexStructureField& j) {
  if (g.dim() != j.dim()) throw InvalidInputError("metric and complex structure dimensions differ");
  const SampleSet probes = sample_box(g.chart().box(), 16, 0x7477696eULL);
  const CheckReport purity = check_purity(g, j, probes);
  if (!purity.passed())
    throw InvalidInputError("metric is not pure with respect to J (residual " +
                            format_double(purity.max_residual) + ")");
  const int d = g.dim();
  std::vector<Expr> comps;
  comps.reserve(static_cast<std::size_t>(d * d));
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      Expr acc = Expr::constant(0.0);
      for (int m = 0; m < d; ++m) acc = acc + j(m, a) * g(m, b);
      comps.push_back(acc);
    }
  const MetricRole role = g.role() == MetricRole::primary ? MetricRole::twin
                          : g.role() == MetricRole::twin  ? MetricRole::primary
                                                          : MetricRole::generic;
  return MetricField(g.chart(), std::move(comps), role);
}

/// An almost anti-Hermitian structure (J, g) together with its twin G.
struct Structure {
  std::string name;
  MetricField g;
  ComplexStructureField J;
  MetricField G;

  const Chart& chart() const { return g.chart(); }
  int dim() const { return g.dim(); }
};

namespace detail {

inline bool nondegenerate(const Eigen::MatrixXd& m) {
  return std::abs(scaled_determinant(m)) > kSingularityThreshold;
}

}  // namespace detail

/// Draws sample points where g and its twin are finite and nondegenerate.
inline SampleSet sample_structure_points(const Structure& s, int count, std::uint64_t seed) {
  return sample_box(s.chart().box(), count, seed, [&](std::span<const double> p) {
    try {
      const Eigen::MatrixXd g = s.g.values(p);
      const Eigen::MatrixXd G = s.J.values(p).transpose() * g;
      return g.allFinite() && detail::nondegenerate(g) && detail::nondegenerate(G);
    } catch (const EvalError&) {
      return false;
    }
  });
}

/// Validates J^2 = -id, symmetry and purity of g at probe points and builds
/// the twin metric.
inline Structure make_structure(std::string name, MetricField g, ComplexStructureField j) {
  if (g.dim() != j.dim()) throw InvalidInputError("metric and complex structure dimensions differ");
  const SampleSet probes = sample_box(g.chart().box(), 16, 0x636865636bULL);
  for (const auto& p : probes.points) {
    const Eigen::MatrixXd gv = g.values(p);
    const double scale = std::max(1.0, gv.cwiseAbs().maxCoeff());
    if ((gv - gv.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
      throw InvalidInputError("metric is not symmetric at " + format_point(p));
  }
  const CheckReport ac = check_almost_complex(j, probes);
  if (!ac.passed())
    throw InvalidInputError("J^2 != -id (residual " + format_double(ac.max_residual) + ")");
  MetricField twin_g = twin_metric(g, j);
  return Structure{std::move(name), std::move(g), std::move(j), std::move(twin_g)};
}

/// Jets of every structure field at one point.
struct Frame {
  Point point;
  MatrixJet g;
  MatrixJet g_inv;
  MatrixJet J;
  MatrixJet G;
  MatrixJet G_inv;

  int dim() const { return g.rows(); }
};

inline Frame make_frame(const Structure& s, std::span<const double> p) {
  Frame f;
  f.point.assign(p.begin(), p.end());
  f.g = s.g.jet(p);
  f.J = s.J.jet(p);
  f.G = twin(f.g, f.J);
  f.g_inv = matrix_inverse_jet(f.g, p);
  f.G_inv = matrix_inverse_jet(f.G, p);
  return f;
}

}  // namespace norden
