#pragma once

// First- and second-order jets (value, gradient, Hessian) with fixed capacity
// kMaxDim. Entries past the chart dimension stay zero through every
// operation, so no runtime dimension is carried.

#include <array>
#include <cmath>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "norden/core.hpp"
#include "norden/expr.hpp"

namespace norden {

using JetVec = std::array<double, kMaxDim>;
using JetMat = std::array<JetVec, kMaxDim>;

struct Jet1 {
  double value = 0.0;
  JetVec grad{};
};

struct Jet2 {
  double value = 0.0;
  JetVec grad{};
  JetMat hess{};
};

inline Jet1 operator+(const Jet1& a, const Jet1& b) {
  Jet1 r{a.value + b.value};
  for (int i = 0; i < kMaxDim; ++i) r.grad[i] = a.grad[i] + b.grad[i];
  return r;
}
inline Jet1 operator-(const Jet1& a) {
  Jet1 r{-a.value};
  for (int i = 0; i < kMaxDim; ++i) r.grad[i] = -a.grad[i];
  return r;
}
inline Jet1 operator-(const Jet1& a, const Jet1& b) { return a + (-b); }
inline Jet1 operator*(const Jet1& a, const Jet1& b) {
  Jet1 r{a.value * b.value};
  for (int i = 0; i < kMaxDim; ++i) r.grad[i] = a.value * b.grad[i] + b.value * a.grad[i];
  return r;
}
inline Jet1 operator*(double s, const Jet1& a) {
  Jet1 r{s * a.value};
  for (int i = 0; i < kMaxDim; ++i) r.grad[i] = s * a.grad[i];
  return r;
}
inline Jet1& operator+=(Jet1& a, const Jet1& b) {
  a.value += b.value;
  for (int i = 0; i < kMaxDim; ++i) a.grad[i] += b.grad[i];
  return a;
}
inline Jet1& operator-=(Jet1& a, const Jet1& b) {
  a.value -= b.value;
  for (int i = 0; i < kMaxDim; ++i) a.grad[i] -= b.grad[i];
  return a;
}

inline Jet2 operator+(const Jet2& a, const Jet2& b) {
  Jet2 r{a.value + b.value};
  for (int i = 0; i < kMaxDim; ++i) {
    r.grad[i] = a.grad[i] + b.grad[i];
    for (int j = 0; j < kMaxDim; ++j) r.hess[i][j] = a.hess[i][j] + b.hess[i][j];
  }
  return r;
}
inline Jet2 operator*(double s, const Jet2& a) {
  Jet2 r{s * a.value};
  for (int i = 0; i < kMaxDim; ++i) {
    r.grad[i] = s * a.grad[i];
    for (int j = 0; j < kMaxDim; ++j) r.hess[i][j] = s * a.hess[i][j];
  }
  return r;
}
inline Jet2 operator-(const Jet2& a) { return -1.0 * a; }
inline Jet2 operator-(const Jet2& a, const Jet2& b) { return a + (-b); }
inline Jet2 operator*(const Jet2& a, const Jet2& b) {
  Jet2 r{a.value * b.value};
  for (int i = 0; i < kMaxDim; ++i) {
    r.grad[i] = a.value * b.grad[i] + b.value * a.grad[i];
    for (int j = 0; j < kMaxDim; ++j)
      r.hess[i][j] = a.value * b.hess[i][j] + b.value * a.hess[i][j] + a.grad[i] * b.grad[j] +
                     b.grad[i] * a.grad[j];
  }
  return r;
}
inline Jet2& operator+=(Jet2& a, const Jet2& b) { return a = a + b; }

inline Jet2 jet_add(const Jet2& a, const Jet2& b) { return a + b; }
inline Jet2 jet_mul(const Jet2& a, const Jet2& b) { return a * b; }
inline Jet2 jet_scale(double s, const Jet2& a) { return s * a; }

inline double value_of(const Jet1& a) { return a.value; }
inline double value_of(const Jet2& a) { return a.value; }

inline Jet1 chain(const Jet1& u, double f0, double f1, double) {
  Jet1 r{f0};
  for (int i = 0; i < kMaxDim; ++i) r.grad[i] = f1 * u.grad[i];
  return r;
}

inline Jet2 chain(const Jet2& u, double f0, double f1, double f2) {
  Jet2 r{f0};
  for (int i = 0; i < kMaxDim; ++i) {
    r.grad[i] = f1 * u.grad[i];
    for (int j = 0; j < kMaxDim; ++j) r.hess[i][j] = f1 * u.hess[i][j] + f2 * u.grad[i] * u.grad[j];
  }
  return r;
}

/// Drops the Hessian.
inline Jet1 first_order(const Jet2& a) { return Jet1{a.value, a.grad}; }

/// The 1-jet of the partial derivative along coordinate k.
inline Jet1 partial(const Jet2& a, int k) { return Jet1{a.grad[k], a.hess[k]}; }

namespace detail {

inline void check_point_dim(const Expr& e, std::span<const double> point) {
  if (point.size() > static_cast<std::size_t>(kMaxDim))
    throw InvalidInputError("dimension exceeds " + std::to_string(kMaxDim));
  if (e.max_coord() >= static_cast<int>(point.size()))
    throw InvalidInputError("expression uses coordinate " + std::to_string(e.max_coord() + 1) +
                            " beyond point dimension " + std::to_string(point.size()));
}

}  // namespace detail

/// Exact value, gradient and Hessian of `e` at `point`.
inline Jet2 jet_of_expr(const Expr& e, std::span<const double> point) {
  detail::check_point_dim(e, point);
  return evaluate_as<Jet2>(e, [&](int i) {
    Jet2 x{point[i]};
    x.grad[i] = 1.0;
    return x;
  });
}

inline Jet1 jet1_of_expr(const Expr& e, std::span<const double> point) {
  detail::check_point_dim(e, point);
  return evaluate_as<Jet1>(e, [&](int i) {
    Jet1 x{point[i]};
    x.grad[i] = 1.0;
    return x;
  });
}

/// Row-major matrix of jets.
template <class JetT>
class JetMatrix {
 public:
  JetMatrix() = default;
  JetMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols)) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  JetT& operator()(int i, int j) { return data_[static_cast<std::size_t>(i * cols_ + j)]; }
  const JetT& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i * cols_ + j)]; }

  Eigen::MatrixXd values() const {
    Eigen::MatrixXd m(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).value;
    return m;
  }

  /// Matrix of partial derivatives along coordinate k.
  Eigen::MatrixXd derivative(int k) const {
    Eigen::MatrixXd m(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).grad[k];
    return m;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<JetT> data_;
};

using MatrixJet = JetMatrix<Jet2>;
using MatrixJet1 = JetMatrix<Jet1>;

inline MatrixJet1 first_order(const MatrixJet& m) {
  MatrixJet1 r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = first_order(m(i, j));
  return r;
}

template <class JetT>
JetMatrix<JetT> operator*(const JetMatrix<JetT>& a, const JetMatrix<JetT>& b) {
  if (a.cols() != b.rows()) throw InvalidInputError("matrix shape mismatch");
  JetMatrix<JetT> r(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) {
      JetT acc{};
      for (int k = 0; k < a.cols(); ++k) acc = acc + a(i, k) * b(k, j);
      r(i, j) = acc;
    }
  return r;
}

/// Matrix of 2-jets of the expression entries (row-major, `rows*cols` long).
inline MatrixJet matrix_jet(std::span<const Expr> entries, int rows, int cols, std::span<const double> point) {
  MatrixJet m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = jet_of_expr(entries[static_cast<std::size_t>(i * cols + j)], point);
  return m;
}

/// det(M) divided by the product of row max-norms.
inline double scaled_determinant(const Eigen::MatrixXd& m) {
  double scale = 1.0;
  for (int i = 0; i < m.rows(); ++i) {
    const double row = m.row(i).cwiseAbs().maxCoeff();
    if (row == 0.0) return 0.0;
    scale *= row;
  }
  return m.fullPivLu().determinant() / scale;
}

inline constexpr double kSingularityThreshold = 1e-10;

/// Inverse of a square matrix of 2-jets. The value is an LU inverse; the
/// derivatives follow from differentiating M M^-1 = I twice:
///   d_k A = -A (d_k M) A,
///   d_l d_k A = A M_l A M_k A + A M_k A M_l A - A M_kl A.
inline MatrixJet matrix_inverse_jet(const MatrixJet& m, std::span<const double> point = {}) {
  if (m.rows() != m.cols()) throw InvalidInputError("matrix_inverse_jet needs a square matrix");
  const int n = m.rows();
  const Eigen::MatrixXd v = m.values();
  if (!(std::abs(scaled_determinant(v)) > kSingularityThreshold))
    throw DegenerateMetricError(Point(point.begin(), point.end()));

  const Eigen::MatrixXd a = v.partialPivLu().inverse();
  std::array<Eigen::MatrixXd, kMaxDim> d_m;
  std::array<Eigen::MatrixXd, kMaxDim> a_dm_a;
  for (int k = 0; k < kMaxDim; ++k) {
    d_m[k] = m.derivative(k);
    a_dm_a[k] = a * d_m[k] * a;
  }

  MatrixJet r(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r(i, j).value = a(i, j);

  const int dims = point.empty() ? kMaxDim : static_cast<int>(point.size());
  for (int k = 0; k < dims; ++k) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r(i, j).grad[k] = -a_dm_a[k](i, j);
    for (int l = 0; l <= k; ++l) {
      Eigen::MatrixXd m_kl(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m_kl(i, j) = m(i, j).hess[k][l];
      const Eigen::MatrixXd h = a_dm_a[l] * d_m[k] * a + a_dm_a[k] * d_m[l] * a - a * m_kl * a;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          r(i, j).hess[k][l] = h(i, j);
          r(i, j).hess[l][k] = h(i, j);
        }
    }
  }
  return r;
}

}  // namespace norden
