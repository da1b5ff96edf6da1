#pragma once

// Built-in almost anti-Hermitian structures and seeded random connections.
//
// The standard complex structure J0 rotates each coordinate pair:
// J0 d_{2a} = d_{2a+1}, J0 d_{2a+1} = -d_{2a} (0-based). Real vectors then
// correspond to complex vectors with components x_{2a} + i x_{2a+1}, and a
// map commutes with J0 iff it is complex linear.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "norden/connections.hpp"
#include "norden/core.hpp"
#include "norden/expr.hpp"
#include "norden/geometry.hpp"
#include "norden/sampling.hpp"

namespace norden {

/// Square matrix of expressions, row-major.
class ExprMatrix {
 public:
  explicit ExprMatrix(int n) : n_(n), e_(static_cast<std::size_t>(n * n), Expr::constant(0.0)) {}

  static ExprMatrix identity(int n) {
    ExprMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = Expr::constant(1.0);
    return m;
  }

  int size() const { return n_; }
  Expr& operator()(int i, int j) { return e_[static_cast<std::size_t>(i * n_ + j)]; }
  const Expr& operator()(int i, int j) const { return e_[static_cast<std::size_t>(i * n_ + j)]; }
  const std::vector<Expr>& entries() const { return e_; }

  ExprMatrix transpose() const {
    ExprMatrix t(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) t(i, j) = (*this)(j, i);
    return t;
  }

 private:
  int n_;
  std::vector<Expr> e_;
};

inline ExprMatrix operator*(const ExprMatrix& a, const ExprMatrix& b) {
  const int n = a.size();
  ExprMatrix r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Expr acc = Expr::constant(0.0);
      for (int k = 0; k < n; ++k) acc = acc + a(i, k) * b(k, j);
      r(i, j) = acc;
    }
  return r;
}

inline ExprMatrix operator+(const ExprMatrix& a, const ExprMatrix& b) {
  ExprMatrix r(a.size());
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j) r(i, j) = a(i, j) + b(i, j);
  return r;
}

inline ExprMatrix operator-(const ExprMatrix& a, const ExprMatrix& b) {
  ExprMatrix r(a.size());
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j) r(i, j) = a(i, j) - b(i, j);
  return r;
}

inline ExprMatrix standard_complex_structure(int dim) {
  ExprMatrix j(dim);
  for (int a = 0; a + 1 < dim; a += 2) {
    j(a + 1, a) = Expr::constant(1.0);
    j(a, a + 1) = Expr::constant(-1.0);
  }
  return j;
}

/// Block-diagonal diag(1, -1, 1, -1, ...).
inline ExprMatrix standard_neutral_metric(int dim) {
  ExprMatrix g(dim);
  for (int a = 0; a < dim; ++a) g(a, a) = Expr::constant(a % 2 == 0 ? 1.0 : -1.0);
  return g;
}

inline Structure structure_from(std::string name, const Chart& chart, const ExprMatrix& g, const ExprMatrix& j) {
  return make_structure(std::move(name), MetricField(chart, g.entries()), ComplexStructureField(chart, j.entries()));
}

/// Constant model on R^{2n}: J0 with g = diag(1,-1,...). Box [-1,1]^{2n}.
inline Structure flat_model(int n) {
  const int d = 2 * n;
  const Chart chart(d);
  return structure_from("flat" + std::to_string(d), chart, standard_neutral_metric(d), standard_complex_structure(d));
}

/// g = Re(f(w) dw dw) with f = w^2 + 2, w = x1 + i x2:
/// g = [[u, -v], [-v, -u]], u = x1^2 - x2^2 + 2, v = 2 x1 x2. Anti-Kähler.
/// On [-0.5, 0.5]^2, u^2 + v^2 >= 2.25, so det g = -(u^2 + v^2) < 0.
inline Structure holomorphic_metric_example() {
  const Chart chart(2, {}, {{-0.5, 0.5}, {-0.5, 0.5}});
  const Expr x1 = Expr::coord(0), x2 = Expr::coord(1);
  const Expr u = pow(x1, 2) - pow(x2, 2) + Expr::constant(2.0);
  const Expr v = Expr::constant(2.0) * x1 * x2;
  ExprMatrix g(2);
  g(0, 0) = u;
  g(0, 1) = -v;
  g(1, 0) = -v;
  g(1, 1) = -u;
  return structure_from("holomorphic", chart, g, standard_complex_structure(2));
}

/// g = diag(u, -u), u = 1 + x1^2: pure for J0 but not anti-Kähler.
inline Structure non_cr_example() {
  const Chart chart(2, {}, {{-1.5, 1.5}, {-1.5, 1.5}});
  const Expr u = Expr::constant(1.0) + pow(Expr::coord(0), 2);
  ExprMatrix g(2);
  g(0, 0) = u;
  g(1, 1) = -u;
  return structure_from("noncr", chart, g, standard_complex_structure(2));
}

/// Strictly lower triangular polynomial part of the frame change used by
/// nonintegrable_J_example.
inline ExprMatrix nonintegrable_frame_perturbation() {
  const Expr x1 = Expr::coord(0), x2 = Expr::coord(1), x3 = Expr::coord(2), x4 = Expr::coord(3);
  ExprMatrix n(4);
  n(1, 0) = Expr::constant(0.5) * x3;
  n(2, 0) = Expr::constant(0.3) * x2 * x4;
  n(2, 1) = Expr::constant(0.4) * x4;
  n(3, 1) = Expr::constant(0.5) * x1;
  n(3, 2) = Expr::constant(0.2) * x1 * x2;
  return n;
}

/// Dimension 4, J = A J0 A^-1 with A = I + N, N strictly lower triangular,
/// so A^-1 = I - N + N^2 - N^3 is polynomial and J^2 = -id identically. The
/// metric g = A^-T g0 A^-1 is pure for J. J is not integrable.
/// `perturbation` replaces N; a constant N gives an integrable J.
inline Structure nonintegrable_J_example(const ExprMatrix& perturbation = nonintegrable_frame_perturbation()) {
  const Chart chart(4, {}, std::vector<Interval>(4, Interval{-0.5, 0.5}));
  const ExprMatrix id = ExprMatrix::identity(4);
  const ExprMatrix& n = perturbation;
  const ExprMatrix n2 = n * n;
  const ExprMatrix a = id + n;
  const ExprMatrix a_inv = id - n + n2 - n2 * n;
  const ExprMatrix j = a * standard_complex_structure(4) * a_inv;
  const ExprMatrix g = a_inv.transpose() * standard_neutral_metric(4) * a_inv;
  return structure_from("nonintegrableJ", chart, g, j);
}

struct CatalogEntry {
  std::string name;
  std::string description;
  bool anti_kahler = false;
  bool integrable = false;
  /// J is the constant J0, so the J-invariant generators apply.
  bool standard_j = false;
  /// The Levi-Civita connection of G is J-invariant.
  bool j_invariant_codazzi = false;
  std::function<Structure()> build;
};

inline const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = {
      {"flat2", "constant J0 and g = diag(1,-1) on R^2", true, true, true, true, [] { return flat_model(1); }},
      {"flat4", "constant J0 and g = diag(1,-1,1,-1) on R^4", true, true, true, true, [] { return flat_model(2); }},
      {"holomorphic", "g = Re((w^2+2) dw dw) on R^2, a holomorphic anti-Hermitian metric", true, true, true, true,
       [] { return holomorphic_metric_example(); }},
      {"noncr", "g = (1+x1^2) diag(1,-1) on R^2, pure but not holomorphic", false, true, true, false,
       [] { return non_cr_example(); }},
      {"nonintegrableJ", "position-dependent non-integrable J on R^4 with a compatible pure metric", false, false,
       false, false, [] { return nonintegrable_J_example(); }},
  };
  return entries;
}

inline const CatalogEntry* find_catalog_entry(std::string_view name) {
  for (const auto& e : catalog())
    if (e.name == name) return &e;
  return nullptr;
}

inline Structure catalog_structure(std::string_view name) {
  const CatalogEntry* e = find_catalog_entry(name);
  if (!e) throw InvalidInputError("unknown catalog structure '" + std::string(name) + "'");
  return e->build();
}

// ---- random fields ----------------------------------------------------------

inline constexpr int kRandomDegree = 2;

/// Polynomial of total degree <= `degree` in `dim` variables with every
/// coefficient uniform in [-1, 1], monomials in graded lexicographic order.
inline Expr random_polynomial(int dim, SplitMix64& rng, int degree = kRandomDegree) {
  if (degree < 0 || degree > kRandomDegree)
    throw InvalidInputError("random polynomial degree must be in [0, " + std::to_string(kRandomDegree) + "]");
  Expr acc = Expr::constant(rng.uniform(-1.0, 1.0));
  if (degree >= 1)
    for (int i = 0; i < dim; ++i) acc = acc + Expr::constant(rng.uniform(-1.0, 1.0)) * Expr::coord(i);
  if (degree >= 2)
    for (int i = 0; i < dim; ++i)
      for (int j = i; j < dim; ++j)
        acc = acc + Expr::constant(rng.uniform(-1.0, 1.0)) * Expr::coord(i) * Expr::coord(j);
  return acc;
}

/// Every Gamma^k_ij an independent random polynomial; torsion is generic.
inline ConnectionField random_connection(const Chart& chart, std::uint64_t seed, int degree = kRandomDegree) {
  const int d = chart.dim();
  SplitMix64 rng(seed);
  std::vector<Expr> coeffs;
  for (int n = 0; n < d * d * d; ++n) coeffs.push_back(random_polynomial(d, rng, degree));
  return ConnectionField::from_expressions(chart, std::move(coeffs), "random(seed " + std::to_string(seed) + ")",
                                           Provenance::generated);
}

namespace detail {

/// Totally symmetric random polynomial tensor C_kij, flattened (k, i, j).
inline std::vector<Expr> random_symmetric_3tensor(int d, SplitMix64& rng) {
  std::vector<Expr> c(static_cast<std::size_t>(d * d * d));
  for (int k = 0; k < d; ++k)
    for (int i = k; i < d; ++i)
      for (int j = i; j < d; ++j) {
        const Expr e = random_polynomial(d, rng);
        const int idx[3] = {k, i, j};
        const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
        for (const auto& p : perms) c[static_cast<std::size_t>((idx[p[0]] * d + idx[p[1]]) * d + idx[p[2]])] = e;
      }
  return c;
}

/// Gamma = LC(rho) + rho^-1 C for lowered C_kij (first index lowered onto
/// the output). Torsion-free when C is symmetric in its last two indices.
inline ConnectionJet levi_civita_plus_raised(const MatrixJet& rho, std::span<const Expr> c, std::span<const double> p) {
  const int d = rho.rows();
  const MatrixJet rho_inv = matrix_inverse_jet(rho, p);
  ConnectionJet out = levi_civita_jet(rho, rho_inv);
  std::vector<Jet1> cj;
  cj.reserve(c.size());
  for (const auto& e : c) cj.push_back(jet1_of_expr(e, p));
  for (int l = 0; l < d; ++l)
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i) {
        Jet1 acc{};
        for (int m = 0; m < d; ++m)
          acc += first_order(rho_inv(l, m)) * cj[static_cast<std::size_t>((m * d + k) * d + i)];
        out(l, k, i) += acc;
      }
  return out;
}

inline void require_standard_j(const Structure& s, const char* generator) {
  const ExprMatrix j0 = standard_complex_structure(s.dim());
  for (int i = 0; i < s.dim(); ++i)
    for (int j = 0; j < s.dim(); ++j) {
      const Expr& e = s.J(i, j);
      if (!e.is_constant() || e.value() != j0(i, j).value())
        throw InvalidInputError(std::string(generator) + " needs the standard constant complex structure");
    }
}

/// Real part of i^s (re + i im).
inline Expr rotate_re(int s, const Expr& re, const Expr& im) {
  switch (s % 4) {
    case 0: return re;
    case 1: return -im;
    case 2: return -re;
    default: return im;
  }
}

/// Imaginary part of i^s (re + i im).
inline Expr rotate_im(int s, const Expr& re, const Expr& im) {
  switch (s % 4) {
    case 0: return im;
    case 1: return re;
    case 2: return -im;
    default: return -re;
  }
}

}  // namespace detail

/// Gamma = LC(rho) + rho^-1 C with C totally symmetric: torsion-free, and
/// (nabla rho) = -2C, so (nabla, rho) is a Codazzi pair.
inline ConnectionField random_codazzi_connection(const MetricField& rho, std::uint64_t seed) {
  SplitMix64 rng(seed);
  auto c = std::make_shared<const std::vector<Expr>>(detail::random_symmetric_3tensor(rho.dim(), rng));
  return ConnectionField(rho.chart(), Provenance::generated, "codazzi(seed " + std::to_string(seed) + ")",
                         [rho, c](std::span<const double> p) { return detail::levi_civita_plus_raised(rho.jet(p), *c, p); });
}

/// Torsion-free connection commuting with the constant J0: Gamma(X, Y) is a
/// symmetric complex-bilinear map with random polynomial complex coefficients.
inline ConnectionField random_J_invariant_connection(const Structure& s, std::uint64_t seed) {
  detail::require_standard_j(s, "random_J_invariant_connection");
  const int d = s.dim();
  const int n = d / 2;
  SplitMix64 rng(seed);
  // c[a][b][c] complex, symmetric in (b, c)
  std::vector<std::pair<Expr, Expr>> coeff(static_cast<std::size_t>(n * n * n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = b; c < n; ++c) {
        Expr re = random_polynomial(d, rng);
        Expr im = random_polynomial(d, rng);
        coeff[static_cast<std::size_t>((a * n + b) * n + c)] = {re, im};
        coeff[static_cast<std::size_t>((a * n + c) * n + b)] = {re, im};
      }
  std::vector<Expr> gamma(static_cast<std::size_t>(d * d * d), Expr::constant(0.0));
  for (int a = 0; a < n; ++a)
    for (int p = 0; p < d; ++p)
      for (int q = 0; q < d; ++q) {
        const auto& [re, im] = coeff[static_cast<std::size_t>((a * n + p / 2) * n + q / 2)];
        const int s_pq = p % 2 + q % 2;
        gamma[static_cast<std::size_t>(((2 * a) * d + p) * d + q)] = detail::rotate_re(s_pq, re, im);
        gamma[static_cast<std::size_t>(((2 * a + 1) * d + p) * d + q)] = detail::rotate_im(s_pq, re, im);
      }
  return ConnectionField::from_expressions(s.chart(), std::move(gamma),
                                           "j-invariant(seed " + std::to_string(seed) + ")", Provenance::generated);
}

/// Gamma = LC(G) + G^-1 C with C_kij the real part of a totally symmetric
/// complex-trilinear form. J-invariant, torsion-free and Codazzi with G and
/// g whenever LC(G) is J-invariant (anti-Kähler structures with J = J0).
inline ConnectionField random_J_invariant_codazzi_connection(const Structure& s, std::uint64_t seed) {
  detail::require_standard_j(s, "random_J_invariant_codazzi_connection");
  const int d = s.dim();
  const int n = d / 2;
  SplitMix64 rng(seed);
  std::vector<std::pair<Expr, Expr>> kappa(static_cast<std::size_t>(n * n * n));
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b)
      for (int c = b; c < n; ++c) {
        std::pair<Expr, Expr> v{random_polynomial(d, rng), random_polynomial(d, rng)};
        const int idx[3] = {a, b, c};
        const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
        for (const auto& p : perms) kappa[static_cast<std::size_t>((idx[p[0]] * n + idx[p[1]]) * n + idx[p[2]])] = v;
      }
  std::vector<Expr> c(static_cast<std::size_t>(d * d * d));
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        const auto& [re, im] = kappa[static_cast<std::size_t>((k / 2 * n + i / 2) * n + j / 2)];
        c[static_cast<std::size_t>((k * d + i) * d + j)] = detail::rotate_re(k % 2 + i % 2 + j % 2, re, im);
      }
  auto shared = std::make_shared<const std::vector<Expr>>(std::move(c));
  const MetricField G = s.G;
  return ConnectionField(s.chart(), Provenance::generated, "j-invariant-codazzi(seed " + std::to_string(seed) + ")",
                         [G, shared](std::span<const double> p) {
                           return detail::levi_civita_plus_raised(G.jet(p), *shared, p);
                         });
}

/// rho(X, Y) = S(X, Y) - S(JX, JY) for a random symmetric polynomial S,
/// which is pure for J.
inline MetricField random_pure_perturbation(const Structure& s, std::uint64_t seed, double scale = 0.2) {
  const int d = s.dim();
  SplitMix64 rng(seed);
  ExprMatrix sm(d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      sm(i, j) = Expr::constant(scale) * random_polynomial(d, rng);
      sm(j, i) = sm(i, j);
    }
  ExprMatrix jm(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) jm(i, j) = s.J(i, j);
  const ExprMatrix rho = sm - jm.transpose() * sm * jm;
  return MetricField(s.chart(), rho.entries(), MetricRole::generic);
}

/// The structure with g replaced by g + rho for a random pure rho.
inline Structure perturbed_structure(const Structure& s, std::uint64_t seed) {
  const MetricField rho = random_pure_perturbation(s, seed);
  std::vector<Expr> g;
  for (int i = 0; i < s.dim() * s.dim(); ++i) g.push_back(s.g.components()[i] + rho.components()[i]);
  return make_structure(s.name + "+perturbation(seed " + std::to_string(seed) + ")", MetricField(s.chart(), g),
                        s.J);
}

}  // namespace norden
