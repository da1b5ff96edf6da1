#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "norden/norden.hpp"
#include "oracles.hpp"

using namespace norden;

namespace {

/// Connection on the plane with the listed nonzero (k, i, j, value) entries.
ConnectionField sparse_connection(const Chart& chart, const std::vector<std::tuple<int, int, int, double>>& entries) {
  const int d = chart.dim();
  std::vector<Expr> c(static_cast<std::size_t>(d * d * d), Expr::constant(0.0));
  for (const auto& [k, i, j, v] : entries) c[static_cast<std::size_t>((k * d + i) * d + j)] = Expr::constant(v);
  return ConnectionField::from_expressions(chart, c);
}

}  // namespace

TEST(LeviCivita, ConstantMetricGivesZero) {
  const Structure s = flat_model(2);
  const ConnectionField lc = levi_civita(s.g);
  EXPECT_EQ(lc.provenance(), Provenance::levi_civita_g);
  for (const auto& p : sample_structure_points(s, 5, 1).points) EXPECT_EQ(lc.jet(p).max_abs_value(), 0.0);
}

TEST(LeviCivita, MatchesDifferencedChristoffel) {
  for (const Structure& s : {holomorphic_metric_example(), non_cr_example(), nonintegrable_J_example()}) {
    std::vector<std::vector<double>> points = sample_structure_points(s, 5, 21).points;
    if (s.dim() == 2) points.push_back({0.3, 0.2});
    for (const auto& p : points) {
      const oracle::Table3 fd = oracle::christoffel(oracle::matrix_of(s.g.components(), s.dim()), p);
      const oracle::Table3 lc = oracle::connection_values(levi_civita(s.g), p);
      EXPECT_LE(oracle::max_abs_diff(fd.v, lc.v), 1e-6) << s.name;
    }
  }
}

TEST(LeviCivita, MetricCompatibleAndTorsionFree) {
  for (const auto& e : catalog()) {
    const Structure s = e.build();
    const ConnectionField lc = levi_civita(s.g);
    for (const auto& p : sample_structure_points(s, 50, 3).points) {
      EXPECT_LE(covariant_derivative_02(lc, s.g, p).max_abs(), 1e-9) << s.name;
      EXPECT_LE(torsion(lc, p).max_abs(), 1e-12) << s.name;
    }
  }
}

TEST(DerivedConnections, AnalyticDerivativesMatchDifferences) {
  const Structure s = nonintegrable_J_example();
  const ConnectionField base = random_connection(s.chart(), 17);
  const std::vector<ConnectionField> derived = {levi_civita(s.g), levi_civita(s.G), g_conjugate(base, s.g),
                                                G_conjugate(base, s.G), J_conjugate(base, s.J),
                                                random_codazzi_connection(s.G, 4)};
  const double h = 1e-5;
  for (const auto& c : derived)
    for (const auto& p : sample_structure_points(s, 3, 8).points) {
      const ConnectionJet jet = c.jet(p);
      for (int l = 0; l < 4; ++l) {
        const oracle::Table3 plus = oracle::connection_values(c, oracle::shifted(p, l, h));
        const oracle::Table3 minus = oracle::connection_values(c, oracle::shifted(p, l, -h));
        for (int k = 0; k < 4; ++k)
          for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
              const double exact = jet.derivative(l, k, i, j);
              const double fd = (plus(k, i, j) - minus(k, i, j)) / (2 * h);
              EXPECT_LE(std::abs(exact - fd), 1e-4 * std::max(1.0, std::abs(exact))) << c.description();
            }
      }
    }
}

TEST(Torsion, SingleEntry) {
  const Chart chart(2);
  const ConnectionField c = sparse_connection(chart, {{0, 0, 1, 1.0}});
  const TensorValue t = torsion(c, std::vector<double>{0.1, 0.2});
  EXPECT_EQ(t(0, 0, 1), 1.0);
  EXPECT_EQ(t(0, 1, 0), -1.0);
  EXPECT_EQ(t.max_abs(), 1.0);
}

TEST(Torsion, AntisymmetricForRandomConnections) {
  const Chart chart(4);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const ConnectionField c = random_connection(chart, seed);
    const std::vector<double> p = {0.1, -0.2, 0.3, 0.4};
    const TensorValue t = torsion(c, p);
    for (int k = 0; k < 4; ++k)
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) EXPECT_EQ(t(k, i, j), -t(k, j, i));
  }
}

TEST(CovariantDerivative02, ConstantCoefficientsByHand) {
  const Structure s = flat_model(1);
  // Gamma^1_11 = 1, Gamma^2_12 = 2, Gamma^1_21 = -1 (1-based)
  const ConnectionField c = sparse_connection(s.chart(), {{0, 0, 0, 1.0}, {1, 0, 1, 2.0}, {0, 1, 0, -1.0}});
  const TensorValue dg = covariant_derivative_02(c, s.g, std::vector<double>{0.5, 0.5});
  const double g[2][2] = {{1, 0}, {0, -1}};
  const double gam[2][2][2] = {{{1, 0}, {-1, 0}}, {{0, 2}, {0, 0}}};
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        double expected = 0;
        for (int l = 0; l < 2; ++l) expected -= gam[l][k][i] * g[l][j] + gam[l][k][j] * g[i][l];
        EXPECT_DOUBLE_EQ(dg(k, i, j), expected);
      }
  EXPECT_DOUBLE_EQ(dg(0, 0, 0), -2.0);
  EXPECT_DOUBLE_EQ(dg(0, 1, 1), 4.0);
  EXPECT_DOUBLE_EQ(dg(1, 0, 0), 2.0);
}

TEST(CovariantDerivative02, LinearInTheTensor) {
  const Structure s = holomorphic_metric_example();
  const ConnectionField c = random_connection(s.chart(), 3);
  const MetricField sum(s.chart(), [&] {
    std::vector<Expr> e;
    for (int i = 0; i < 4; ++i) e.push_back(s.g.components()[i] + s.G.components()[i]);
    return e;
  }());
  for (const auto& p : sample_structure_points(s, 10, 6).points) {
    const auto a = oracle::values(covariant_derivative_02(c, s.g, p));
    const auto b = oracle::values(covariant_derivative_02(c, s.G, p));
    const auto ab = oracle::values(covariant_derivative_02(c, sum, p));
    for (std::size_t n = 0; n < ab.size(); ++n) EXPECT_NEAR(ab[n], a[n] + b[n], 1e-12);
  }
}

TEST(CovariantDerivative11, VanishesOnAntiKahlerExamples) {
  const Structure flat = flat_model(1);
  const std::vector<double> p0 = {0.3, 0.3};
  EXPECT_EQ(covariant_derivative_11(ConnectionField::zero(flat.chart()), flat.J, p0).max_abs(), 0.0);
  EXPECT_EQ(covariant_derivative_11(levi_civita(flat.g), flat.J, p0).max_abs(), 0.0);
  const Structure h = holomorphic_metric_example();
  for (const auto& p : sample_structure_points(h, 50, 2).points)
    EXPECT_LE(covariant_derivative_11(levi_civita(h.g), h.J, p).max_abs(), 1e-9);
}

TEST(CovariantDerivative11, NonCrAtDesignatedPoint) {
  // hand value: Gamma_2 = [[0,1/2],[1/2,0]] and [Gamma_2, J] = diag(1,-1)
  const Structure s = non_cr_example();
  const TensorValue dj = covariant_derivative_11(levi_civita(s.g), s.J, std::vector<double>{1.0, 0.5});
  EXPECT_NEAR(dj(1, 0, 0), 1.0, 1e-14);
  EXPECT_NEAR(dj(1, 1, 1), -1.0, 1e-14);
  EXPECT_NEAR(dj.max_abs(), 1.0, 1e-14);
  EXPECT_NEAR(std::abs(dj(0, 0, 0)) + std::abs(dj(0, 0, 1)) + std::abs(dj(0, 1, 0)) + std::abs(dj(0, 1, 1)), 0.0,
              1e-14);
}

TEST(JInvariance, Cases) {
  const Structure flat = flat_model(1);
  const SampleSet samples = sample_structure_points(flat, 20, 5);
  EXPECT_TRUE(check_J_invariant(ConnectionField::zero(flat.chart()), flat.J, samples).passed());
  const Structure flat4 = flat_model(2);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const CheckReport r = check_J_invariant(random_J_invariant_connection(flat4, seed), flat4.J,
                                            sample_structure_points(flat4, 20, seed));
    EXPECT_TRUE(r.passed());
    EXPECT_LE(r.max_residual, 1e-12);
  }
  // [Gamma_1, J] with Gamma^1_11 = 1 has entries of size 1
  const CheckReport bad = check_J_invariant(sparse_connection(flat.chart(), {{0, 0, 0, 1.0}}), flat.J, samples);
  EXPECT_EQ(bad.verdict, Verdict::fail);
  EXPECT_GE(bad.max_residual, 0.5);
}

TEST(ConnectionField, WrongCoefficientCountRejected) {
  const Chart chart(2);
  EXPECT_THROW(ConnectionField::from_expressions(chart, std::vector<Expr>(7, Expr::constant(0.0))), InvalidInputError);
}
