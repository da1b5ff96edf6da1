#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "norden/catalog.hpp"
#include "norden/geometry.hpp"

using namespace norden;

namespace {

std::vector<Expr> exprs(const std::vector<std::string>& texts, const Chart& chart) {
  std::vector<Expr> out;
  for (const auto& t : texts) out.push_back(parse_expr(t, chart.names()));
  return out;
}

const Chart kPlane(2);

ComplexStructureField rotation() { return ComplexStructureField(kPlane, exprs({"0", "-1", "1", "0"}, kPlane)); }

}  // namespace

TEST(Chart, RejectsBadDimensions) {
  EXPECT_THROW(Chart(3), InvalidInputError);
  EXPECT_THROW(Chart(0), InvalidInputError);
  EXPECT_THROW(Chart(8), InvalidInputError);
  EXPECT_THROW(Chart(2, {"x", "x"}), InvalidInputError);
  EXPECT_THROW(Chart(2, {"x", "y"}, {{1, 0}, {0, 1}}), InvalidInputError);
  EXPECT_EQ(Chart(4).names()[3], "x4");
}

TEST(Twin, FlatModel) {
  const MetricField g(kPlane, exprs({"1", "0", "0", "-1"}, kPlane));
  const MetricField G = twin_metric(g, rotation());
  EXPECT_EQ(G.role(), MetricRole::twin);
  const std::vector<double> p = {0.2, -0.6};
  const Eigen::Matrix2d expected{{0, -1}, {-1, 0}};
  EXPECT_TRUE(G.values(p).isApprox(Eigen::MatrixXd(expected)));
}

TEST(Twin, HolomorphicPairMatrix) {
  // g = [[u,v],[v,-u]] -> G = [[v,-u],[-u,-v]]
  const MetricField g(kPlane, exprs({"x1^2 - x2^2 + 2", "2*x1*x2", "2*x1*x2", "-(x1^2 - x2^2 + 2)"}, kPlane));
  const MetricField G = twin_metric(g, rotation());
  for (const auto& p : std::vector<std::vector<double>>{{0.3, 0.2}, {-0.4, 0.1}}) {
    const double u = p[0] * p[0] - p[1] * p[1] + 2, v = 2 * p[0] * p[1];
    const Eigen::Matrix2d expected{{v, -u}, {-u, -v}};
    EXPECT_LE((G.values(p) - expected).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(Twin, TwinOfTwinIsMinusG) {
  const Structure s = holomorphic_metric_example();
  const MetricField GG = twin_metric(s.G, s.J);
  for (const auto& p : sample_structure_points(s, 10, 1).points)
    EXPECT_LE((GG.values(p) + s.g.values(p)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Twin, ImpureMetricRejected) {
  const MetricField g(kPlane, exprs({"1", "0", "0", "1"}, kPlane));
  EXPECT_THROW(twin_metric(g, rotation()), InvalidInputError);
}

TEST(Purity, FlatPasses) {
  const Structure s = flat_model(1);
  const CheckReport r = check_purity(s.g, s.J, sample_structure_points(s, 10, 4));
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.max_residual, 0.0);
  EXPECT_EQ(r.check, "purity");
}

TEST(Purity, EuclideanWithRotationFailsWithResidualTwo) {
  const MetricField g(kPlane, exprs({"1", "0", "0", "1"}, kPlane));
  const SampleSet samples = sample_box(kPlane.box(), 5, 8);
  const CheckReport r = check_purity(g, rotation(), samples);
  EXPECT_EQ(r.verdict, Verdict::fail);
  EXPECT_DOUBLE_EQ(r.max_residual, 2.0);
}

TEST(Purity, SymmetrizedMetricIsPure) {
  // g' = g - J^T g J is pure for any symmetric g
  const Chart chart(2);
  const std::vector<Expr> e = exprs({"1 + x1^2", "x2", "x2", "3 - x1*x2"}, chart);
  ExprMatrix g0(2);
  for (int i = 0; i < 4; ++i) g0(i / 2, i % 2) = e[static_cast<std::size_t>(i)];
  const ExprMatrix j = standard_complex_structure(2);
  const ExprMatrix g = g0 - j.transpose() * g0 * j;
  const MetricField gf(chart, g.entries());
  const CheckReport r = check_purity(gf, rotation(), sample_box(chart.box(), 20, 2));
  EXPECT_TRUE(r.passed()) << r.max_residual;
}

TEST(AlmostComplex, RotationSquaresToMinusIdentity) {
  const CheckReport r = check_almost_complex(rotation(), sample_box(kPlane.box(), 5, 1));
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.max_residual, 0.0);
}

TEST(AlmostComplex, NonComplexFails) {
  const ComplexStructureField j(kPlane, exprs({"0", "-2", "1", "0"}, kPlane));
  EXPECT_EQ(check_almost_complex(j, sample_box(kPlane.box(), 5, 1)).verdict, Verdict::fail);
}

TEST(Signature, Counts) {
  EXPECT_EQ(signature(Eigen::MatrixXd(Eigen::Vector2d(1, -1).asDiagonal())), (Signature{1, 1}));
  const Structure h = holomorphic_metric_example();
  const std::vector<double> p = {0.5, 0.5};
  EXPECT_EQ(signature(h.g, p), (Signature{1, 1}));
  Eigen::MatrixXd ns(2, 2);
  ns << 1, 2, 0, 1;
  EXPECT_THROW(signature(ns), InvalidInputError);
}

TEST(Structure, RejectsNonSymmetricMetricAndBadJ) {
  const MetricField asym(kPlane, exprs({"1", "x1", "0", "-1"}, kPlane));
  EXPECT_THROW(make_structure("bad", asym, rotation()), InvalidInputError);
  const MetricField g(kPlane, exprs({"1", "0", "0", "-1"}, kPlane));
  const ComplexStructureField j(kPlane, exprs({"1", "0", "0", "1"}, kPlane));
  EXPECT_THROW(make_structure("bad", g, j), InvalidInputError);
}

TEST(Structure, SamplingSkipsDegeneratePoints) {
  const Chart chart(2, {}, {{-1, 1}, {-1, 1}});
  const MetricField g(chart, exprs({"x1", "0", "0", "-x1"}, chart));
  const Structure s = make_structure("cone", g, ComplexStructureField(chart, exprs({"0", "-1", "1", "0"}, chart)));
  for (const auto& p : sample_structure_points(s, 50, 3).points) EXPECT_GT(std::abs(p[0]), 1e-6);
  const MetricField zero(chart, exprs({"0", "0", "0", "0"}, chart));
  const Structure z = make_structure("zero", zero, ComplexStructureField(chart, exprs({"0", "-1", "1", "0"}, chart)));
  EXPECT_THROW(sample_structure_points(z, 5, 3), InvalidInputError);
}
