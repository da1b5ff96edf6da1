#include <gtest/gtest.h>

#include <vector>

#include "norden/norden.hpp"
#include "oracles.hpp"

using namespace norden;

TEST(Catalog, EntriesAndLookup) {
  ASSERT_EQ(catalog().size(), 5u);
  EXPECT_NE(find_catalog_entry("flat4"), nullptr);
  EXPECT_EQ(find_catalog_entry("nope"), nullptr);
  EXPECT_THROW(catalog_structure("nope"), InvalidInputError);
  for (const auto& e : catalog()) EXPECT_EQ(e.build().name, e.name);
}

TEST(Catalog, PureNeutralAlmostComplex) {
  for (const auto& e : catalog()) {
    const Structure s = e.build();
    const SampleSet samples = sample_structure_points(s, 100, 1);
    const CheckReport pure = check_purity(s.g, s.J, samples);
    EXPECT_TRUE(pure.passed()) << e.name << " " << pure.max_residual;
    const CheckReport ac = check_almost_complex(s.J, samples);
    EXPECT_LE(ac.max_residual, 1e-10) << e.name;
    const int n = s.dim() / 2;
    for (const auto& p : samples.points) EXPECT_EQ(signature(s.g, p), (Signature{n, n})) << e.name;
  }
}

TEST(Catalog, FlatModelValues) {
  const Structure s = flat_model(1);
  const std::vector<double> p = {0.0, 0.0};
  Eigen::Matrix2d g{{1, 0}, {0, -1}}, j{{0, -1}, {1, 0}}, G{{0, -1}, {-1, 0}};
  EXPECT_EQ(s.g.values(p), Eigen::MatrixXd(g));
  EXPECT_EQ(s.J.values(p), Eigen::MatrixXd(j));
  EXPECT_EQ(s.G.values(p), Eigen::MatrixXd(G));
}

TEST(Catalog, AdvertisedProperties) {
  for (const auto& e : catalog()) {
    const Structure s = e.build();
    const SampleSet samples = sample_structure_points(s, 20, 9);
    double n = 0;
    for (const auto& p : samples.points) n = std::max(n, nijenhuis_bracket(s.J, p).max_abs());
    EXPECT_EQ(n <= 1e-12, e.integrable) << e.name;
    EXPECT_EQ(check_anti_kahler(s, samples).passed(), e.anti_kahler) << e.name;
    EXPECT_EQ(check_J_invariant(levi_civita(s.G), s.J, samples).passed(), e.j_invariant_codazzi) << e.name;
  }
}

TEST(Catalog, NonintegrableJHasLargeTorsionOfJ) {
  const Structure s = nonintegrable_J_example();
  const SampleSet samples = sample_structure_points(s, 1, 2024);
  const auto& p = samples.points.front();
  const oracle::Table3 fd = oracle::nijenhuis(oracle::matrix_of(s.J.components(), 4), p);
  EXPECT_GE(oracle::max_abs(fd.v), 0.01);
  EXPECT_GE(nijenhuis_bracket(s.J, p).max_abs(), 0.01);
}

TEST(Generators, Deterministic) {
  const Structure s = flat_model(2);
  const auto text = [&](const ConnectionField& c) {
    std::string out;
    for (const auto& e : c.expressions()) out += to_string(e) + ";";
    return out;
  };
  EXPECT_EQ(text(random_connection(s.chart(), 5)), text(random_connection(s.chart(), 5)));
  EXPECT_NE(text(random_connection(s.chart(), 5)), text(random_connection(s.chart(), 6)));
  EXPECT_EQ(text(random_J_invariant_connection(s, 5)), text(random_J_invariant_connection(s, 5)));
  const std::vector<double> p = {0.1, 0.2, -0.3, 0.4};
  EXPECT_EQ(random_codazzi_connection(s.G, 3).jet(p).flatten(), random_codazzi_connection(s.G, 3).jet(p).flatten());
  EXPECT_EQ(random_J_invariant_codazzi_connection(s, 3).jet(p).flatten(),
            random_J_invariant_codazzi_connection(s, 3).jet(p).flatten());
}

TEST(Generators, SatisfyAdvertisedHypotheses) {
  for (const auto& e : catalog()) {
    const Structure s = e.build();
    const SampleSet samples = sample_structure_points(s, 100, 3);
    const ConnectionField cod = random_codazzi_connection(s.G, 1);
    EXPECT_TRUE(check_codazzi_metric(cod, s.G, samples).passed()) << e.name;
    EXPECT_TRUE(check_torsion_free(cod, samples).passed()) << e.name;
    if (!e.standard_j) {
      EXPECT_THROW(random_J_invariant_connection(s, 1), InvalidInputError);
      continue;
    }
    const ConnectionField inv = random_J_invariant_connection(s, 1);
    EXPECT_LE(check_J_invariant(inv, s.J, samples).max_residual, 1e-12) << e.name;
    EXPECT_TRUE(check_torsion_free(inv, samples).passed()) << e.name;
    if (e.j_invariant_codazzi) {
      const ConnectionField both = random_J_invariant_codazzi_connection(s, 1);
      EXPECT_TRUE(check_J_invariant(both, s.J, samples).passed()) << e.name;
      EXPECT_TRUE(check_codazzi_metric(both, s.G, samples).passed()) << e.name;
      EXPECT_TRUE(check_codazzi_metric(both, s.g, samples).passed()) << e.name;
    }
  }
}

TEST(Generators, PerturbedStructureStaysPure) {
  const Structure base = holomorphic_metric_example();
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Structure s = perturbed_structure(base, seed);
    EXPECT_TRUE(check_purity(s.g, s.J, sample_structure_points(s, 20, seed)).passed());
  }
}

TEST(Generators, PolynomialDegreeBounds) {
  SplitMix64 rng(1);
  EXPECT_THROW(random_polynomial(2, rng, 3), InvalidInputError);
  EXPECT_TRUE(random_polynomial(2, rng, 0).is_constant());
}
