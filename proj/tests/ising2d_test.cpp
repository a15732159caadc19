#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "critent/analysis.hpp"
#include "critent/ising2d.hpp"
#include "oracles.hpp"

using namespace critent;
using namespace critent::ising2d;

TEST(CriticalTemperature, Value) {
  const double tc = critical_temperature();
  EXPECT_NEAR(tc, 2.269185, 1e-6);
  EXPECT_NEAR(std::sinh(2.0 / tc), 1.0, 1e-12);
  EXPECT_NEAR(2.0 * std::pow(std::tanh(2.0 / tc), 2), 1.0, 1e-12);
}

TEST(Magnetization, Examples) {
  EXPECT_EQ(magnetization(3.0), 0.0);
  EXPECT_EQ(magnetization(critical_temperature()), 0.0);
  EXPECT_NEAR(magnetization(0.2), 1.0, 1e-12);
  EXPECT_NEAR(magnetization(2.0), std::pow(1.0 - std::pow(std::sinh(1.0), -4.0), 0.125), 1e-15);
  EXPECT_NEAR(magnetization(2.0), 0.9113, 1e-4);
  EXPECT_THROW(magnetization(0.0), DomainError);
}

TEST(DiagonalCorrelation, NearestAtCriticality) {
  EXPECT_NEAR(diagonal_correlation(critical_temperature(), 1), 2.0 / std::numbers::pi, 1e-9);
}

TEST(DiagonalCorrelation, MatchesCriticalProductFormula) {
  const DiagonalCorrelator g(critical_temperature(), 40);
  for (int n : {1, 2, 3, 5, 10, 20, 40}) {
    EXPECT_NEAR(g(n), oracle::critical_diagonal_correlation(n), 1e-8) << "N=" << n;
  }
}

TEST(DiagonalCorrelation, DeepOrderApproachesPlateau) {
  const double m = magnetization(0.5);
  const double g = diagonal_correlation(0.5, 10);
  EXPECT_GE(g, m * m - 1e-12);
  EXPECT_LE(g, 1.0);
  EXPECT_NEAR(g, m * m, 1e-6);
}

TEST(DiagonalCorrelation, BoundedAndNonIncreasingInSeparation) {
  for (double t : {1.5, critical_temperature(), 3.0}) {
    const DiagonalCorrelator g(t, 60);
    double previous = 1.0;
    for (int n = 1; n <= 60; ++n) {
      const double v = g(n);
      EXPECT_LE(std::abs(v), 1.0 + 1e-8);
      EXPECT_LE(v, previous + 1e-9) << "T=" << t << " N=" << n;
      previous = v;
    }
  }
}

TEST(DiagonalCorrelation, PositiveAboveCriticality) {
  const DiagonalCorrelator g(3.0, 6);
  for (int n = 1; n <= 6; ++n) EXPECT_GT(g(n), 0.0) << n;
}

TEST(DiagonalCorrelation, Errors) {
  EXPECT_THROW(diagonal_correlation(-1.0, 3), DomainError);
  EXPECT_THROW(diagonal_correlation(2.0, 0), DomainError);
  const DiagonalCorrelator g(2.0, 4);
  EXPECT_THROW(g(5), DomainError);
}

TEST(TwoSiteState, SymmetricLowTemperatureIsClassicalCorrelation) {
  const auto rho = two_site_state_2d({0.3, 40, Ensemble::symmetric});
  EXPECT_NEAR(rho.matrix()(0, 0).real(), 0.5, 1e-9);
  EXPECT_NEAR(rho.matrix()(3, 3).real(), 0.5, 1e-9);
  EXPECT_NEAR(mutual_information(rho).value, 1.0, 1e-6);
}

TEST(TwoSiteState, BrokenLowTemperatureIsPolarized) {
  const auto rho = two_site_state_2d({0.3, 10, Ensemble::broken});
  EXPECT_NEAR(rho.matrix()(0, 0).real(), 1.0, 1e-9);
  EXPECT_NEAR(mutual_information(rho).value, 0.0, 1e-6);
}

TEST(TwoSiteState, HighTemperatureIsProduct) {
  const auto rho = two_site_state_2d({3.0, 30, Ensemble::symmetric});
  EXPECT_LT((rho.matrix() - 0.25 * CMatrix::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-6);
  EXPECT_LT(correlation_entropy_2d({3.0, 30, Ensemble::symmetric}).value, 1e-6);
}

TEST(TwoSiteState, MarginalConsistency) {
  for (double t : {1.0, 2.0, critical_temperature(), 2.5}) {
    for (auto ens : {Ensemble::symmetric, Ensemble::broken}) {
      for (int n : {1, 5, 20}) {
        const auto rho = two_site_state_2d({t, n, ens});
        const auto single = single_site_state_2d(t, ens);
        for (std::size_t site : {0u, 1u}) {
          EXPECT_LT((partial_trace(rho, {site}).matrix() - single.matrix()).cwiseAbs().maxCoeff(), 1e-12);
        }
      }
    }
  }
}

TEST(TwoSiteState, RejectsIncompatibleInputs) {
  EXPECT_THROW(two_site_state(0.0, 0.9), ModelConsistencyError);
  EXPECT_THROW(two_site_state(1.2, 0.0), ModelConsistencyError);
}

TEST(CorrelationEntropy, CriticalAmplitude) {
  const DiagonalCorrelator g(critical_temperature(), 100);
  for (int n : {50, 75, 100}) {
    const double mi = mutual_information(two_site_state(g(n), 0.0)).value;
    EXPECT_NEAR(mi * 2.0 * std::sqrt(n) * std::numbers::ln2, 0.416, 0.01) << "N=" << n;
  }
}

TEST(CorrelationEntropy, CriticalPowerLaw) {
  const DiagonalCorrelator g(critical_temperature(), 100);
  std::vector<analysis::Sample> pts;
  for (int n = 20; n <= 100; n += 10) pts.push_back({double(n), mutual_information(two_site_state(g(n), 0.0)).value});
  EXPECT_NEAR(analysis::power_law_fit(pts).coefficients[0], -0.5, 0.03);
}

TEST(CorrelationEntropy, LongRangePlateauBelowCriticality) {
  EXPECT_GT(correlation_entropy_2d({1.0, 50, Ensemble::symmetric}).value, 0.5);
}

TEST(CorrelationEntropy, FasterThanPowerDecayAboveCriticality) {
  const DiagonalCorrelator g(2.5, 40);
  const double mi20 = mutual_information(two_site_state(g(20), 0.0)).value;
  const double mi40 = mutual_information(two_site_state(g(40), 0.0)).value;
  EXPECT_GT(mi20, 0.0);
  EXPECT_LT(mi40 / mi20, 0.25);
}

TEST(CriticalExpansion, Examples) {
  EXPECT_EQ(critical_expansion_mi(0.0, 0.5), 0.0);
  const double exact = correlation_entropy_2d({3.0, 20, Ensemble::symmetric}).value;
  ASSERT_LT(exact, 1e-3);
  EXPECT_NEAR(critical_expansion_mi(3.0, 20) / exact, 1.0, 0.1);
}

TEST(CriticalExpansion, CriticalRatioDiagnostic) {
  const double tc = critical_temperature();
  const double ratio = critical_expansion_mi(tc, 100) / (0.416 / (2.0 * std::sqrt(100.0) * std::numbers::ln2));
  RecordProperty("expansion_over_asymptote", std::to_string(ratio));
  EXPECT_TRUE(std::isfinite(ratio));
}

TEST(TemperatureStep, ShrinksNearCriticality) {
  const double tc = critical_temperature();
  EXPECT_DOUBLE_EQ(temperature_step(tc - 0.5), 1e-3);
  EXPECT_NEAR(temperature_step(tc + 1e-3), 1e-4, 1e-15);
}
