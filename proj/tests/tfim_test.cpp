#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "critent/analysis.hpp"
#include "critent/edoracle.hpp"
#include "critent/tfim.hpp"

using namespace critent;
using namespace critent::tfim;

TEST(Momenta, Enumeration) {
  const double pi = std::numbers::pi;
  const auto even = momenta(4, Sector::even);
  const std::vector<double> even_expected = {-3 * pi / 4, -pi / 4, pi / 4, 3 * pi / 4};
  const auto odd = momenta(4, Sector::odd);
  const std::vector<double> odd_expected = {-pi / 2, 0.0, pi / 2, pi};
  for (int k = 0; k < 4; ++k) {
    EXPECT_NEAR(even[k], even_expected[k], 1e-15);
    EXPECT_NEAR(odd[k], odd_expected[k], 1e-15);
  }
  for (int n : {6, 10, 1000}) EXPECT_EQ(momenta(n, Sector::even).size(), static_cast<std::size_t>(n));
  EXPECT_THROW(momenta(5, Sector::even), DomainError);
}

TEST(Dispersion, Examples) {
  for (double phi : {0.0, 1.0, 3.0}) EXPECT_DOUBLE_EQ(dispersion(0.0, phi), 1.0);
  EXPECT_DOUBLE_EQ(dispersion(2.0, std::numbers::pi), 3.0);
  for (double phi : {1e-3, 0.5, 2.0}) EXPECT_NEAR(dispersion(1.0, phi), 2.0 * std::abs(std::sin(phi / 2)), 1e-14);
}

TEST(MagnetizationZ, Examples) {
  EXPECT_DOUBLE_EQ(magnetization_z(0.0, 0.0, 10), 1.0);
  // tanh(w/T)/w -> 1/T and the cosines sum to zero, so <sigma^z> -> 1/T.
  EXPECT_NEAR(magnetization_z(0.7, 1e8, 10), 1e-8, 1e-20);
  EXPECT_NEAR(magnetization_z(1.0, 0.0, 1000), 2.0 / std::numbers::pi, 2e-3);
}

TEST(ACoefficient, Limits) {
  for (int n = -2; n <= 2; ++n) EXPECT_NEAR(a_coefficient(0.0, 0.0, 10, n), n == 0 ? -1.0 : 0.0, 1e-15);
  for (int n = -2; n <= 2; ++n) EXPECT_NEAR(a_coefficient(1e4, 0.0, 20, n), n == -1 ? 1.0 : 0.0, 1e-3);
  for (int n : {-1, 0, 1}) {
    EXPECT_LT(std::abs(a_coefficient(0.5, 0.0, 1000, n, Sector::even) - a_coefficient(0.5, 0.0, 1000, n, Sector::odd)),
              1e-2);
  }
  EXPECT_THROW(a_coefficient(0.5, 0.0, 10, 11), DomainError);
}

TEST(ACoefficient, WindowMatchesPrintedSums) {
  for (double lambda : {0.3, 1.0, 1.7}) {
    for (double t : {0.0, 0.8}) {
      for (auto sector : {Sector::even, Sector::odd}) {
        const CoefficientWindow w(lambda, t, 12, 6, sector);
        for (int n = -6; n <= 6; ++n) EXPECT_NEAR(w(n), a_coefficient(lambda, t, 12, n, sector), 1e-14);
      }
    }
  }
}

TEST(ACoefficient, MagnetizationIsMinusZerothCoefficient) {
  for (double lambda : {0.2, 1.0, 3.0}) {
    for (double t : {0.0, 0.5}) EXPECT_NEAR(magnetization_z(lambda, t, 16), -a_coefficient(lambda, t, 16, 0), 1e-14);
  }
}

TEST(Correlations, UncoupledLimit) {
  for (int r = 1; r <= 3; ++r) {
    const auto c = correlations({0.0, 0.0, 8, r, Sector::even});
    EXPECT_NEAR(c.gxx, 0.0, 1e-15);
    EXPECT_NEAR(c.gzz, 1.0, 1e-15);
    EXPECT_NEAR(c.mz, 1.0, 1e-15);
  }
}

TEST(Correlations, StrongCouplingLimit) {
  const auto c = correlations({1e4, 0.0, 20, 3, Sector::even});
  EXPECT_NEAR(c.gxx, 1.0, 1e-3);
  EXPECT_NEAR(c.gyy, 0.0, 1e-3);
}

TEST(Correlations, Errors) {
  EXPECT_THROW(correlations({1.0, 0.0, 7, 1}), DomainError);
  EXPECT_THROW(correlations({1.0, 0.0, 8, 5}), DomainError);
  EXPECT_THROW(correlations({1.0, 0.0, 8, 0}), DomainError);
  EXPECT_THROW(correlations({-1.0, 0.0, 8, 1}), DomainError);
  EXPECT_THROW(correlations({1.0, -0.1, 8, 1}), DomainError);
}

TEST(TwoSiteState, UncoupledIsPolarizedProduct) {
  const auto rho = two_site_state_tfim({0.0, 0.0, 8, 2});
  EXPECT_NEAR(rho.matrix()(0, 0).real(), 1.0, 1e-15);
  EXPECT_NEAR(mutual_information(rho).value, 0.0, 1e-12);
}

TEST(TwoSiteState, StrongCouplingFarPairCarriesOneBit) {
  EXPECT_NEAR(correlation_entropy_tfim({1e4, 0.0, 12, 6}).value, 1.0, 1e-3);
}

TEST(TwoSiteState, RejectsNonPositiveCorrelations) {
  EXPECT_THROW(two_site_state(CorrelationSet{0.0, 0.9, -0.9, 0.0}), ModelConsistencyError);
}

TEST(TwoSiteState, MatchesOracleReducedStateEntrywise) {
  const auto oracle = ed::oracle_observables(10, 1.0, 0.0, 3);
  const auto rho = two_site_state_tfim({1.0, 0.0, 10, 3});
  EXPECT_LT((rho.matrix() - oracle.two_site).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(TwoSiteState, PositiveAndMarginallyConsistentOnGrid) {
  for (double lambda : {0.25, 0.75, 1.0, 1.5, 3.0}) {
    for (double t : {0.0, 0.3, 1.0}) {
      for (int r = 1; r <= 8; ++r) {
        const auto c = correlations({lambda, t, 16, r});
        const auto rho = two_site_state(c);
        EXPECT_GE(rho.spectrum()[0], 0.0);
        const auto single = single_site_state(c);
        for (std::size_t site : {0u, 1u}) {
          EXPECT_LT((partial_trace(rho, {site}).matrix() - single.matrix()).cwiseAbs().maxCoeff(), 1e-12);
        }
      }
    }
  }
}

TEST(CorrelationEntropy, OracleEquivalenceAtZeroTemperature) {
  for (int n : {4, 6, 8, 10}) {
    for (double lambda : {0.25, 0.5, 1.0, 1.5, 2.0}) {
      for (int r = 1; r <= n / 2; ++r) {
        const auto ff = correlations({lambda, 0.0, n, r});
        const auto ed = ed::oracle_observables(n, lambda, 0.0, r);
        const double mi = correlation_entropy_tfim({lambda, 0.0, n, r}).value;
        EXPECT_NEAR(ff.mz, ed.correlations.mz, 1e-8);
        EXPECT_NEAR(ff.gxx, ed.correlations.gxx, 1e-8);
        EXPECT_NEAR(ff.gyy, ed.correlations.gyy, 1e-8);
        EXPECT_NEAR(ff.gzz, ed.correlations.gzz, 1e-8);
        EXPECT_NEAR(mi, ed.mutual_information, 1e-8) << "N=" << n << " lambda=" << lambda << " r=" << r;
      }
    }
  }
}

TEST(CorrelationEntropy, ParamagnetDecaysOrderedPhasePlateaus) {
  EXPECT_LT(correlation_entropy_tfim({0.2, 0.0, 1000, 20}).value, 1e-8);
  const CoefficientWindow w(2.0, 0.0, 1000, 101);
  const double mi50 = mutual_information(two_site_state(w.correlations(50))).value;
  const double mi100 = mutual_information(two_site_state(w.correlations(100))).value;
  EXPECT_LT(std::abs(mi50 - mi100), 1e-4);
  EXPECT_GT(mi100, 0.1);
}

TEST(CorrelationEntropy, ThermalSuppressionInOrderedPhase) {
  const double t0 = correlation_entropy_tfim({2.0, 0.0, 400, 20}).value;
  const double t1 = correlation_entropy_tfim({2.0, 0.2, 400, 20}).value;
  const double t2 = correlation_entropy_tfim({2.0, 0.5, 400, 20}).value;
  EXPECT_GT(t0, t1);
  EXPECT_GT(t1, t2);
}

TEST(CorrelationEntropy, CriticalPowerLawVersusGappedDecay) {
  const int n = 2048;
  auto local_slope = [&](double lambda, int r_lo, int r_hi) {
    const CoefficientWindow w(lambda, 0.0, n, r_hi + 1);
    std::vector<analysis::Sample> pts;
    for (double x = r_lo; x <= r_hi + 0.5; x *= std::sqrt(2.0)) {
      const int r = static_cast<int>(std::lround(x));
      pts.push_back({double(r), mutual_information(two_site_state(w.correlations(r))).value});
    }
    return analysis::power_law_fit(pts).coefficients[0];
  };
  const double first = local_slope(1.0, 8, 32);
  const double second = local_slope(1.0, 32, 128);
  EXPECT_NEAR(first, second, 0.1);
  // Gapped side: MI at r = 16 is already many decades below r = 4.
  const CoefficientWindow gapped(0.5, 0.0, n, 17);
  const double near = mutual_information(two_site_state(gapped.correlations(4))).value;
  const double far = mutual_information(two_site_state(gapped.correlations(16))).value;
  EXPECT_LT(far / near, std::pow(4.0, -6.0));
}

TEST(CouplingDerivative, StepHalvingConsistency) {
  auto mi = [](double l) { return correlation_entropy_tfim({l, 0.0, 32, 1}).value; };
  const double coarse = analysis::derivative_at(mi, 1.0, 1e-3);
  const double fine = analysis::derivative_at(mi, 1.0, 5e-4);
  EXPECT_NEAR(coarse, fine, 1e-4);
  // Larger rings need the size-scaled step to stay inside the crossover window.
  auto mi_large = [](double l) { return correlation_entropy_tfim({l, 0.0, 1024, 1}).value; };
  const double h = coupling_step(1024);
  EXPECT_NEAR(analysis::derivative_at(mi_large, 1.0, h), analysis::derivative_at(mi_large, 1.0, h / 2), 5e-4);
  EXPECT_DOUBLE_EQ(coupling_step(64), 1e-3);
  EXPECT_DOUBLE_EQ(coupling_step(4096), 0.1 / 4096);
}
