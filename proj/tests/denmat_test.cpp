#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "critent/denmat.hpp"
#include "critent/dimer.hpp"
#include "critent/random_states.hpp"
#include "oracles.hpp"

using namespace critent;

namespace {

DensityMatrix diagonal_state(std::vector<double> p, std::vector<std::size_t> dims) {
  CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(p.size()), static_cast<Eigen::Index>(p.size()));
  for (std::size_t k = 0; k < p.size(); ++k) m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = p[k];
  return make_density_matrix(m, std::move(dims));
}

DensityMatrix singlet() { return make_density_matrix(singlet_projector(), {2, 2}); }

std::string violated(const CMatrix& m, std::vector<std::size_t> dims) {
  try {
    make_density_matrix(m, std::move(dims));
  } catch (const ValidationError& e) {
    return e.invariant();
  }
  return "";
}

}  // namespace

TEST(MakeDensityMatrix, AcceptsMaximallyMixed) {
  const auto rho = make_density_matrix(0.25 * CMatrix::Identity(4, 4), {2, 2});
  EXPECT_EQ(rho.subsystem_count(), 2u);
  EXPECT_EQ(rho.dimension(), 4u);
}

TEST(MakeDensityMatrix, NamesViolatedInvariant) {
  CMatrix negative = CMatrix::Zero(2, 2);
  negative(0, 0) = 1.1;
  negative(1, 1) = -0.1;
  EXPECT_EQ(violated(negative, {2}), "positivity");
  EXPECT_EQ(violated(0.4 * CMatrix::Identity(2, 2), {2}), "trace");
  CMatrix skew = 0.5 * CMatrix::Identity(2, 2);
  skew(0, 1) = 0.2;
  EXPECT_EQ(violated(skew, {2}), "hermiticity");
  EXPECT_EQ(violated(0.25 * CMatrix::Identity(4, 4), {2, 3}), "dims");
  EXPECT_EQ(violated(CMatrix::Zero(2, 3), {2}), "shape");
}

TEST(MakeDensityMatrix, ClipsNumericalDust) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = 1.0 + 5e-13;
  m(1, 1) = -5e-13;
  const auto rho = make_density_matrix(m, {2});
  EXPECT_EQ(rho.spectrum()[0], 0.0);
  EXPECT_DOUBLE_EQ(rho.spectrum()[1], 1.0);
}

TEST(MakeDensityMatrix, AcceptsDimerThermalState) {
  EXPECT_NO_THROW(dimer_thermal_state(DimerParams{1.0}));
}

TEST(VonNeumannEntropy, Examples) {
  StateSampler sampler(1);
  EXPECT_NEAR(von_neumann_entropy(sampler.pure_state({3})).value, 0.0, 1e-10);
  EXPECT_NEAR(von_neumann_entropy(make_density_matrix(0.25 * CMatrix::Identity(4, 4), {4})).value, 2.0,
              1e-14);
  EXPECT_NEAR(von_neumann_entropy(diagonal_state({0.5, 0.25, 0.25}, {3})).value, 1.5, 1e-14);
}

TEST(PartialTrace, ProductStateAndSinglet) {
  StateSampler sampler(2);
  const auto a = sampler.mixed_state({2});
  const auto b = sampler.mixed_state({3});
  const auto ab = tensor_product(a, b);
  EXPECT_LT((partial_trace(ab, {0}).matrix() - a.matrix()).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((partial_trace(ab, {1}).matrix() - b.matrix()).cwiseAbs().maxCoeff(), 1e-12);
  const auto half = partial_trace(singlet(), {1});
  EXPECT_LT((half.matrix() - 0.5 * CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(PartialTrace, ThreeSubsystemsAgreeWithNestedTraces) {
  StateSampler sampler(3);
  const auto rho = sampler.mixed_state({2, 3, 2});
  const auto direct = partial_trace(rho, {0, 2});
  // Trace the middle factor by hand.
  CMatrix expected = CMatrix::Zero(4, 4);
  for (int a = 0; a < 2; ++a)
    for (int c = 0; c < 2; ++c)
      for (int a2 = 0; a2 < 2; ++a2)
        for (int c2 = 0; c2 < 2; ++c2)
          for (int b = 0; b < 3; ++b) expected(2 * a + c, 2 * a2 + c2) += rho.matrix()(6 * a + 2 * b + c, 6 * a2 + 2 * b + c2);
  EXPECT_LT((direct.matrix() - expected).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_EQ(direct.dims(), (std::vector<std::size_t>{2, 2}));
}

TEST(PartialTrace, Errors) {
  const auto rho = singlet();
  EXPECT_THROW(partial_trace(rho, {}), DomainError);
  EXPECT_THROW(partial_trace(rho, {0, 0}), DomainError);
  EXPECT_THROW(partial_trace(rho, {2}), DomainError);
}

TEST(PartialTrace, RandomStatesKeepUnitTrace) {
  StateSampler sampler(4);
  for (int trial = 0; trial < 200; ++trial) {
    const auto rho = sampler.mixed_state({2, 2});
    EXPECT_NEAR(partial_trace(rho, {0}).matrix().trace().real(), 1.0, 1e-12);
  }
}

TEST(TensorProduct, Examples) {
  const auto half = make_density_matrix(0.5 * CMatrix::Identity(2, 2), {2});
  EXPECT_LT((tensor_product(half, half).matrix() - 0.25 * CMatrix::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-15);
  StateSampler sampler(5);
  EXPECT_NEAR(von_neumann_entropy(tensor_product(sampler.pure_state({2}), sampler.pure_state({3}))).value, 0.0,
              1e-9);
}

TEST(TensorProduct, EntropyIsAdditive) {
  StateSampler sampler(6);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = sampler.mixed_state({2});
    const auto b = sampler.mixed_state({3});
    EXPECT_NEAR(von_neumann_entropy(tensor_product(a, b)).value,
                von_neumann_entropy(a).value + von_neumann_entropy(b).value, 1e-10);
  }
}

TEST(MutualInformation, Examples) {
  EXPECT_NEAR(mutual_information(singlet()).value, 2.0, 1e-12);
  EXPECT_NEAR(mutual_information(diagonal_state({0.5, 0.0, 0.0, 0.5}, {2, 2})).value, 1.0, 1e-14);
  StateSampler sampler(7);
  EXPECT_LT(mutual_information(tensor_product(sampler.mixed_state({2}), sampler.mixed_state({2}))).value, 1e-9);
  EXPECT_THROW(mutual_information(make_density_matrix(CMatrix::Identity(2, 2) * 0.5, {2})), DomainError);
}

TEST(RelativeEntropy, Examples) {
  StateSampler sampler(8);
  const auto rho = sampler.mixed_state({4});
  EXPECT_NEAR(relative_entropy(rho, rho), 0.0, 1e-10);
  const auto half = make_density_matrix(0.5 * CMatrix::Identity(2, 2), {2});
  CMatrix pure = CMatrix::Zero(2, 2);
  pure(0, 0) = 1.0;
  EXPECT_EQ(relative_entropy(half, make_density_matrix(pure, {2})), std::numeric_limits<double>::infinity());
}

TEST(Properties, KleinAndMutualInformationIdentity) {
  StateSampler sampler(2718);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto rho = sampler.mixed_state({2, 2});
    const double mi = mutual_information(rho).value;
    EXPECT_GE(mi, -1e-9);
    const auto product = tensor_product(partial_trace(rho, {0}), partial_trace(rho, {1}));
    EXPECT_NEAR(relative_entropy(rho, product), mi, 1e-9);
    const auto sigma = sampler.mixed_state({2, 2});
    EXPECT_GE(relative_entropy(rho, sigma), -1e-9);
  }
}

TEST(Properties, QubitQutritPositivityAndBounds) {
  StateSampler sampler(31);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto rho = trial % 2 ? sampler.mixed_state({2, 3}) : sampler.pure_state({2, 3});
    EXPECT_GE(mutual_information(rho).value, -1e-9);
    const double s = von_neumann_entropy(rho).value;
    EXPECT_GE(s, 0.0);
    EXPECT_LE(s, std::log2(6.0));
  }
}

TEST(Properties, ZeroMutualInformationOnlyForProducts) {
  StateSampler sampler(99);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const auto product = tensor_product(sampler.mixed_state({2}), sampler.mixed_state({2}));
    EXPECT_LT(mutual_information(product).value, 1e-9);
    // Product plus a traceless Hermitian perturbation that leaves the marginals fixed.
    const double eps = std::pow(10.0, -1.0 - 5.0 * trial / 300.0);
    CMatrix k = oracle::kron(oracle::pauli('x'), oracle::pauli('z')) * normal(sampler.engine()) +
                oracle::kron(oracle::pauli('y'), oracle::pauli('y')) * normal(sampler.engine());
    const CMatrix m = product.matrix() + eps * k;
    const auto shifted = hermitian_eigenvalues(0.5 * (m + m.adjoint()));
    if (shifted.front() < 0.0) continue;
    const auto rho = make_density_matrix(m, {2, 2});
    const double mi = mutual_information(rho).value;
    if (mi < 1e-12) {
      const auto rebuilt = tensor_product(partial_trace(rho, {0}), partial_trace(rho, {1}));
      EXPECT_LT((rho.matrix() - rebuilt.matrix()).cwiseAbs().maxCoeff(), 1e-5);
    }
  }
}
