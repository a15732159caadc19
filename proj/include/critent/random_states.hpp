#pragma once

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "critent/denmat.hpp"

namespace critent {

/// Seeded generator of random density matrices: a flat-Dirichlet spectrum
/// conjugated by a Haar-random unitary.
class StateSampler {
 public:
  explicit StateSampler(std::uint64_t seed) : engine_(seed) {}

  CMatrix haar_unitary(std::size_t d) {
    const auto n = static_cast<Eigen::Index>(d);
    std::normal_distribution<double> normal(0.0, 1.0);
    CMatrix g(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) g(i, j) = Complex(normal(engine_), normal(engine_));
    }
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < n; ++j) {
      const Complex diag = r(j, j);
      if (std::abs(diag) > 0.0) q.col(j) *= diag / std::abs(diag);
    }
    return q;
  }

  std::vector<double> simplex_point(std::size_t d) {
    std::exponential_distribution<double> exponential(1.0);
    std::vector<double> p(d);
    for (auto& x : p) x = exponential(engine_);
    const double total = std::accumulate(p.begin(), p.end(), 0.0);
    for (auto& x : p) x /= total;
    return p;
  }

  DensityMatrix state_with_spectrum(const std::vector<double>& spectrum,
                                    std::vector<std::size_t> dims) {
    const auto n = static_cast<Eigen::Index>(spectrum.size());
    const CMatrix u = haar_unitary(spectrum.size());
    Eigen::VectorXcd diag(n);
    for (Eigen::Index i = 0; i < n; ++i) diag(i) = spectrum[static_cast<std::size_t>(i)];
    CMatrix m = u * diag.asDiagonal() * u.adjoint();
    return make_density_matrix(m, std::move(dims));
  }

  DensityMatrix mixed_state(std::vector<std::size_t> dims) {
    const std::size_t d = product(dims);
    return state_with_spectrum(simplex_point(d), std::move(dims));
  }

  DensityMatrix pure_state(std::vector<std::size_t> dims) {
    std::vector<double> spectrum(product(dims), 0.0);
    spectrum.front() = 1.0;
    return state_with_spectrum(spectrum, std::move(dims));
  }

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  static std::size_t product(const std::vector<std::size_t>& dims) {
    return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>{});
  }

  std::mt19937_64 engine_;
};

}  // namespace critent
