#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "critent/error.hpp"

namespace critent {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Periodic function on [0, 2pi) whose Fourier coefficients fill a Toeplitz
/// matrix. The anchor is the value at theta = 0 and selects the square-root
/// branch for symbols defined through a root.
class SymbolFunction {
 public:
  using Rule = std::function<Complex(double)>;

  SymbolFunction(Rule rule, Complex anchor) : rule_(std::move(rule)), anchor_(anchor) {}

  Complex operator()(double theta) const { return rule_(theta); }
  Complex anchor() const noexcept { return anchor_; }

 private:
  Rule rule_;
  Complex anchor_;
};

/// Values a_n for every n in the closed interval [first(), last()].
class ToeplitzSequence {
 public:
  ToeplitzSequence(int first_index, std::vector<Complex> values)
      : first_(first_index), values_(std::move(values)) {
    if (values_.empty()) throw DomainError("ToeplitzSequence: empty index range");
  }

  int first() const noexcept { return first_; }
  int last() const noexcept { return first_ + static_cast<int>(values_.size()) - 1; }
  bool contains(int n) const noexcept { return n >= first() && n <= last(); }

  Complex at(int n) const {
    if (!contains(n)) {
      throw DomainError("ToeplitzSequence: index " + std::to_string(n) + " outside [" +
                        std::to_string(first()) + ", " + std::to_string(last()) + "]");
    }
    return values_[static_cast<std::size_t>(n - first_)];
  }
  Complex operator[](int n) const { return values_[static_cast<std::size_t>(n - first_)]; }

  const std::vector<Complex>& values() const noexcept { return values_; }

 private:
  int first_;
  std::vector<Complex> values_;
};

struct QuadratureEstimate {
  Complex value;
  Complex previous;  // estimate at half the final resolution
  std::size_t grid_points = 0;
};

namespace quadrature {

inline constexpr std::size_t kDefaultGridPoints = 4096;
inline constexpr std::size_t kMaxGridPoints = std::size_t{1} << 20;
inline constexpr double kTolerance = 1e-10;

inline void check_grid(std::size_t grid_points) {
  const bool power_of_two = grid_points != 0 && (grid_points & (grid_points - 1)) == 0;
  if (grid_points < 16 || !power_of_two) {
    throw DomainError("quadrature grid must be a power of two >= 16, got " +
                      std::to_string(grid_points));
  }
}

// Uniform grid offset by half a cell: theta_k = (k + 1/2) 2pi / M. Returns
// (1/M) sum_k e^{i n theta_k} phi(theta_k) for every n in [n_min, n_max].
inline std::vector<Complex> estimate(const SymbolFunction& symbol, int n_min, int n_max,
                                     std::size_t grid_points) {
  const std::size_t count = static_cast<std::size_t>(n_max - n_min + 1);
  std::vector<Complex> sums(count, Complex{});
  const double step = kTwoPi / static_cast<double>(grid_points);
  for (std::size_t k = 0; k < grid_points; ++k) {
    const double theta = (static_cast<double>(k) + 0.5) * step;
    const Complex sample = symbol(theta);
    const Complex rotation = std::polar(1.0, theta);
    Complex term = sample * std::polar(1.0, static_cast<double>(n_min) * theta);
    for (std::size_t j = 0; j < count; ++j) {
      sums[j] += term;
      term *= rotation;
    }
  }
  for (auto& s : sums) s /= static_cast<double>(grid_points);
  return sums;
}

}  // namespace quadrature

/// Fourier coefficients a_n = (1/2pi) int_0^{2pi} e^{i n theta} phi(theta) dtheta
/// for n in [n_min, n_max], doubling the grid from `grid_points` until every
/// coefficient moves by less than 1e-10.
inline ToeplitzSequence fourier_coefficients(const SymbolFunction& symbol, int n_min, int n_max,
                                             std::size_t grid_points =
                                                 quadrature::kDefaultGridPoints) {
  quadrature::check_grid(grid_points);
  if (n_max < n_min) throw DomainError("fourier_coefficients: empty index range");

  auto coarse = quadrature::estimate(symbol, n_min, n_max, grid_points);
  for (std::size_t m = 2 * grid_points; m <= quadrature::kMaxGridPoints; m *= 2) {
    auto fine = quadrature::estimate(symbol, n_min, n_max, m);
    double change = 0.0;
    std::size_t worst = 0;
    for (std::size_t j = 0; j < fine.size(); ++j) {
      const double d = std::abs(fine[j] - coarse[j]);
      if (d > change) {
        change = d;
        worst = j;
      }
    }
    if (change < quadrature::kTolerance) return ToeplitzSequence(n_min, std::move(fine));
    if (m == quadrature::kMaxGridPoints) {
      throw ConvergenceError("Fourier coefficient a_" +
                                 std::to_string(n_min + static_cast<int>(worst)) +
                                 " did not converge within " + std::to_string(m) + " points",
                             fine[worst], coarse[worst], m);
    }
    coarse = std::move(fine);
  }
  throw DomainError("fourier_coefficients: starting grid must be below the 2^20 cap");
}

/// Single coefficient with its convergence record.
inline QuadratureEstimate fourier_coefficient(const SymbolFunction& symbol, int n,
                                              std::size_t grid_points =
                                                  quadrature::kDefaultGridPoints) {
  quadrature::check_grid(grid_points);
  Complex coarse = quadrature::estimate(symbol, n, n, grid_points).front();
  for (std::size_t m = 2 * grid_points; m <= quadrature::kMaxGridPoints; m *= 2) {
    const Complex fine = quadrature::estimate(symbol, n, n, m).front();
    if (std::abs(fine - coarse) < quadrature::kTolerance) return {fine, coarse, m};
    if (m == quadrature::kMaxGridPoints) {
      throw ConvergenceError("Fourier coefficient a_" + std::to_string(n) +
                                 " did not converge within " + std::to_string(m) + " points",
                             fine, coarse, m);
    }
    coarse = fine;
  }
  throw DomainError("fourier_coefficient: starting grid must be below the 2^20 cap");
}

/// Determinant kept as phase * exp(log_magnitude) so products of many small
/// pivots neither underflow nor overflow.
struct LogDeterminant {
  Complex phase{1.0, 0.0};
  double log_magnitude = 0.0;
  bool singular = false;

  Complex value() const { return singular ? Complex{} : phase * std::exp(log_magnitude); }
};

/// Gaussian elimination with partial pivoting; consumes its argument.
inline LogDeterminant log_determinant(CMatrix m) {
  const Eigen::Index n = m.rows();
  LogDeterminant det;
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index pivot = k;
    double best = std::abs(m(k, k));
    for (Eigen::Index i = k + 1; i < n; ++i) {
      if (std::abs(m(i, k)) > best) {
        best = std::abs(m(i, k));
        pivot = i;
      }
    }
    if (best == 0.0) {
      det.singular = true;
      return det;
    }
    if (pivot != k) {
      m.row(k).swap(m.row(pivot));
      det.phase = -det.phase;
    }
    const Complex diag = m(k, k);
    det.log_magnitude += std::log(best);
    det.phase *= diag / best;
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const Complex factor = m(i, k) / diag;
      if (factor == Complex{}) continue;
      m.row(i).tail(n - k - 1) -= factor * m.row(k).tail(n - k - 1);
    }
  }
  return det;
}

/// det M with M[i][j] = a_{i-j+row_shift}, i, j in [0, dim). The imaginary
/// residue must vanish to 1e-8 relative; the real part is returned.
inline double toeplitz_determinant(const ToeplitzSequence& seq, int dim, int row_shift = 0) {
  if (dim < 1) throw DomainError("toeplitz_determinant: dim must be >= 1");
  const int lo = -(dim - 1) + row_shift;
  const int hi = (dim - 1) + row_shift;
  if (!seq.contains(lo) || !seq.contains(hi)) {
    throw DomainError("toeplitz_determinant: sequence covers [" + std::to_string(seq.first()) +
                      ", " + std::to_string(seq.last()) + "], need [" + std::to_string(lo) +
                      ", " + std::to_string(hi) + "]");
  }
  CMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) m(i, j) = seq[i - j + row_shift];
  }
  const Complex det = log_determinant(std::move(m)).value();
  if (std::abs(det.imag()) >= 1e-8 * std::max(1.0, std::abs(det))) {
    throw DomainError("toeplitz_determinant: imaginary residue " + std::to_string(det.imag()) +
                      " exceeds tolerance");
  }
  return det.real();
}

inline Complex dense_determinant(const CMatrix& matrix) {
  if (matrix.rows() != matrix.cols()) throw DomainError("dense_determinant: matrix not square");
  if (matrix.rows() > 64) throw DomainError("dense_determinant: dimension above 64");
  if (matrix.rows() == 0) return {1.0, 0.0};
  return matrix.partialPivLu().determinant();
}

inline double hermiticity_residual(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

/// Ascending eigenvalues of a Hermitian matrix.
inline std::vector<double> hermitian_eigenvalues(const CMatrix& matrix) {
  if (matrix.rows() != matrix.cols()) throw DomainError("hermitian_eigenvalues: not square");
  const double residual = hermiticity_residual(matrix);
  if (residual >= 1e-10) {
    throw DomainError("hermitian_eigenvalues: hermiticity residual " + std::to_string(residual));
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(matrix, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw DomainError("hermitian_eigenvalues: solver failed");
  const auto& values = solver.eigenvalues();
  return {values.data(), values.data() + values.size()};
}

}  // namespace critent
