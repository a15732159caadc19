#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "critent/error.hpp"
#include "critent/numerics.hpp"

namespace critent {

/// Entropy in classical bits (base-2 logarithm).
struct EntropyBits {
  double value = 0.0;

  constexpr EntropyBits() = default;
  constexpr explicit EntropyBits(double bits) : value(bits) {}
};

namespace tolerance {
inline constexpr double kTrace = 1e-10;
inline constexpr double kHermitian = 1e-10;
inline constexpr double kSpectrumClip = 1e-12;
inline constexpr double kMutualInformationSnap = 1e-9;
inline constexpr double kSupport = 1e-12;
}  // namespace tolerance

class DensityMatrix;
DensityMatrix make_density_matrix(const CMatrix& matrix, std::vector<std::size_t> dims);

/// Hermitian, positive semidefinite, unit-trace matrix over a tensor product
/// of subsystems. The first subsystem is the most significant index.
class DensityMatrix {
 public:
  const CMatrix& matrix() const noexcept { return matrix_; }
  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
  std::size_t subsystem_count() const noexcept { return dims_.size(); }

  /// Ascending eigenvalues after clipping numerical dust; sums to one.
  std::span<const double> spectrum() const noexcept { return spectrum_; }

 private:
  friend DensityMatrix make_density_matrix(const CMatrix&, std::vector<std::size_t>);
  DensityMatrix(CMatrix m, std::vector<std::size_t> dims, std::vector<double> spectrum)
      : matrix_(std::move(m)), dims_(std::move(dims)), spectrum_(std::move(spectrum)) {}

  CMatrix matrix_;
  std::vector<std::size_t> dims_;
  std::vector<double> spectrum_;
};

inline DensityMatrix make_density_matrix(const CMatrix& matrix, std::vector<std::size_t> dims) {
  if (matrix.rows() != matrix.cols() || matrix.rows() == 0) {
    throw ValidationError("shape", "matrix must be square and non-empty");
  }
  const std::size_t product =
      std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>{});
  if (dims.empty() || product != static_cast<std::size_t>(matrix.rows())) {
    throw ValidationError("dims", "subsystem dimensions multiply to " + std::to_string(product) +
                                      ", matrix dimension is " + std::to_string(matrix.rows()));
  }
  const double hermitian = hermiticity_residual(matrix);
  if (hermitian >= tolerance::kHermitian) {
    throw ValidationError("hermiticity", "residual " + std::to_string(hermitian));
  }
  const Complex trace = matrix.trace();
  if (std::abs(trace - Complex{1.0, 0.0}) >= tolerance::kTrace) {
    throw ValidationError("trace", "trace is " + std::to_string(trace.real()) + " + " +
                                       std::to_string(trace.imag()) + "i");
  }
  CMatrix symmetric = 0.5 * (matrix + matrix.adjoint());
  std::vector<double> spectrum = hermitian_eigenvalues(symmetric);
  if (spectrum.front() < -tolerance::kSpectrumClip) {
    throw ValidationError("positivity", "smallest eigenvalue " + std::to_string(spectrum.front()));
  }
  for (auto& p : spectrum) p = std::max(p, 0.0);
  const double total = std::accumulate(spectrum.begin(), spectrum.end(), 0.0);
  for (auto& p : spectrum) p /= total;
  return DensityMatrix(std::move(symmetric), std::move(dims), std::move(spectrum));
}

/// -sum p log2 p over a probability vector, with 0 log 0 = 0.
inline double shannon_bits(std::span<const double> probabilities) {
  double s = 0.0;
  for (double p : probabilities) {
    if (p > 0.0) s -= p * std::log2(p);
  }
  return std::max(s, 0.0);
}

inline EntropyBits von_neumann_entropy(const DensityMatrix& rho) {
  const double bound = std::log2(static_cast<double>(rho.dimension()));
  return EntropyBits(std::min(shannon_bits(rho.spectrum()), bound));
}

/// Reduced state on the subsystems listed in `keep` (any order, no repeats);
/// kept subsystems retain their original relative order.
inline DensityMatrix partial_trace(const DensityMatrix& rho, std::vector<std::size_t> keep) {
  if (keep.empty()) throw DomainError("partial_trace: keep set is empty");
  std::sort(keep.begin(), keep.end());
  if (std::adjacent_find(keep.begin(), keep.end()) != keep.end()) {
    throw DomainError("partial_trace: repeated subsystem index");
  }
  const auto& dims = rho.dims();
  const std::size_t parts = dims.size();
  if (keep.back() >= parts) throw DomainError("partial_trace: subsystem index out of range");

  std::vector<bool> kept(parts, false);
  for (auto k : keep) kept[k] = true;

  std::vector<std::size_t> stride(parts, 1);
  for (std::size_t k = parts - 1; k > 0; --k) stride[k - 1] = stride[k] * dims[k];

  std::vector<std::size_t> kept_dims;
  std::vector<std::size_t> traced;
  for (std::size_t k = 0; k < parts; ++k) {
    if (kept[k]) {
      kept_dims.push_back(dims[k]);
    } else {
      traced.push_back(k);
    }
  }
  const std::size_t reduced = std::accumulate(kept_dims.begin(), kept_dims.end(), std::size_t{1},
                                              std::multiplies<>{});
  std::size_t environment = 1;
  for (auto k : traced) environment *= dims[k];

  // Full index of (kept multi-index r, traced multi-index e).
  auto full_index = [&](std::size_t r, std::size_t e) {
    std::size_t index = 0;
    for (std::size_t k = parts; k-- > 0;) {
      if (kept[k]) {
        index += (r % dims[k]) * stride[k];
        r /= dims[k];
      } else {
        index += (e % dims[k]) * stride[k];
        e /= dims[k];
      }
    }
    return index;
  };

  CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(reduced), static_cast<Eigen::Index>(reduced));
  const CMatrix& m = rho.matrix();
  for (std::size_t r = 0; r < reduced; ++r) {
    for (std::size_t c = 0; c < reduced; ++c) {
      Complex sum{};
      for (std::size_t e = 0; e < environment; ++e) {
        sum += m(static_cast<Eigen::Index>(full_index(r, e)),
                 static_cast<Eigen::Index>(full_index(c, e)));
      }
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = sum;
    }
  }
  return make_density_matrix(out, std::move(kept_dims));
}

inline DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  const auto& ma = a.matrix();
  const auto& mb = b.matrix();
  CMatrix out(ma.rows() * mb.rows(), ma.cols() * mb.cols());
  for (Eigen::Index i = 0; i < ma.rows(); ++i) {
    for (Eigen::Index j = 0; j < ma.cols(); ++j) {
      out.block(i * mb.rows(), j * mb.cols(), mb.rows(), mb.cols()) = ma(i, j) * mb;
    }
  }
  std::vector<std::size_t> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return make_density_matrix(out, std::move(dims));
}

struct MutualInformationParts {
  EntropyBits s_a;
  EntropyBits s_b;
  EntropyBits s_ab;
  EntropyBits mutual;
};

/// S(A) + S(B) - S(AB) for a two-subsystem state, with each term reported.
inline MutualInformationParts mutual_information_parts(const DensityMatrix& rho_ab) {
  if (rho_ab.subsystem_count() != 2) {
    throw DomainError("mutual_information: state must have exactly two subsystems");
  }
  MutualInformationParts parts;
  parts.s_a = von_neumann_entropy(partial_trace(rho_ab, {0}));
  parts.s_b = von_neumann_entropy(partial_trace(rho_ab, {1}));
  parts.s_ab = von_neumann_entropy(rho_ab);
  double mi = parts.s_a.value + parts.s_b.value - parts.s_ab.value;
  if (mi < 0.0 && mi >= -tolerance::kMutualInformationSnap) mi = 0.0;
  parts.mutual = EntropyBits(mi);
  return parts;
}

inline EntropyBits mutual_information(const DensityMatrix& rho_ab) {
  return mutual_information_parts(rho_ab).mutual;
}

/// tr(rho log2 rho) - tr(rho log2 sigma), evaluated in sigma's eigenbasis.
/// Returns +infinity when rho has weight outside the support of sigma.
inline double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dimension() != sigma.dimension()) {
    throw DomainError("relative_entropy: dimension mismatch");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sigma.matrix());
  if (solver.info() != Eigen::Success) throw DomainError("relative_entropy: solver failed");
  const auto& vectors = solver.eigenvectors();
  const auto& values = solver.eigenvalues();

  double cross = 0.0;
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    const double weight = (vectors.col(k).adjoint() * rho.matrix() * vectors.col(k))(0, 0).real();
    if (values(k) <= tolerance::kSupport) {
      if (weight > tolerance::kSupport) return std::numeric_limits<double>::infinity();
      continue;
    }
    if (weight > 0.0) cross += weight * std::log2(values(k));
  }
  return -von_neumann_entropy(rho).value - cross;
}

}  // namespace critent
