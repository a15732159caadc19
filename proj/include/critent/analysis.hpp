#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

#include "critent/error.hpp"

namespace critent::analysis {

struct Sample {
  double x = 0.0;
  double y = 0.0;
};

/// Central differences on interior points of a uniform grid; endpoints dropped.
inline std::vector<Sample> central_derivative(std::span<const Sample> samples) {
  if (samples.size() < 3) throw DomainError("central_derivative: need at least 3 points");
  const double spacing = samples[1].x - samples[0].x;
  if (!(spacing > 0.0)) throw DomainError("central_derivative: x must be strictly increasing");
  for (std::size_t i = 1; i < samples.size(); ++i) {
    const double d = samples[i].x - samples[i - 1].x;
    if (std::abs(d - spacing) > 1e-12) throw DomainError("central_derivative: grid is not uniform");
  }
  std::vector<Sample> out;
  out.reserve(samples.size() - 2);
  for (std::size_t i = 1; i + 1 < samples.size(); ++i) {
    out.push_back({samples[i].x, (samples[i + 1].y - samples[i - 1].y) /
                                     (samples[i + 1].x - samples[i - 1].x)});
  }
  return out;
}

/// Derivative of f at x from the three-point stencil {x - h, x, x + h}.
template <class F>
double derivative_at(F&& f, double x, double h) {
  const Sample stencil[3] = {{x - h, f(x - h)}, {x, 0.0}, {x + h, f(x + h)}};
  return central_derivative(stencil).front().y;
}

enum class FitKind { power_law, log_linear, log_cubic, log_cubic_full };

inline const char* to_string(FitKind k) {
  switch (k) {
    case FitKind::power_law: return "power_law";
    case FitKind::log_linear: return "log_linear";
    case FitKind::log_cubic: return "log_cubic";
    case FitKind::log_cubic_full: return "log_cubic_full";
  }
  return "unknown";
}

inline std::optional<FitKind> fit_kind_from_string(const std::string& s) {
  for (auto k : {FitKind::power_law, FitKind::log_linear, FitKind::log_cubic,
                 FitKind::log_cubic_full}) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

/// Least-squares fit summary.
///
/// power_law:      ln y = ln(amplitude) + coefficients[0] ln x
/// log_linear:     y = amplitude + coefficients[0] ln x
/// log_cubic:      y = amplitude + coefficients[0] (ln x)^3
/// log_cubic_full: y = amplitude + c0 ln x + c1 (ln x)^2 + c2 (ln x)^3
///
/// residual_norm is the rms residual of the fitted ordinate (ln y for power
/// laws); data_range is the spread of that same ordinate.
struct FitResult {
  FitKind kind = FitKind::power_law;
  std::vector<double> coefficients;
  double amplitude = 0.0;
  double residual_norm = 0.0;
  std::size_t point_count = 0;
  double x_min = 0.0;
  double x_max = 0.0;
  double data_range = 0.0;

  double relative_residual() const {
    return data_range > 0.0 ? residual_norm / data_range : residual_norm;
  }

  double evaluate(double x) const {
    const double l = std::log(x);
    switch (kind) {
      case FitKind::power_law: return amplitude * std::pow(x, coefficients.at(0));
      case FitKind::log_linear: return amplitude + coefficients.at(0) * l;
      case FitKind::log_cubic: return amplitude + coefficients.at(0) * l * l * l;
      case FitKind::log_cubic_full:
        return amplitude + coefficients.at(0) * l + coefficients.at(1) * l * l +
               coefficients.at(2) * l * l * l;
    }
    return 0.0;
  }
};

namespace detail {

// Solves min |design * beta - target| and fills residual statistics.
inline Eigen::VectorXd least_squares(const Eigen::MatrixXd& design, const Eigen::VectorXd& target,
                                     FitResult& fit) {
  Eigen::VectorXd beta = design.colPivHouseholderQr().solve(target);
  const Eigen::VectorXd residual = design * beta - target;
  fit.residual_norm = std::sqrt(residual.squaredNorm() / static_cast<double>(target.size()));
  fit.data_range = target.maxCoeff() - target.minCoeff();
  if (!std::isfinite(fit.residual_norm)) throw DomainError("fit: non-finite residual");
  return beta;
}

inline void record_range(std::span<const Sample> points, FitResult& fit) {
  fit.point_count = points.size();
  fit.x_min = points.front().x;
  fit.x_max = points.front().x;
  for (const auto& p : points) {
    fit.x_min = std::min(fit.x_min, p.x);
    fit.x_max = std::max(fit.x_max, p.x);
  }
}

}  // namespace detail

inline FitResult power_law_fit(std::span<const Sample> points) {
  if (points.size() < 4) throw DomainError("power_law_fit: need at least 4 points");
  const auto n = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd target(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& p = points[static_cast<std::size_t>(i)];
    if (!(p.x > 0.0) || !(p.y > 0.0)) throw DomainError("power_law_fit: coordinates must be positive");
    design(i, 0) = 1.0;
    design(i, 1) = std::log(p.x);
    target(i) = std::log(p.y);
  }
  FitResult fit;
  fit.kind = FitKind::power_law;
  const auto beta = detail::least_squares(design, target, fit);
  fit.amplitude = std::exp(beta(0));
  fit.coefficients = {beta(1)};
  detail::record_range(points, fit);
  return fit;
}

/// y = a + b (ln x)^degree for degree 1 or 3; `full` fits every power of
/// ln x up to 3 (diagnostic).
inline FitResult log_poly_fit(std::span<const Sample> points, int degree, bool full = false) {
  if (degree != 1 && degree != 3) throw DomainError("log_poly_fit: degree must be 1 or 3");
  const int unknowns = full ? degree + 1 : 2;
  if (static_cast<int>(points.size()) < degree + 2 || static_cast<int>(points.size()) < unknowns + 1) {
    throw DomainError("log_poly_fit: insufficient points");
  }
  const auto n = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd design(n, unknowns);
  Eigen::VectorXd target(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& p = points[static_cast<std::size_t>(i)];
    if (!(p.x > 0.0)) throw DomainError("log_poly_fit: x must be positive");
    const double l = std::log(p.x);
    design(i, 0) = 1.0;
    if (full) {
      for (int k = 1; k <= degree; ++k) design(i, k) = std::pow(l, k);
    } else {
      design(i, 1) = std::pow(l, degree);
    }
    target(i) = p.y;
  }
  FitResult fit;
  fit.kind = degree == 1 ? FitKind::log_linear : (full ? FitKind::log_cubic_full : FitKind::log_cubic);
  const auto beta = detail::least_squares(design, target, fit);
  fit.amplitude = beta(0);
  fit.coefficients.assign(beta.data() + 1, beta.data() + beta.size());
  detail::record_range(points, fit);
  return fit;
}

/// Evaluates fn(0), ..., fn(count - 1) on a bounded pool of worker threads and
/// returns the results in index order, independent of scheduling.
template <class Fn>
auto parallel_map(std::size_t count, Fn&& fn, std::size_t workers)
    -> std::vector<std::invoke_result_t<Fn&, std::size_t>> {
  using Result = std::invoke_result_t<Fn&, std::size_t>;
  std::vector<std::optional<Result>> slots(count);
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) slots[i].emplace(fn(i));
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> failures(workers);
    {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            for (std::size_t i = next++; i < count; i = next++) slots[i].emplace(fn(i));
          } catch (...) {
            failures[w] = std::current_exception();
          }
        });
      }
    }
    for (auto& f : failures) {
      if (f) std::rethrow_exception(f);
    }
  }
  std::vector<Result> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace critent::analysis
