#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "critent/denmat.hpp"
#include "critent/error.hpp"
#include "critent/numerics.hpp"

namespace critent::ising2d {

/// Symmetric: <sigma> = 0 in every reduced state, order shows up only as the
/// m^2 plateau of the two-point function. Broken: <sigma> = m(T).
enum class Ensemble { symmetric, broken };

inline const char* to_string(Ensemble e) { return e == Ensemble::symmetric ? "symmetric" : "broken"; }

/// Temperature in units of the Ising coupling; separation along the (1,1)
/// diagonal in units of sqrt(2) lattice constants.
struct Params {
  double temperature = 0.0;
  int separation = 1;
  Ensemble ensemble = Ensemble::symmetric;
};

/// sinh(2/T_c) = 1.
inline double critical_temperature() { return 2.0 / std::asinh(1.0); }

inline void check_temperature(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("ising2d: temperature must be > 0");
}

inline void check_separation(int n) {
  if (n < 1) throw DomainError("ising2d: separation must be >= 1");
}

/// Spontaneous magnetization per site; exactly zero at and above T_c.
inline double magnetization(double t) {
  check_temperature(t);
  if (t >= critical_temperature()) return 0.0;
  const double s = std::sinh(2.0 / t);
  const double inner = 1.0 - std::pow(s, -4.0);
  return inner > 0.0 ? std::pow(inner, 0.125) : 0.0;
}

namespace detail {
// |sinh^2(2/T) - 1| below this is treated as T = T_c.
inline constexpr double kCriticalBand = 1e-12;
}  // namespace detail

/// phi(theta) = [(s2 - e^{-i theta}) / (s2 - e^{i theta})]^{1/2}, s2 = sinh^2(2/T),
/// on the branch that is continuous in theta with phi(0) = anchor (+1 or -1).
/// At T = T_c the symbol is the pure phase e^{i(pi - theta)/2}, which jumps at
/// theta = 0; there the anchor is returned for theta = 0 exactly.
inline SymbolFunction ising_symbol(double t, double anchor = 1.0) {
  check_temperature(t);
  if (anchor != 1.0 && anchor != -1.0) throw DomainError("ising_symbol: anchor must be +1 or -1");
  const double s2 = std::sinh(2.0 / t) * std::sinh(2.0 / t);
  if (std::abs(s2 - 1.0) < detail::kCriticalBand) {
    return SymbolFunction(
        [anchor](double theta) -> Complex {
          if (theta == 0.0) return anchor;
          return std::polar(1.0, 0.5 * (std::numbers::pi - theta));
        },
        anchor);
  }
  // With z = s2 - e^{i theta}, the ratio is conj(z)/z and conj(z)/|z| is a
  // continuous square root. At theta = 0 it equals sign(s2 - 1).
  const double orientation = (s2 > 1.0 ? 1.0 : -1.0) * anchor;
  return SymbolFunction(
      [s2, orientation](double theta) -> Complex {
        const Complex z = s2 - std::polar(1.0, theta);
        return orientation * std::conj(z) / std::abs(z);
      },
      anchor);
}

/// Branch used for correlations: continuous in T across T_c at fixed theta,
/// which keeps <sigma sigma> positive on both sides.
inline double physical_anchor(double t) {
  const double s2 = std::sinh(2.0 / t) * std::sinh(2.0 / t);
  return s2 >= 1.0 - detail::kCriticalBand ? 1.0 : -1.0;
}

inline bool is_critical(double t) {
  const double s2 = std::sinh(2.0 / t) * std::sinh(2.0 / t);
  return std::abs(s2 - 1.0) < detail::kCriticalBand;
}

/// Exact coefficients of the phase symbol at T_c: a_n = 2 / (pi (1 - 2n)).
/// The symbol jumps at theta = 0 there, so the trapezoid rule converges only
/// as n / M^2 and misses 1e-10 within 2^20 points once |n| exceeds ~60.
inline ToeplitzSequence critical_coefficients(int n_min, int n_max) {
  if (n_max < n_min) throw DomainError("critical_coefficients: empty index range");
  std::vector<Complex> a;
  for (int n = n_min; n <= n_max; ++n) a.emplace_back(2.0 / (std::numbers::pi * (1.0 - 2.0 * n)), 0.0);
  return ToeplitzSequence(n_min, std::move(a));
}

namespace detail {
inline ToeplitzSequence correlator_coefficients(double t, int max_separation, std::size_t grid_points) {
  check_temperature(t);
  check_separation(max_separation);
  const int reach = max_separation - 1;
  if (is_critical(t)) return critical_coefficients(-reach, reach);
  return fourier_coefficients(ising_symbol(t, physical_anchor(t)), -reach, reach, grid_points);
}
}  // namespace detail

/// Fourier coefficients of the symbol at one temperature, reused across
/// separations up to `max_separation`.
class DiagonalCorrelator {
 public:
  DiagonalCorrelator(double t, int max_separation,
                     std::size_t grid_points = quadrature::kDefaultGridPoints)
      : temperature_(t),
        max_separation_(max_separation),
        coefficients_(detail::correlator_coefficients(t, max_separation, grid_points)) {}

  double temperature() const noexcept { return temperature_; }
  int max_separation() const noexcept { return max_separation_; }
  const ToeplitzSequence& coefficients() const noexcept { return coefficients_; }

  /// <sigma_{0,0} sigma_{N,N}> as an N x N Toeplitz determinant.
  double operator()(int n) const {
    check_separation(n);
    if (n > max_separation_) throw DomainError("DiagonalCorrelator: separation above window");
    const double g = toeplitz_determinant(coefficients_, n, 0);
    if (std::abs(g) > 1.0 + 1e-8) {
      throw ModelConsistencyError("diagonal correlation " + std::to_string(g) +
                                  " outside [-1, 1] at T=" + std::to_string(temperature_) +
                                  ", N=" + std::to_string(n));
    }
    return std::clamp(g, -1.0, 1.0);
  }

 private:
  double temperature_;
  int max_separation_;
  ToeplitzSequence coefficients_;
};

inline double diagonal_correlation(double t, int n,
                                   std::size_t grid_points = quadrature::kDefaultGridPoints) {
  return DiagonalCorrelator(t, n, grid_points)(n);
}

inline DensityMatrix single_site_state(double magnetization_value) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = 0.5 * (1.0 + magnetization_value);
  m(1, 1) = 0.5 * (1.0 - magnetization_value);
  return make_density_matrix(m, {2});
}

inline DensityMatrix single_site_state_2d(double t, Ensemble ensemble) {
  return single_site_state(ensemble == Ensemble::broken ? magnetization(t) : 0.0);
}

/// diag(u+, w, w, u-) on |uu>, |ud>, |du>, |dd> with u+- = (1 +- 2m + G)/4 and
/// w = (1 - G)/4. m = 0 gives the symmetric-ensemble state.
inline DensityMatrix two_site_state(double correlation, double magnetization_value) {
  const double g = correlation;
  const double m = magnetization_value;
  const double entries[4] = {0.25 * (1.0 + 2.0 * m + g), 0.25 * (1.0 - g), 0.25 * (1.0 - g),
                             0.25 * (1.0 - 2.0 * m + g)};
  CMatrix rho = CMatrix::Zero(4, 4);
  for (int k = 0; k < 4; ++k) {
    if (entries[k] < -1e-10 || entries[k] > 1.0 + 1e-10) {
      throw ModelConsistencyError("two-site element " + std::to_string(entries[k]) +
                                  " out of range for G=" + std::to_string(g) +
                                  ", m=" + std::to_string(m));
    }
    rho(k, k) = std::clamp(entries[k], 0.0, 1.0);
  }
  rho /= rho.trace().real();
  return make_density_matrix(rho, {2, 2});
}

inline DensityMatrix two_site_state_2d(const Params& p) {
  check_temperature(p.temperature);
  check_separation(p.separation);
  const double g = diagonal_correlation(p.temperature, p.separation);
  const double m = p.ensemble == Ensemble::broken ? magnetization(p.temperature) : 0.0;
  return two_site_state(g, m);
}

inline EntropyBits correlation_entropy_2d(const Params& p) {
  return mutual_information(two_site_state_2d(p));
}

/// Small-correlation expansion (G^2/2 - G m^2), converted to bits, with
/// m = magnetization(T). Diagnostic only: it can go negative below T_c.
inline double critical_expansion_mi(double correlation, double magnetization_value) {
  const double g = correlation;
  const double m2 = magnetization_value * magnetization_value;
  return (0.5 * g * g - g * m2) / std::numbers::ln2;
}

inline double critical_expansion_mi(double t, int n) {
  return critical_expansion_mi(diagonal_correlation(t, n), magnetization(t));
}

/// Central-difference step in T: min(1e-3, |T - T_c| / 10).
inline double temperature_step(double t) {
  return std::min(1e-3, std::abs(t - critical_temperature()) / 10.0);
}

}  // namespace critent::ising2d
