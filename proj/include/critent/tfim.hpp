#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "critent/denmat.hpp"
#include "critent/error.hpp"
#include "critent/numerics.hpp"

namespace critent::tfim {

/// Parity sector of P = prod_j sigma^z_j. Even (P = +1) uses half-odd-integer
/// momenta, odd (P = -1) integer momenta.
enum class Sector { even, odd };

inline const char* to_string(Sector s) { return s == Sector::even ? "even" : "odd"; }

/// Ring H = -sum_j [lambda sigma^x_j sigma^x_{j+1} + sigma^z_j], sigma_{N+1} = sigma_1.
/// Coupling and temperature are in units of the transverse field.
struct Params {
  double coupling = 0.0;
  double temperature = 0.0;
  int sites = 4;
  int separation = 1;
  Sector sector = Sector::even;
};

struct CorrelationSet {
  double mz = 0.0;   // <sigma^z>
  double gxx = 0.0;  // <sigma^x_0 sigma^x_r>
  double gyy = 0.0;
  double gzz = 0.0;
};

inline void check_ring(int sites) {
  if (sites < 4 || sites % 2 != 0) {
    throw DomainError("tfim: ring length must be even and >= 4, got " + std::to_string(sites));
  }
}

inline void check(const Params& p) {
  check_ring(p.sites);
  if (p.separation < 1 || p.separation > p.sites / 2) {
    throw DomainError("tfim: separation must lie in [1, N/2]");
  }
  if (!(p.coupling >= 0.0)) throw DomainError("tfim: coupling must be >= 0");
  if (!(p.temperature >= 0.0)) throw DomainError("tfim: temperature must be >= 0");
}

/// phi_q = 2 pi q / N, ascending.
inline std::vector<double> momenta(int sites, Sector sector) {
  if (sites < 2 || sites % 2 != 0) throw DomainError("tfim: momenta need an even ring length");
  std::vector<double> phi;
  phi.reserve(static_cast<std::size_t>(sites));
  const double offset = sector == Sector::even ? 0.5 : 1.0;
  for (int k = 0; k < sites; ++k) {
    const double q = static_cast<double>(k) - sites / 2 + offset;
    phi.push_back(2.0 * std::numbers::pi * q / sites);
  }
  return phi;
}

inline double dispersion(double coupling, double phi) {
  return std::sqrt(std::max(0.0, 1.0 + coupling * coupling - 2.0 * coupling * std::cos(phi)));
}

namespace detail {

// tanh(omega/T)/omega with the T = 0 limit taken exactly. A zero mode
// (omega = 0) returns 0: every numerator it multiplies vanishes with it.
inline double thermal_weight(double omega, double temperature) {
  if (omega == 0.0) return 0.0;
  if (temperature == 0.0) return 1.0 / omega;
  return std::tanh(omega / temperature) / omega;
}

}  // namespace detail

inline double magnetization_z(double coupling, double temperature, int sites,
                              Sector sector = Sector::even) {
  double sum = 0.0;
  for (double phi : momenta(sites, sector)) {
    const double omega = dispersion(coupling, phi);
    sum += (1.0 - coupling * std::cos(phi)) * detail::thermal_weight(omega, temperature);
  }
  return sum / sites;
}

/// a_n = (1/N) sum cos(phi n)(lambda cos phi - 1) w(phi)
///     - (lambda/N) sum sin(phi n) sin(phi) w(phi),  w = tanh(omega/T)/omega.
inline double a_coefficient(double coupling, double temperature, int sites, int n,
                            Sector sector = Sector::even) {
  if (std::abs(n) > sites) throw DomainError("tfim: |n| must not exceed N");
  double cos_part = 0.0;
  double sin_part = 0.0;
  for (double phi : momenta(sites, sector)) {
    const double w = detail::thermal_weight(dispersion(coupling, phi), temperature);
    cos_part += std::cos(phi * n) * (coupling * std::cos(phi) - 1.0) * w;
    sin_part += std::sin(phi * n) * std::sin(phi) * w;
  }
  return (cos_part - coupling * sin_part) / sites;
}

/// a_n for n in [-half_width, half_width] at one (lambda, T, N, sector),
/// computed once and shared by every separation up to half_width - 1.
class CoefficientWindow {
 public:
  CoefficientWindow(double coupling, double temperature, int sites, int half_width,
                    Sector sector = Sector::even)
      : coupling_(coupling), temperature_(temperature), sites_(sites), sector_(sector) {
    check_ring(sites);
    if (half_width < 1 || half_width > sites) throw DomainError("tfim: bad coefficient window");
    const auto phi = momenta(sites, sector);
    std::vector<double> weight(phi.size());
    for (std::size_t k = 0; k < phi.size(); ++k) {
      weight[k] = detail::thermal_weight(dispersion(coupling, phi[k]), temperature);
    }
    // cos(phi n) lambda cos(phi) - lambda sin(phi n) sin(phi) = lambda cos(phi (n+1)),
    // so a_n = lambda c_{n+1} - c_n with c_m = (1/N) sum cos(phi m) w.
    const int lo = -half_width;
    const int hi = half_width + 1;
    std::vector<double> c(static_cast<std::size_t>(hi - lo + 1), 0.0);
    for (int m = lo; m <= hi; ++m) {
      double sum = 0.0;
      for (std::size_t k = 0; k < phi.size(); ++k) sum += std::cos(phi[k] * m) * weight[k];
      c[static_cast<std::size_t>(m - lo)] = sum / sites;
    }
    std::vector<Complex> a;
    for (int n = -half_width; n <= half_width; ++n) {
      a.emplace_back(coupling * c[static_cast<std::size_t>(n + 1 - lo)] -
                         c[static_cast<std::size_t>(n - lo)],
                     0.0);
    }
    sequence_ = ToeplitzSequence(-half_width, std::move(a));
  }

  const ToeplitzSequence& sequence() const noexcept { return sequence_; }
  double operator()(int n) const { return sequence_.at(n).real(); }
  int max_separation() const noexcept { return sequence_.last() - 1; }
  int sites() const noexcept { return sites_; }

  /// xx and yy as r x r Toeplitz determinants with row shifts -1 and +1;
  /// zz = <sigma^z>^2 - a_r a_{-r} with <sigma^z> = -a_0.
  CorrelationSet correlations(int separation) const {
    if (separation < 1 || separation > max_separation()) {
      throw DomainError("tfim: separation outside coefficient window");
    }
    CorrelationSet set;
    set.mz = -(*this)(0);
    set.gxx = toeplitz_determinant(sequence_, separation, -1);
    set.gyy = toeplitz_determinant(sequence_, separation, +1);
    set.gzz = set.mz * set.mz - (*this)(separation) * (*this)(-separation);
    for (double v : {set.mz, set.gxx, set.gyy, set.gzz}) {
      if (std::abs(v) > 1.0 + 1e-8) {
        throw ModelConsistencyError("tfim correlation " + std::to_string(v) + " outside [-1, 1]");
      }
    }
    return set;
  }

 private:
  double coupling_;
  double temperature_;
  int sites_;
  Sector sector_;
  ToeplitzSequence sequence_{0, {Complex{}}};
};

inline CorrelationSet correlations(const Params& p) {
  check(p);
  return CoefficientWindow(p.coupling, p.temperature, p.sites, p.separation + 1, p.sector)
      .correlations(p.separation);
}

inline DensityMatrix single_site_state(const CorrelationSet& c) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = 0.5 * (1.0 + c.mz);
  m(1, 1) = 0.5 * (1.0 - c.mz);
  return make_density_matrix(m, {2});
}

inline std::string describe(const CorrelationSet& c) {
  return "mz=" + std::to_string(c.mz) + ", gxx=" + std::to_string(c.gxx) +
         ", gyy=" + std::to_string(c.gyy) + ", gzz=" + std::to_string(c.gzz);
}

/// Block-diagonal two-site state in |uu>, |ud>, |du>, |dd>:
/// outer block [[u+, z-], [z-, u-]], inner block [[w, z+], [z+, w]].
inline DensityMatrix two_site_state(const CorrelationSet& c) {
  const double u_plus = 0.25 * (1.0 + 2.0 * c.mz + c.gzz);
  const double u_minus = 0.25 * (1.0 - 2.0 * c.mz + c.gzz);
  const double w = 0.25 * (1.0 - c.gzz);
  const double z_plus = 0.25 * (c.gxx + c.gyy);
  const double z_minus = 0.25 * (c.gxx - c.gyy);
  CMatrix rho = CMatrix::Zero(4, 4);
  rho(0, 0) = u_plus;
  rho(3, 3) = u_minus;
  rho(0, 3) = rho(3, 0) = z_minus;
  rho(1, 1) = rho(2, 2) = w;
  rho(1, 2) = rho(2, 1) = z_plus;
  // Closed-form block eigenvalues; a negative one means the correlations
  // cannot come from a state.
  const double outer_mid = 0.5 * (u_plus + u_minus);
  const double outer_rad = std::hypot(0.5 * (u_plus - u_minus), z_minus);
  const double smallest = std::min(outer_mid - outer_rad, w - std::abs(z_plus));
  if (smallest < -tolerance::kSpectrumClip) {
    throw ModelConsistencyError("two-site state not positive (eigenvalue " +
                                std::to_string(smallest) + ") for " + describe(c));
  }
  return make_density_matrix(rho, {2, 2});
}

inline DensityMatrix single_site_state_tfim(const Params& p) { return single_site_state(correlations(p)); }
inline DensityMatrix two_site_state_tfim(const Params& p) { return two_site_state(correlations(p)); }

inline EntropyBits correlation_entropy_tfim(const Params& p) {
  return mutual_information(two_site_state_tfim(p));
}

/// Central-difference step in lambda for size scaling: min(1e-3, 0.1 / N),
/// so the stencil stays inside the finite-size crossover window ~1/N.
inline double coupling_step(int sites) { return std::min(1e-3, 0.1 / sites); }

}  // namespace critent::tfim
