#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "critent/analysis.hpp"
#include "critent/ising2d.hpp"
#include "critent/sweep.hpp"
#include "critent/tfim.hpp"

namespace critent::analysis {

enum class Side { below, above };

inline const char* to_string(Side s) { return s == Side::below ? "below" : "above"; }

/// MI between spins N diagonal steps apart at temperature t.
inline double ising_mi(double t, int n, ising2d::Ensemble ensemble,
                       std::size_t grid_points = quadrature::kDefaultGridPoints) {
  const double g = ising2d::DiagonalCorrelator(t, n, grid_points)(n);
  const double m = ensemble == ising2d::Ensemble::broken ? ising2d::magnetization(t) : 0.0;
  return mutual_information(ising2d::two_site_state(g, m)).value;
}

/// dMI/dT at distances |T - T_c| = d, using the step min(1e-3, d/10).
/// Returns samples (d, dMI/dT) in the order of `distances`.
inline std::vector<Sample> ising_derivative_samples(Side side, int n, const std::vector<double>& distances,
                                                    ising2d::Ensemble ensemble, std::size_t workers = 1) {
  const double tc = ising2d::critical_temperature();
  return parallel_map(
      distances.size(),
      [&](std::size_t k) {
        const double d = distances[k];
        if (!(d > 0.0)) throw DomainError("ising derivative: distance from T_c must be > 0");
        const double t = side == Side::below ? tc - d : tc + d;
        const double slope = derivative_at([&](double x) { return ising_mi(x, n, ensemble); }, t,
                                           ising2d::temperature_step(t));
        return Sample{d, slope};
      },
      workers);
}

/// Below T_c: power law of |dMI/dT| in (T_c - T). Above: dMI/dT linear in ln(T - T_c).
inline FitResult ising_derivative_fit(Side side, const std::vector<Sample>& samples) {
  if (side == Side::above) return log_poly_fit(samples, 1);
  std::vector<Sample> magnitude;
  for (const auto& s : samples) magnitude.push_back({s.x, std::abs(s.y)});
  return power_law_fit(magnitude);
}

inline double tfim_mi(double coupling, double temperature, int sites, int separation,
                      tfim::Sector sector = tfim::Sector::even) {
  return tfim::correlation_entropy_tfim({coupling, temperature, sites, separation, sector}).value;
}

/// dS(0, r)/dlambda by central difference with step h.
inline double tfim_coupling_slope(double coupling, double temperature, int sites, int separation,
                                  double h, tfim::Sector sector = tfim::Sector::even) {
  return derivative_at([&](double l) { return tfim_mi(l, temperature, sites, separation, sector); },
                       coupling, h);
}

struct PeakEstimate {
  double coupling = 0.0;
  double slope = 0.0;
};

/// Maximum over lambda of dS(0, N/2)/dlambda at T = 0: a 0.005 scan over
/// [scan_min, scan_max], then one 0.001 refinement within +-0.005 of the best
/// scan point.
inline PeakEstimate tfim_farthest_peak(int sites, std::size_t workers = 1, double scan_min = 0.9,
                                       double scan_max = 1.4) {
  tfim::check_ring(sites);
  const int r = sites / 2;
  const double h = tfim::coupling_step(sites);
  auto best_of = [&](const std::vector<double>& grid) {
    const auto slopes = parallel_map(
        grid.size(), [&](std::size_t k) { return tfim_coupling_slope(grid[k], 0.0, sites, r, h); }, workers);
    PeakEstimate best{grid.front(), slopes.front()};
    for (std::size_t k = 1; k < grid.size(); ++k) {
      if (slopes[k] > best.slope) best = {grid[k], slopes[k]};
    }
    return best;
  };
  const auto coarse = Axis{scan_min, scan_max, static_cast<int>(std::lround((scan_max - scan_min) / 0.005)) + 1};
  const PeakEstimate first = best_of(coarse.values());
  const PeakEstimate refined = best_of(Axis{first.coupling - 0.005, first.coupling + 0.005, 11}.values());
  return refined.slope >= first.slope ? refined : first;
}

}  // namespace critent::analysis
