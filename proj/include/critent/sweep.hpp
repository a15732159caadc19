#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "critent/analysis.hpp"
#include "critent/denmat.hpp"
#include "critent/dimer.hpp"
#include "critent/error.hpp"
#include "critent/ising2d.hpp"
#include "critent/tfim.hpp"

namespace critent::analysis {

/// One output row. lambda is empty outside the chain model; sites is empty
/// for the lattice model (infinite plane). A non-empty `error` marks a point
/// whose evaluation failed; its entropy fields are meaningless.
struct SweepRecord {
  std::string model;
  double temperature = 0.0;
  std::optional<double> coupling;
  std::optional<int> sites;
  int separation = 1;
  double s_i = 0.0;
  double s_j = 0.0;
  double s_ij = 0.0;
  double mutual = 0.0;
  std::string tag;
  std::optional<std::string> error;

  bool ok() const noexcept { return !error.has_value(); }
};

/// Fills the entropy fields from a two-site state and re-checks
/// MI = S_i + S_j - S_ij.
inline void fill_entropies(SweepRecord& rec, const DensityMatrix& rho) {
  const auto parts = mutual_information_parts(rho);
  rec.s_i = parts.s_a.value;
  rec.s_j = parts.s_b.value;
  rec.s_ij = parts.s_ab.value;
  rec.mutual = parts.mutual.value;
  const double identity = rec.s_i + rec.s_j - rec.s_ij - rec.mutual;
  if (std::abs(identity) > 1e-9 || rec.mutual < 0.0) {
    throw ValidationError("mutual_information_identity",
                          "MI=" + std::to_string(rec.mutual) + " off by " + std::to_string(identity));
  }
}

/// Inclusive linear grid; count = 1 gives {min}.
struct Axis {
  double min = 0.0;
  double max = 0.0;
  int count = 1;

  void check(const char* name) const {
    if (count < 1) throw DomainError(std::string(name) + ": grid count must be >= 1");
    if (!std::isfinite(min) || !std::isfinite(max)) throw DomainError(std::string(name) + ": bounds must be finite");
    if (count > 1 && !(max > min)) throw DomainError(std::string(name) + ": max must exceed min");
  }

  std::vector<double> values() const {
    std::vector<double> v(static_cast<std::size_t>(std::max(count, 0)));
    for (int k = 0; k < count; ++k) {
      v[static_cast<std::size_t>(k)] =
          count == 1 ? min : min + (max - min) * static_cast<double>(k) / (count - 1);
    }
    return v;
  }

  /// Rounded values with duplicates removed, ascending.
  std::vector<int> integers() const {
    std::vector<int> out;
    for (double x : values()) out.push_back(static_cast<int>(std::lround(x)));
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
};

/// Logarithmically spaced inclusive grid.
inline std::vector<double> logspace(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi >= lo) || count < 1) throw DomainError("logspace: bad range");
  std::vector<double> out;
  for (int k = 0; k < count; ++k) {
    const double f = count == 1 ? 0.0 : static_cast<double>(k) / (count - 1);
    out.push_back(std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo))));
  }
  return out;
}

namespace detail {

inline SweepRecord error_record(SweepRecord rec, const std::exception& e) {
  rec.error = e.what();
  rec.s_i = rec.s_j = rec.s_ij = rec.mutual = 0.0;
  return rec;
}

template <class Row>
std::vector<SweepRecord> flatten(std::vector<Row> rows) {
  std::vector<SweepRecord> out;
  for (auto& row : rows) {
    for (auto& r : row) out.push_back(std::move(r));
  }
  return out;
}

}  // namespace detail

inline std::vector<SweepRecord> sweep_dimer(const Axis& temperature, std::size_t workers = 1) {
  temperature.check("T");
  const auto ts = temperature.values();
  return parallel_map(
      ts.size(),
      [&](std::size_t k) {
        SweepRecord rec;
        rec.model = "dimer";
        rec.temperature = ts[k];
        rec.sites = 2;
        rec.separation = 1;
        try {
          fill_entropies(rec, dimer_thermal_state(DimerParams{ts[k]}));
        } catch (const std::exception& e) {
          return detail::error_record(rec, e);
        }
        return rec;
      },
      workers);
}

/// Rows ordered by (T, r). One coefficient set per temperature serves every r.
inline std::vector<SweepRecord> sweep_ising2d(const Axis& temperature, const Axis& separation,
                                              ising2d::Ensemble ensemble, std::size_t workers = 1,
                                              std::size_t grid_points = quadrature::kDefaultGridPoints) {
  temperature.check("T");
  separation.check("r");
  const auto ts = temperature.values();
  const auto rs = separation.integers();
  const int r_max = rs.back();
  auto rows = parallel_map(
      ts.size(),
      [&](std::size_t k) {
        std::vector<SweepRecord> row;
        SweepRecord base;
        base.model = "ising2d";
        base.temperature = ts[k];
        base.tag = ising2d::to_string(ensemble);
        std::optional<ising2d::DiagonalCorrelator> corr;
        std::optional<std::string> setup_error;
        double m = 0.0;
        try {
          corr.emplace(ts[k], std::max(r_max, 1), grid_points);
          if (ensemble == ising2d::Ensemble::broken) m = ising2d::magnetization(ts[k]);
        } catch (const std::exception& e) {
          setup_error = e.what();
        }
        for (int r : rs) {
          SweepRecord rec = base;
          rec.separation = r;
          if (setup_error) {
            rec.error = setup_error;
            row.push_back(rec);
            continue;
          }
          try {
            ising2d::check_separation(r);
            fill_entropies(rec, ising2d::two_site_state((*corr)(r), m));
          } catch (const std::exception& e) {
            rec = detail::error_record(rec, e);
          }
          row.push_back(rec);
        }
        return row;
      },
      workers);
  return detail::flatten(std::move(rows));
}

/// Rows ordered by (lambda, T, N, r); one coefficient window per (lambda, T, N).
inline std::vector<SweepRecord> sweep_tfim(const Axis& coupling, const Axis& temperature,
                                           const Axis& sites, const Axis& separation,
                                           tfim::Sector sector, std::size_t workers = 1) {
  coupling.check("lambda");
  temperature.check("T");
  sites.check("N");
  separation.check("r");
  const auto ls = coupling.values();
  const auto ts = temperature.values();
  const auto ns = sites.integers();
  const auto rs = separation.integers();
  const std::size_t cells = ls.size() * ts.size() * ns.size();
  auto rows = parallel_map(
      cells,
      [&](std::size_t cell) {
        const std::size_t in = cell % ns.size();
        const std::size_t it = (cell / ns.size()) % ts.size();
        const std::size_t il = cell / (ns.size() * ts.size());
        SweepRecord base;
        base.model = "tfim";
        base.coupling = ls[il];
        base.temperature = ts[it];
        base.sites = ns[in];
        base.tag = tfim::to_string(sector);
        std::vector<SweepRecord> row;
        std::optional<tfim::CoefficientWindow> window;
        std::optional<std::string> setup_error;
        try {
          const int n = ns[in];
          tfim::check_ring(n);
          const int reach = std::clamp(rs.back(), 1, n / 2);
          window.emplace(ls[il], ts[it], n, reach + 1, sector);
        } catch (const std::exception& e) {
          setup_error = e.what();
        }
        for (int r : rs) {
          SweepRecord rec = base;
          rec.separation = r;
          if (setup_error) {
            rec.error = setup_error;
            row.push_back(rec);
            continue;
          }
          try {
            tfim::check({ls[il], ts[it], ns[in], r, sector});
            fill_entropies(rec, tfim::two_site_state(window->correlations(r)));
          } catch (const std::exception& e) {
            rec = detail::error_record(rec, e);
          }
          row.push_back(rec);
        }
        return row;
      },
      workers);
  return detail::flatten(std::move(rows));
}

}  // namespace critent::analysis
