#pragma once

#include <Eigen/Eigenvalues>

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "critent/denmat.hpp"
#include "critent/error.hpp"
#include "critent/tfim.hpp"

namespace critent::ed {

// Basis states are bitmasks over the sites; bit j set means site j is down.
inline constexpr int kMaxSites = 12;

inline void check_sites(int sites) {
  if (sites < 3) throw DomainError("ed: ring needs at least 3 sites (N=2 double-counts the bond)");
  if (sites > kMaxSites) throw DomainError("ed: ring length above the 2^12 dimension cap");
}

inline int parity_of(std::uint32_t state) { return std::popcount(state) % 2 == 0 ? 1 : -1; }

/// Dense H = -sum_j [lambda sigma^x_j sigma^x_{j+1} + sigma^z_j] with periodic closure.
inline RMatrix build_hamiltonian(int sites, double coupling) {
  check_sites(sites);
  const std::uint32_t dim = 1u << sites;
  RMatrix h = RMatrix::Zero(dim, dim);
  for (std::uint32_t s = 0; s < dim; ++s) {
    for (int j = 0; j < sites; ++j) {
      const int k = (j + 1) % sites;
      h(s, s) -= ((s >> j) & 1u) ? -1.0 : 1.0;
      const std::uint32_t flipped = s ^ (1u << j) ^ (1u << k);
      h(flipped, s) -= coupling;
    }
  }
  return h;
}

/// max |[H, P]| with P = prod sigma^z diagonal in the basis.
inline double parity_commutator_norm(const RMatrix& h) {
  double worst = 0.0;
  for (Eigen::Index r = 0; r < h.rows(); ++r) {
    for (Eigen::Index c = 0; c < h.cols(); ++c) {
      const int pr = parity_of(static_cast<std::uint32_t>(r));
      const int pc = parity_of(static_cast<std::uint32_t>(c));
      worst = std::max(worst, std::abs(h(r, c) * (pc - pr)));
    }
  }
  return worst;
}

/// Eigenpairs of one parity block; `states` maps block rows to basis states.
struct ParityBlock {
  int parity = 1;
  std::vector<std::uint32_t> states;
  std::vector<std::int32_t> position;  // full-basis state -> row, or -1
  Eigen::VectorXd energies;
  RMatrix vectors;  // columns index eigenstates, rows index `states`
};

inline ParityBlock diagonalize_block(const RMatrix& h, int parity) {
  ParityBlock block;
  block.parity = parity;
  block.position.assign(static_cast<std::size_t>(h.rows()), -1);
  for (std::uint32_t s = 0; s < static_cast<std::uint32_t>(h.rows()); ++s) {
    if (parity_of(s) == parity) {
      block.position[s] = static_cast<std::int32_t>(block.states.size());
      block.states.push_back(s);
    }
  }
  const auto n = static_cast<Eigen::Index>(block.states.size());
  RMatrix sub(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      sub(i, j) = h(block.states[static_cast<std::size_t>(i)], block.states[static_cast<std::size_t>(j)]);
    }
  }
  Eigen::SelfAdjointEigenSolver<RMatrix> solver(sub);
  if (solver.info() != Eigen::Success) throw DomainError("ed: diagonalization failed");
  block.energies = solver.eigenvalues();
  block.vectors = solver.eigenvectors();
  return block;
}

/// Accumulates weight * |psi><psi| reduced to sites (i, j), basis |uu>,|ud>,|du>,|dd>.
inline void accumulate_two_site(CMatrix& rho, const ParityBlock& block, Eigen::Index column,
                                double weight, int site_i, int site_j) {
  const std::uint32_t mask = (1u << site_i) | (1u << site_j);
  auto local = [&](std::uint32_t s) {
    return static_cast<Eigen::Index>(2 * ((s >> site_i) & 1u) + ((s >> site_j) & 1u));
  };
  const auto& v = block.vectors;
  for (std::size_t k = 0; k < block.states.size(); ++k) {
    const std::uint32_t s = block.states[k];
    const double amp = v(static_cast<Eigen::Index>(k), column);
    if (amp == 0.0) continue;
    const std::uint32_t rest = s & ~mask;
    for (std::uint32_t bits = 0; bits < 4; ++bits) {
      const std::uint32_t t = rest | (((bits >> 1) & 1u) << site_i) | ((bits & 1u) << site_j);
      // States of the other parity carry no amplitude in this block.
      const std::int32_t row = block.position[t];
      if (row < 0) continue;
      const double other = v(row, column);
      rho(local(s), local(t)) += weight * amp * other;
    }
  }
}

struct OracleReport {
  int sites = 0;
  double coupling = 0.0;
  double temperature = 0.0;
  int separation = 0;
  tfim::CorrelationSet correlations;
  double mutual_information = 0.0;
  double ground_energy = 0.0;
  int parity = 1;  // parity of the ground state
  CMatrix two_site = CMatrix::Zero(4, 4);
};

/// Pauli expectation tr(rho (a (x) b)) for a two-site state.
inline double pauli_expectation(const CMatrix& rho, const CMatrix& a, const CMatrix& b) {
  CMatrix op(4, 4);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) op.block(2 * i, 2 * j, 2, 2) = a(i, j) * b;
  }
  return (rho * op).trace().real();
}

/// Ground state (T = 0) or Gibbs state (T > 0) observables between site 0
/// and site r, obtained by brute-force diagonalization.
inline OracleReport oracle_observables(int sites, double coupling, double temperature,
                                       int separation) {
  check_sites(sites);
  if (separation < 1 || separation > sites / 2) throw DomainError("ed: separation outside [1, N/2]");
  if (!(temperature >= 0.0)) throw DomainError("ed: temperature must be >= 0");
  if (!(coupling >= 0.0)) throw DomainError("ed: coupling must be >= 0");

  const RMatrix h = build_hamiltonian(sites, coupling);
  const double commutator = parity_commutator_norm(h);
  if (commutator > 1e-12) throw DomainError("ed: [H, P] = " + std::to_string(commutator));

  const ParityBlock even = diagonalize_block(h, 1);
  const ParityBlock odd = diagonalize_block(h, -1);

  OracleReport report;
  report.sites = sites;
  report.coupling = coupling;
  report.temperature = temperature;
  report.separation = separation;

  const double e_even = even.energies(0);
  const double e_odd = odd.energies(0);
  const double ground = std::min(e_even, e_odd);
  const double degenerate = 1e-10 * std::max(1.0, std::abs(ground));
  report.ground_energy = ground;
  report.parity = (e_odd < e_even - degenerate) ? -1 : 1;

  CMatrix rho = CMatrix::Zero(4, 4);
  if (temperature == 0.0) {
    const ParityBlock& block = report.parity == 1 ? even : odd;
    if (block.energies.size() > 1 && block.energies(1) - block.energies(0) <= degenerate) {
      throw DegeneracyError("ed: ground state degenerate within its parity sector");
    }
    accumulate_two_site(rho, block, 0, 1.0, 0, separation);
  } else {
    double partition = 0.0;
    for (const ParityBlock* block : {&even, &odd}) {
      for (Eigen::Index k = 0; k < block->energies.size(); ++k) {
        partition += std::exp(-(block->energies(k) - ground) / temperature);
      }
    }
    for (const ParityBlock* block : {&even, &odd}) {
      for (Eigen::Index k = 0; k < block->energies.size(); ++k) {
        const double w = std::exp(-(block->energies(k) - ground) / temperature) / partition;
        if (w < 1e-300) continue;
        accumulate_two_site(rho, *block, k, w, 0, separation);
      }
    }
  }
  report.two_site = rho;

  CMatrix sx(2, 2), sy(2, 2), sz(2, 2), id = CMatrix::Identity(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, Complex(0, -1), Complex(0, 1), 0;
  sz << 1, 0, 0, -1;
  report.correlations.mz = pauli_expectation(rho, sz, id);
  report.correlations.gxx = pauli_expectation(rho, sx, sx);
  report.correlations.gyy = pauli_expectation(rho, sy, sy);
  report.correlations.gzz = pauli_expectation(rho, sz, sz);
  report.mutual_information = critent::mutual_information(make_density_matrix(rho, {2, 2})).value;
  return report;
}

/// Mean energy tr(H rho_Gibbs); T = 0 gives the ground energy.
inline double thermal_energy(int sites, double coupling, double temperature) {
  const RMatrix h = build_hamiltonian(sites, coupling);
  Eigen::SelfAdjointEigenSolver<RMatrix> solver(h, Eigen::EigenvaluesOnly);
  const auto& e = solver.eigenvalues();
  if (temperature == 0.0) return e(0);
  double z = 0.0, sum = 0.0;
  for (Eigen::Index k = 0; k < e.size(); ++k) {
    const double w = std::exp(-(e(k) - e(0)) / temperature);
    z += w;
    sum += w * e(k);
  }
  return sum / z;
}

}  // namespace critent::ed
