#pragma once

#include <cmath>

#include "critent/denmat.hpp"
#include "critent/error.hpp"

namespace critent {

/// Heisenberg dimer H = sigma_1 . sigma_2 with unit coupling. The spectrum is
/// a singlet at -3 and a triplet at +1.
struct DimerParams {
  double temperature = 0.0;
};

struct DimerWeights {
  double singlet = 1.0;
  double triplet = 0.0;  // per triplet state
};

inline DimerWeights dimer_weights(const DimerParams& p) {
  if (!(p.temperature >= 0.0)) throw DomainError("dimer: temperature must be >= 0");
  if (p.temperature == 0.0) return {1.0, 0.0};
  // Boltzmann factors relative to the singlet, e^{-4/T} per triplet state.
  const double x = std::exp(-4.0 / p.temperature);
  const double z = 1.0 + 3.0 * x;
  return {1.0 / z, x / z};
}

/// Singlet projector in the basis |uu>, |ud>, |du>, |dd>.
inline CMatrix singlet_projector() {
  CMatrix p = CMatrix::Zero(4, 4);
  p(1, 1) = 0.5;
  p(2, 2) = 0.5;
  p(1, 2) = -0.5;
  p(2, 1) = -0.5;
  return p;
}

inline DensityMatrix dimer_thermal_state(const DimerParams& p) {
  const auto w = dimer_weights(p);
  const CMatrix singlet = singlet_projector();
  const CMatrix triplet = CMatrix::Identity(4, 4) - singlet;
  return make_density_matrix(w.singlet * singlet + w.triplet * triplet, {2, 2});
}

/// Closed-form S(12) from the Boltzmann weights.
inline EntropyBits dimer_joint_entropy(const DimerParams& p) {
  const auto w = dimer_weights(p);
  double s = 0.0;
  if (w.singlet > 0.0) s -= w.singlet * std::log2(w.singlet);
  if (w.triplet > 0.0) s -= 3.0 * w.triplet * std::log2(w.triplet);
  return EntropyBits(s);
}

/// MI = 2 - S(12); both marginals are I/2 by SU(2) symmetry, which is checked.
inline EntropyBits dimer_mutual_information(const DimerParams& p) {
  const DensityMatrix rho = dimer_thermal_state(p);
  const CMatrix half = 0.5 * CMatrix::Identity(2, 2);
  for (std::size_t site : {0u, 1u}) {
    const double deviation = (partial_trace(rho, {site}).matrix() - half).cwiseAbs().maxCoeff();
    if (deviation > 1e-12) {
      throw ModelConsistencyError("dimer marginal deviates from I/2 by " +
                                  std::to_string(deviation));
    }
  }
  const double mi = 2.0 - dimer_joint_entropy(p).value;
  return EntropyBits(mi < 0.0 && mi >= -tolerance::kMutualInformationSnap ? 0.0 : mi);
}

}  // namespace critent
