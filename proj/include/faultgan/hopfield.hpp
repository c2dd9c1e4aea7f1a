#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "faultgan/circuit.hpp"

namespace faultgan {

// Per-bit agreement indicators xi_j: 1 where simulated and expected bits
// match, 0 where they deviate. Stored as a BitVector in the same j = 1
// leftmost convention.
struct AgreementVector {
  BitVector xi;

  int width() const noexcept { return xi.width(); }
  bool at(int j) const { return xi.bit(j); }
  // k = sum_j xi_j; relative uncertainty is 1 - k/N.
  int agreement_count() const noexcept { return xi.popcount(); }

  friend bool operator==(const AgreementVector&, const AgreementVector&) = default;
};

AgreementVector agreement_vector(const BitVector& simulated, const BitVector& expected);

// Pair energies are rationals -count / (2N) with integer count in [0, P].
struct PairEnergy {
  std::int64_t count;
  int width;

  double value() const noexcept { return -static_cast<double>(count) / (2.0 * width); }
};

// E^mu_ij = -(1/2N) sum_nu (xi^mu_i xi^nu_j)^2, evaluated term by term.
PairEnergy pair_energy_direct(std::span<const AgreementVector> ensemble, std::size_t mu, int i,
                              int j);
// Same energy via the binary identity (xi xi')^2 = xi xi':
// -(1/2N) xi^mu_i sum_nu xi^nu_j.
PairEnergy pair_energy(std::span<const AgreementVector> ensemble, std::size_t mu, int i, int j);

struct Manifold {
  int agreement_count = 0;
  std::vector<std::size_t> members;  // configuration indices mu
  double min_energy = 0.0;
  double max_energy = 0.0;
  double mean_energy = 0.0;

  std::size_t degeneracy() const noexcept { return members.size(); }
};

class EnergySpectrum {
 public:
  int width() const noexcept { return width_; }
  std::size_t ensemble_size() const noexcept { return ensemble_size_; }
  // Count c with E^mu_ij = -c / (2N); i, j are 1-based.
  std::int64_t count(std::size_t mu, int i, int j) const;
  double energy(std::size_t mu, int i, int j) const;
  const std::map<int, Manifold>& manifolds() const noexcept { return manifolds_; }

 private:
  friend EnergySpectrum spectrum(std::span<const AgreementVector> ensemble);

  int width_ = 0;
  std::size_t ensemble_size_ = 0;
  std::vector<std::int64_t> counts_;  // [mu][i][j], row-major
  std::map<int, Manifold> manifolds_;
};

// Throws Error("width ...") on mixed widths, Error("empty ensemble") when empty.
EnergySpectrum spectrum(std::span<const AgreementVector> ensemble);

struct ManifoldCompleteness {
  int agreement_count = 0;
  std::uint64_t observed = 0;  // distinct xi patterns seen
  std::uint64_t expected = 0;  // C(N, k)
  bool saturated() const noexcept { return observed == expected; }
};

struct CompletenessReport {
  int width = 0;
  std::vector<ManifoldCompleteness> manifolds;  // k = 0..N
  bool complete() const noexcept;
};

// Requires width <= 16 so that full enumeration stays cheap.
CompletenessReport completeness_check(int width, std::span<const AgreementVector> ensemble);

// All 2^N agreement patterns.
std::vector<AgreementVector> exhaustive_ensemble(int width);

std::uint64_t binomial(int n, int k) noexcept;

}  // namespace faultgan
