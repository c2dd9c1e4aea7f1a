#pragma once

#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "faultgan/circuit.hpp"

namespace faultgan {

// Per-trial random stream. mt19937_64 output is fixed by the standard, so
// streams are reproducible across platforms; all draws go through the raw
// engine rather than std distributions (which are implementation-defined).
using Rng = std::mt19937_64;

// Independent stream for trial `index` of a run seeded with `seed`.
Rng substream(std::uint64_t seed, std::uint64_t index);

// Uniform double in [0, 1) from the top 53 bits of one draw.
double uniform01(Rng& rng);

struct SlotRef {
  int layer;     // 1-based
  int position;  // lowest bit of the slot, 1-based
  friend bool operator==(const SlotRef&, const SlotRef&) = default;
};

struct Missing {
  SlotRef slot;
  friend bool operator==(const Missing&, const Missing&) = default;
};
struct Swap {
  SlotRef slot;
  GateKind replacement;
  friend bool operator==(const Swap&, const Swap&) = default;
};
struct ReversedPolarity {
  SlotRef slot;
  friend bool operator==(const ReversedPolarity&, const ReversedPolarity&) = default;
};
struct InputPerturbation {
  double flip_probability;
  friend bool operator==(const InputPerturbation&, const InputPerturbation&) = default;
};

using FaultSpec = std::variant<Missing, Swap, ReversedPolarity, InputPerturbation>;

// `missing:L1.S3`, `swap:L1.S1:buffer`, `reverse:L2.S5`, `flip:0.05`;
// several specs separated by commas. Empty text yields no faults.
std::vector<FaultSpec> parse_faults(std::string_view text);
std::string format_fault(const FaultSpec& f);
std::string format_faults(const std::vector<FaultSpec>& faults);

// Structural injection; returns a new circuit. InputPerturbation is not a
// circuit fault and is rejected here.
Circuit inject(const Circuit& c, const FaultSpec& f);
// Applies every structural spec in declaration order, skipping perturbations.
Circuit inject_all(const Circuit& c, const std::vector<FaultSpec>& faults);
// Flip probabilities of the perturbation specs, in declaration order.
std::vector<double> perturbations(const std::vector<FaultSpec>& faults);

// Flips each bit independently with probability p. Always consumes exactly
// v.width() draws from rng.
BitVector perturb_input(const BitVector& v, double p, Rng& rng);
std::uint64_t perturb_packed(std::uint64_t packed, int width, double p, Rng& rng);

}  // namespace faultgan
