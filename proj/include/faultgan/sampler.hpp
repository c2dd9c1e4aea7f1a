#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "faultgan/circuit.hpp"
#include "faultgan/faults.hpp"

namespace faultgan {

enum class CompareMode {
  // Shared random input G: faulty(perturbed G) is judged against ideal(G).
  kFaultCompare,
  // One uniform target R per trial; G is redrawn until faulty(G) lands near R.
  kTargetSearch,
};

std::string_view mode_name(CompareMode mode) noexcept;
std::optional<CompareMode> parse_mode(std::string_view name) noexcept;

inline constexpr std::uint64_t kDefaultMaxIterations = 1'000'000;

struct ExperimentConfig {
  explicit ExperimentConfig(Circuit ideal_circuit) : ideal(std::move(ideal_circuit)) {}

  Circuit ideal;
  std::vector<FaultSpec> faults;
  double epsilon = 0.0;  // maximal allowed Hamming fraction
  std::uint64_t max_iterations = kDefaultMaxIterations;
  std::size_t trials = 1;
  CompareMode mode = CompareMode::kFaultCompare;
  std::uint64_t seed = 0;
  bool memoize = false;
  // Parallelism only; never changes results.
  unsigned workers = 1;
  std::string label;

  int width() const noexcept { return ideal.width(); }
  // Throws Error for epsilon outside [0, 1], zero trials or zero budget.
  void validate() const;
};

struct DeviationSample {
  std::size_t trial = 0;
  double epsilon = 0.0;
  std::uint64_t re = 0;  // encode_int(modulated)
  std::uint64_t im = 0;  // encode_int(reference)
  std::uint64_t iterations = 0;
  bool accepted = false;
  std::string label;

  friend bool operator==(const DeviationSample&, const DeviationSample&) = default;
};

// Hamming distance / N.
double relative_uncertainty(const BitVector& x, const BitVector& y);
// Largest Hamming distance admitted at uncertainty level epsilon.
int max_hamming(double epsilon, int width) noexcept;

struct Deviation {
  std::uint64_t re;
  std::uint64_t im;
};
Deviation deviation(const BitVector& modulated, const BitVector& reference);

// Reference vector -> generator inputs that were accepted for it. Entries are
// only valid for the (circuit, faults, epsilon) fingerprint they were stored
// under; bind() drops everything when that changes.
class ModulatorCache {
 public:
  void bind(const std::string& fingerprint);
  const std::string& fingerprint() const noexcept { return fingerprint_; }

  std::span<const std::uint64_t> candidates(std::uint64_t reference) const;
  void store(std::uint64_t reference, std::uint64_t input);
  void clear();
  std::size_t size() const noexcept;

  // Re-checks every entry against the acceptance predicate.
  bool consistent(const Circuit& faulty, double epsilon) const;

 private:
  std::string fingerprint_;
  std::map<std::uint64_t, std::vector<std::uint64_t>> entries_;
};

std::string cache_fingerprint(const ExperimentConfig& cfg);

// One trial of the generator / modulator / discriminator loop. `cache` may be
// null; it is only consulted in TargetSearch mode with cfg.memoize set.
DeviationSample run_trial(const ExperimentConfig& cfg, const Circuit& faulty, const Circuit& ideal,
                          Rng& rng, ModulatorCache* cache, std::size_t trial_index = 0);

// Exactly cfg.trials samples ordered by trial index. Trial t draws from
// substream(seed, t), so results do not depend on cfg.workers. With
// memoization the trials run in index order on one thread.
std::vector<DeviationSample> run_experiment(const ExperimentConfig& cfg);

struct IterationStats {
  std::size_t trials = 0;
  std::size_t accepted = 0;
  double censored_fraction = 0.0;
  // Over accepted trials only; NaN when none accepted.
  double mean_iterations = 0.0;
  double median_iterations = 0.0;
  // Every iteration spent, censored trials included, per accepted sample.
  double iterations_per_acceptance = 0.0;
};

IterationStats iteration_stats(std::span<const DeviationSample> samples);

}  // namespace faultgan
