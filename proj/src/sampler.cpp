#include "faultgan/sampler.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <limits>
#include <thread>

#include "faultgan/error.hpp"
#include "faultgan/netlist.hpp"

namespace faultgan {

std::string_view mode_name(CompareMode mode) noexcept {
  return mode == CompareMode::kFaultCompare ? "fault-compare" : "target-search";
}

std::optional<CompareMode> parse_mode(std::string_view name) noexcept {
  if (name == "fault-compare") return CompareMode::kFaultCompare;
  if (name == "target-search") return CompareMode::kTargetSearch;
  return std::nullopt;
}

void ExperimentConfig::validate() const {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw Error("epsilon out of range [0, 1]");
  if (trials < 1) throw Error("trials must be at least 1");
  if (max_iterations < 1) throw Error("max iterations must be at least 1");
  for (double p : perturbations(faults)) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error("flip probability outside [0, 1]");
  }
}

double relative_uncertainty(const BitVector& x, const BitVector& y) {
  return static_cast<double>(hamming_distance(x, y)) / x.width();
}

int max_hamming(double epsilon, int width) noexcept {
  // Grid values such as 3 * 0.05 land a few ulps off; absorb that.
  return static_cast<int>(std::floor(epsilon * width + 1e-9));
}

Deviation deviation(const BitVector& modulated, const BitVector& reference) {
  if (modulated.width() != reference.width()) {
    throw Error("width mismatch: " + std::to_string(modulated.width()) + " vs " +
                std::to_string(reference.width()));
  }
  return {encode_int(modulated), encode_int(reference)};
}

void ModulatorCache::bind(const std::string& fingerprint) {
  if (fingerprint != fingerprint_) {
    entries_.clear();
    fingerprint_ = fingerprint;
  }
}

std::span<const std::uint64_t> ModulatorCache::candidates(std::uint64_t reference) const {
  const auto it = entries_.find(reference);
  if (it == entries_.end()) return {};
  return it->second;
}

void ModulatorCache::store(std::uint64_t reference, std::uint64_t input) {
  auto& list = entries_[reference];
  if (std::find(list.begin(), list.end(), input) == list.end()) list.push_back(input);
}

void ModulatorCache::clear() { entries_.clear(); }

std::size_t ModulatorCache::size() const noexcept {
  std::size_t n = 0;
  for (const auto& [ref, list] : entries_) n += list.size();
  return n;
}

bool ModulatorCache::consistent(const Circuit& faulty, double epsilon) const {
  const int limit = max_hamming(epsilon, faulty.width());
  for (const auto& [ref, list] : entries_) {
    for (std::uint64_t input : list) {
      if (std::popcount(faulty.eval_packed(input) ^ ref) > limit) return false;
    }
  }
  return true;
}

std::string cache_fingerprint(const ExperimentConfig& cfg) {
  char eps[32];
  const auto [end, ec] = std::to_chars(eps, eps + sizeof eps, cfg.epsilon);
  return serialize_netlist(cfg.ideal) + "faults " + format_faults(cfg.faults) + "\neps " +
         std::string(eps, end) + "\n";
}

DeviationSample run_trial(const ExperimentConfig& cfg, const Circuit& faulty, const Circuit& ideal,
                          Rng& rng, ModulatorCache* cache, std::size_t trial_index) {
  const int width = ideal.width();
  if (faulty.width() != width) throw Error("width mismatch between faulty and ideal circuit");
  const std::uint64_t mask = BitVector::mask_for(width);
  const int limit = max_hamming(cfg.epsilon, width);
  const std::vector<double> flips = perturbations(cfg.faults);

  DeviationSample out;
  out.trial = trial_index;
  out.epsilon = cfg.epsilon;
  out.label = cfg.label;

  auto perturbed = [&](std::uint64_t g) {
    for (double p : flips) g = perturb_packed(g, width, p, rng);
    return g;
  };
  auto finish = [&](std::uint64_t modulated, std::uint64_t reference, std::uint64_t iters,
                    bool accepted) {
    out.re = modulated << 1;
    out.im = reference << 1;
    out.iterations = iters;
    out.accepted = accepted;
    return out;
  };

  if (cfg.mode == CompareMode::kFaultCompare) {
    std::uint64_t modulated = 0;
    std::uint64_t reference = 0;
    for (std::uint64_t it = 1; it <= cfg.max_iterations; ++it) {
      const std::uint64_t g = rng() & mask;
      modulated = faulty.eval_packed(perturbed(g));
      reference = ideal.eval_packed(g);
      if (std::popcount(modulated ^ reference) <= limit) {
        return finish(modulated, reference, it, true);
      }
    }
    return finish(modulated, reference, cfg.max_iterations, false);
  }

  const std::uint64_t target = rng() & mask;
  const bool memo = cfg.memoize && cache != nullptr;
  std::uint64_t it = 0;
  std::uint64_t modulated = 0;
  if (memo) {
    for (std::uint64_t g : cache->candidates(target)) {
      if (it == cfg.max_iterations) break;
      ++it;
      modulated = faulty.eval_packed(g);
      if (std::popcount(modulated ^ target) <= limit) return finish(modulated, target, it, true);
    }
  }
  while (it < cfg.max_iterations) {
    ++it;
    const std::uint64_t g = perturbed(rng() & mask);
    modulated = faulty.eval_packed(g);
    if (std::popcount(modulated ^ target) <= limit) {
      if (memo) cache->store(target, g);
      return finish(modulated, target, it, true);
    }
  }
  return finish(modulated, target, cfg.max_iterations, false);
}

std::vector<DeviationSample> run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const Circuit faulty = inject_all(cfg.ideal, cfg.faults);
  std::vector<DeviationSample> samples(cfg.trials);

  if (cfg.memoize) {
    ModulatorCache cache;
    cache.bind(cache_fingerprint(cfg));
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      Rng rng = substream(cfg.seed, t);
      samples[t] = run_trial(cfg, faulty, cfg.ideal, rng, &cache, t);
    }
    return samples;
  }

  auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      Rng rng = substream(cfg.seed, t);
      samples[t] = run_trial(cfg, faulty, cfg.ideal, rng, nullptr, t);
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(cfg.workers, 1, cfg.trials);
  if (workers == 1) {
    run_range(0, cfg.trials);
    return samples;
  }
  std::vector<std::jthread> pool;
  const std::size_t chunk = (cfg.trials + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(cfg.trials, begin + chunk);
    if (begin < end) pool.emplace_back(run_range, begin, end);
  }
  pool.clear();
  return samples;
}

IterationStats iteration_stats(std::span<const DeviationSample> samples) {
  IterationStats s;
  s.trials = samples.size();
  std::vector<std::uint64_t> accepted_iters;
  double total = 0.0;
  for (const auto& d : samples) {
    total += static_cast<double>(d.iterations);
    if (d.accepted) accepted_iters.push_back(d.iterations);
  }
  s.accepted = accepted_iters.size();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  s.censored_fraction =
      s.trials == 0 ? 0.0 : static_cast<double>(s.trials - s.accepted) / static_cast<double>(s.trials);
  if (accepted_iters.empty()) {
    s.mean_iterations = s.median_iterations = nan;
    s.iterations_per_acceptance = std::numeric_limits<double>::infinity();
    return s;
  }
  double sum = 0.0;
  for (auto v : accepted_iters) sum += static_cast<double>(v);
  s.mean_iterations = sum / static_cast<double>(accepted_iters.size());
  std::sort(accepted_iters.begin(), accepted_iters.end());
  const std::size_t n = accepted_iters.size();
  s.median_iterations = n % 2 == 1 ? static_cast<double>(accepted_iters[n / 2])
                                   : 0.5 * (static_cast<double>(accepted_iters[n / 2 - 1]) +
                                            static_cast<double>(accepted_iters[n / 2]));
  s.iterations_per_acceptance = total / static_cast<double>(n);
  return s;
}

}  // namespace faultgan
