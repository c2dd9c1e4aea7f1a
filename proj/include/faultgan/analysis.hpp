#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "faultgan/sampler.hpp"

namespace faultgan {

struct Point {
  double x;  // im
  double y;  // re
};

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  // Residual RMS divided by full_scale.
  double rho = 0.0;
};

// Ordinary least squares of y on x. Throws Error("degenerate abscissa") when
// fewer than two distinct x values are present.
LinearFit fit_linear(std::span<const Point> points, double full_scale);
// Fit of re on im over the given samples (accepted or not; callers filter).
LinearFit fit_linear(std::span<const DeviationSample> samples, int width);

inline constexpr double kDefaultTau = 0.05;
inline constexpr std::size_t kDefaultMinSamples = 200;
inline constexpr double kUnreliableCensoredFraction = 0.10;

struct SweepPoint {
  double epsilon = 0.0;
  std::size_t trials = 0;
  std::size_t accepted = 0;
  std::optional<LinearFit> fit;  // absent when the accepted set is degenerate
  double mean_iterations = 0.0;  // accepted trials only; NaN when none
  double median_iterations = 0.0;
  double censored_fraction = 0.0;
  std::vector<DeviationSample> samples;  // may be empty for loaded sweeps

  bool reliable() const noexcept { return accepted > 0 && censored_fraction <= kUnreliableCensoredFraction; }
};

struct SweepResult {
  int width = 0;
  std::vector<SweepPoint> points;  // epsilon strictly increasing
};

// 0.00, 0.05, ..., 0.50.
std::vector<double> default_epsilon_grid();

// Runs the experiment once per grid value; base.epsilon is ignored.
SweepResult run_sweep(const ExperimentConfig& base, std::span<const double> grid,
                      bool keep_samples = true);

// Summarises one epsilon's samples (fit over accepted samples only).
SweepPoint summarize(double epsilon, std::vector<DeviationSample> samples, int width,
                     bool keep_samples = true);

struct TransitionEstimate {
  std::optional<double> epsilon_star;
  double tau = kDefaultTau;
  std::size_t min_samples = kDefaultMinSamples;
};

// Smallest grid epsilon whose fit has rho > tau, considering only points with
// at least min_samples accepted samples.
TransitionEstimate detect_transition(const SweepResult& sweep, double tau = kDefaultTau,
                                     std::size_t min_samples = kDefaultMinSamples);

struct ScalingFit {
  // log(mean iterations) = log(prefactor) + rate * log(ball volume)
  double rate = 0.0;
  double prefactor = 0.0;
  double r_squared = 0.0;
  double rms_residual = 0.0;  // in natural-log units
  std::size_t points = 0;
  bool monotone = true;  // means strictly decreasing in epsilon
};

// Number of width-N vectors within Hamming distance floor(eps N) of a point.
double hamming_ball_volume(int width, double epsilon);
// 2^N / ball volume: mean draws for TargetSearch on a bijective circuit.
double analytic_target_search_mean(int width, double epsilon);

// Uses reliable points only; throws Error("underdetermined") with fewer than 3.
ScalingFit fit_iteration_scaling(const SweepResult& sweep);

}  // namespace faultgan
