#include "faultgan/analysis.hpp"

#include <cmath>
#include <limits>

#include "faultgan/error.hpp"
#include "faultgan/hopfield.hpp"

namespace faultgan {

LinearFit fit_linear(std::span<const Point> points, double full_scale) {
  const auto n = static_cast<double>(points.size());
  bool distinct = false;
  for (const Point& p : points) {
    if (p.x != points.front().x) {
      distinct = true;
      break;
    }
  }
  if (!distinct) throw Error("degenerate abscissa: need two distinct im values");

  // Two-pass centred moments.
  long double mx = 0, my = 0;
  for (const Point& p : points) {
    mx += p.x;
    my += p.y;
  }
  mx /= n;
  my /= n;
  long double sxx = 0, sxy = 0, syy = 0;
  for (const Point& p : points) {
    const long double dx = p.x - mx;
    const long double dy = p.y - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  LinearFit fit;
  const long double slope = sxy / sxx;
  const long double intercept = my - slope * mx;
  long double ssr = 0;
  for (const Point& p : points) {
    const long double r = p.y - (slope * p.x + intercept);
    ssr += r * r;
  }
  fit.slope = static_cast<double>(slope);
  fit.intercept = static_cast<double>(intercept);
  fit.rho = static_cast<double>(std::sqrt(ssr / n)) / full_scale;
  if (syy == 0) {
    fit.r_squared = 1.0;
  } else {
    const long double r2 = 1.0L - ssr / syy;
    fit.r_squared = static_cast<double>(std::clamp(r2, 0.0L, 1.0L));
  }
  return fit;
}

LinearFit fit_linear(std::span<const DeviationSample> samples, int width) {
  std::vector<Point> points;
  points.reserve(samples.size());
  for (const auto& s : samples) {
    points.push_back({static_cast<double>(s.im), static_cast<double>(s.re)});
  }
  return fit_linear(points, static_cast<double>(full_scale(width)));
}

std::vector<double> default_epsilon_grid() {
  std::vector<double> grid;
  for (int k = 0; k <= 10; ++k) grid.push_back(k / 20.0);
  return grid;
}

SweepPoint summarize(double epsilon, std::vector<DeviationSample> samples, int width,
                     bool keep_samples) {
  SweepPoint pt;
  pt.epsilon = epsilon;
  const IterationStats stats = iteration_stats(samples);
  pt.trials = stats.trials;
  pt.accepted = stats.accepted;
  pt.mean_iterations = stats.mean_iterations;
  pt.median_iterations = stats.median_iterations;
  pt.censored_fraction = stats.censored_fraction;

  std::vector<Point> points;
  for (const auto& s : samples) {
    if (s.accepted) points.push_back({static_cast<double>(s.im), static_cast<double>(s.re)});
  }
  try {
    pt.fit = fit_linear(points, static_cast<double>(full_scale(width)));
  } catch (const Error&) {
    pt.fit.reset();
  }
  if (keep_samples) pt.samples = std::move(samples);
  return pt;
}

SweepResult run_sweep(const ExperimentConfig& base, std::span<const double> grid,
                      bool keep_samples) {
  SweepResult out;
  out.width = base.width();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i > 0 && !(grid[i] > grid[i - 1])) throw Error("epsilon grid must be strictly increasing");
    ExperimentConfig cfg = base;
    cfg.epsilon = grid[i];
    out.points.push_back(summarize(grid[i], run_experiment(cfg), out.width, keep_samples));
  }
  return out;
}

TransitionEstimate detect_transition(const SweepResult& sweep, double tau,
                                     std::size_t min_samples) {
  if (!(tau > 0.0)) throw Error("tau must be positive");
  TransitionEstimate est{std::nullopt, tau, min_samples};
  for (const SweepPoint& p : sweep.points) {
    if (p.accepted >= min_samples && p.fit && p.fit->rho > tau) {
      est.epsilon_star = p.epsilon;
      break;
    }
  }
  return est;
}

double hamming_ball_volume(int width, double epsilon) {
  const int radius = std::min(max_hamming(epsilon, width), width);
  double v = 0.0;
  for (int i = 0; i <= radius; ++i) v += static_cast<double>(binomial(width, i));
  return v;
}

double analytic_target_search_mean(int width, double epsilon) {
  return std::ldexp(1.0, width) / hamming_ball_volume(width, epsilon);
}

ScalingFit fit_iteration_scaling(const SweepResult& sweep) {
  std::vector<Point> points;
  std::vector<double> means;
  for (const SweepPoint& p : sweep.points) {
    if (!p.reliable() || !std::isfinite(p.mean_iterations)) continue;
    points.push_back({std::log(hamming_ball_volume(sweep.width, p.epsilon)), std::log(p.mean_iterations)});
    means.push_back(p.mean_iterations);
  }
  if (points.size() < 3) {
    throw Error("underdetermined: iteration scaling needs at least 3 reliable epsilon points, got " +
                std::to_string(points.size()));
  }
  ScalingFit out;
  out.points = points.size();
  for (std::size_t i = 1; i < means.size(); ++i) {
    if (!(means[i] < means[i - 1])) out.monotone = false;
  }
  // Scale 1 makes rho the plain RMS residual in log units.
  const LinearFit f = fit_linear(points, 1.0);
  out.rate = f.slope;
  out.prefactor = std::exp(f.intercept);
  out.r_squared = f.r_squared;
  out.rms_residual = f.rho;
  return out;
}

}  // namespace faultgan
