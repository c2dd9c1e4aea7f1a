#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "faultgan/analysis.hpp"
#include "faultgan/hopfield.hpp"
#include "faultgan/sampler.hpp"

namespace faultgan {

inline constexpr int kManifestVersion = 1;
inline constexpr int kDefaultBins = 64;

// Writes bytes to path, creating parent directories. Throws Error naming the path.
std::size_t write_text_file(const std::filesystem::path& path, std::string_view bytes);
std::string read_text_file(const std::filesystem::path& path);

// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

// Header `trial,epsilon,re,im,iterations,accepted,label`, one row per sample.
// Labels may not contain commas, quotes or line breaks.
std::string format_samples_csv(std::span<const DeviationSample> samples);
std::size_t write_samples_csv(std::span<const DeviationSample> samples,
                              const std::filesystem::path& destination);
std::vector<DeviationSample> parse_samples_csv(std::string_view text);

// Monochrome SVG with (im, re) axes over [0, 2^{N+1}-2], the identity diagonal
// and one mark per accepted sample. Canvas must be at least 64x64.
std::string render_scatter(std::span<const DeviationSample> samples, int width, int canvas_width = 512,
                           int canvas_height = 512);

// Mark position for an (im, re) pair on the given canvas; exposed for tests.
struct PixelPos {
  int x;
  int y;
};
struct ScatterGeometry {
  int canvas_width;
  int canvas_height;
  int margin;
  PixelPos origin() const noexcept { return {margin, canvas_height - margin}; }
  PixelPos corner() const noexcept { return {canvas_width - margin, margin}; }
  PixelPos place(double fx, double fy) const noexcept;
};
ScatterGeometry scatter_geometry(int canvas_width, int canvas_height);

// bins x bins counts of accepted samples; row 0 is the highest re band,
// column 0 the lowest im band.
struct Histogram2D {
  int bins = kDefaultBins;
  std::vector<std::uint64_t> counts;  // row-major

  std::uint64_t at(int row, int col) const {
    return counts[static_cast<std::size_t>(row) * static_cast<std::size_t>(bins) +
                  static_cast<std::size_t>(col)];
  }
  std::uint64_t total() const noexcept;
  std::uint64_t max() const noexcept;
};

int histogram_bin(std::uint64_t encoded, int width, int bins);
Histogram2D histogram(std::span<const DeviationSample> samples, int width, int bins = kDefaultBins);

// Plain "P2" grayscale raster, maximum value 255. Counts are scaled by
// `norm` (the image max unless a global max is supplied); any nonzero count
// maps to at least 1.
std::string format_pgm(const Histogram2D& h, std::uint64_t norm);

struct DatasetRun {
  std::string label;
  ExperimentConfig config;
};

struct ManifestEntry {
  std::string file;
  std::string label;
  std::string faults;
  int width = 0;
  double epsilon = 0.0;
  std::vector<std::string> gates;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

struct DatasetManifest {
  int version = kManifestVersion;
  int bins = kDefaultBins;
  std::vector<ManifestEntry> entries;
};

std::string format_manifest(const DatasetManifest& m);

struct DatasetOptions {
  int bins = kDefaultBins;
  bool global_normalization = false;
};

// One raster per run (duplicate labels get -2, -3, ... suffixes) plus
// manifest.json, written only after every image succeeded.
DatasetManifest emit_dataset(std::span<const DatasetRun> runs, const std::filesystem::path& out_dir,
                             const DatasetOptions& options = {});

// Sweep table: one row per epsilon; the width column repeats N on every row.
std::string format_sweep_csv(const SweepResult& sweep);
SweepResult parse_sweep_csv(std::string_view text);

std::string format_transition_json(const TransitionEstimate& t, const ScalingFit* scaling);

std::string format_spectrum_json(const EnergySpectrum& s, const CompletenessReport* completeness);
std::string format_energies_csv(const EnergySpectrum& s);

}  // namespace faultgan
