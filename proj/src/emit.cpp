#include "faultgan/emit.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "faultgan/error.hpp"
#include "faultgan/faults.hpp"
#include "json.hpp"

namespace faultgan {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::size_t write_text_file(const fs::path& path, std::string_view bytes) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.close();
  if (!out) throw Error("write failed for " + path.string());
  return bytes.size();
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto at = line.find(sep, start);
    out.push_back(line.substr(start, at - start));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return out;
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  for (auto l : split(text, '\n')) {
    if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
    if (!l.empty()) out.push_back(l);
  }
  return out;
}

template <class T>
T parse_number(std::string_view tok, std::size_t line, const char* field) {
  T v{};
  const auto* end = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(std::string("csv: bad ") + field + " `" + std::string(tok) + "` at line " +
                         std::to_string(line),
                     line);
  }
  return v;
}

void check_label(std::string_view label) {
  if (label.find_first_of(",\"\r\n") != std::string_view::npos) {
    throw Error("label `" + std::string(label) + "` may not contain commas, quotes or line breaks");
  }
}

constexpr std::string_view kSamplesHeader = "trial,epsilon,re,im,iterations,accepted,label";
constexpr std::string_view kSweepHeader =
    "width,epsilon,trials,accepted,censored_fraction,mean_iterations,median_iterations,slope,"
    "intercept,r_squared,rho,reliable";

}  // namespace

std::string format_samples_csv(std::span<const DeviationSample> samples) {
  std::string out(kSamplesHeader);
  out += '\n';
  for (const auto& s : samples) {
    check_label(s.label);
    out += std::to_string(s.trial);
    out += ',';
    out += format_double(s.epsilon);
    out += ',';
    out += std::to_string(s.re);
    out += ',';
    out += std::to_string(s.im);
    out += ',';
    out += std::to_string(s.iterations);
    out += s.accepted ? ",1," : ",0,";
    out += s.label;
    out += '\n';
  }
  return out;
}

std::size_t write_samples_csv(std::span<const DeviationSample> samples, const fs::path& destination) {
  return write_text_file(destination, format_samples_csv(samples));
}

std::vector<DeviationSample> parse_samples_csv(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.empty() || lines[0] != kSamplesHeader) throw ParseError("csv: missing samples header", 1);
  std::vector<DeviationSample> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line = i + 1;
    const auto f = split(lines[i], ',');
    if (f.size() != 7) throw ParseError("csv: expected 7 fields at line " + std::to_string(line), line);
    DeviationSample s;
    s.trial = parse_number<std::size_t>(f[0], line, "trial");
    s.epsilon = parse_number<double>(f[1], line, "epsilon");
    s.re = parse_number<std::uint64_t>(f[2], line, "re");
    s.im = parse_number<std::uint64_t>(f[3], line, "im");
    s.iterations = parse_number<std::uint64_t>(f[4], line, "iterations");
    if (f[5] != "0" && f[5] != "1") throw ParseError("csv: bad accepted flag at line " + std::to_string(line), line);
    s.accepted = f[5] == "1";
    s.label = std::string(f[6]);
    out.push_back(std::move(s));
  }
  return out;
}

ScatterGeometry scatter_geometry(int canvas_width, int canvas_height) {
  if (canvas_width < 64 || canvas_height < 64) throw Error("canvas must be at least 64x64 pixels");
  return {canvas_width, canvas_height, std::max(8, std::min(canvas_width, canvas_height) / 16)};
}

PixelPos ScatterGeometry::place(double fx, double fy) const noexcept {
  const int w = canvas_width - 2 * margin;
  const int h = canvas_height - 2 * margin;
  return {margin + static_cast<int>(std::lround(fx * w)),
          canvas_height - margin - static_cast<int>(std::lround(fy * h))};
}

std::string render_scatter(std::span<const DeviationSample> samples, int width, int canvas_width,
                           int canvas_height) {
  const ScatterGeometry g = scatter_geometry(canvas_width, canvas_height);
  const double scale = static_cast<double>(full_scale(width));
  const PixelPos o = g.origin();
  const PixelPos c = g.corner();
  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << canvas_width << "\" height=\""
      << canvas_height << "\" viewBox=\"0 0 " << canvas_width << ' ' << canvas_height << "\">\n"
      << "<rect width=\"" << canvas_width << "\" height=\"" << canvas_height << "\" fill=\"white\"/>\n"
      << "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n"
      << "<line x1=\"" << o.x << "\" y1=\"" << o.y << "\" x2=\"" << c.x << "\" y2=\"" << o.y << "\"/>\n"
      << "<line x1=\"" << o.x << "\" y1=\"" << o.y << "\" x2=\"" << o.x << "\" y2=\"" << c.y << "\"/>\n"
      << "<line class=\"diagonal\" x1=\"" << o.x << "\" y1=\"" << o.y << "\" x2=\"" << c.x
      << "\" y2=\"" << c.y << "\" stroke-dasharray=\"4 3\"/>\n"
      << "</g>\n"
      << "<g font-family=\"monospace\" font-size=\"" << std::max(6, g.margin / 2) << "\" fill=\"black\">\n"
      << "<text x=\"" << c.x << "\" y=\"" << canvas_height - 2 << "\" text-anchor=\"end\">im "
      << full_scale(width) << "</text>\n"
      << "<text x=\"2\" y=\"" << c.y << "\">re</text>\n"
      << "</g>\n"
      << "<g fill=\"black\">\n";
  for (const auto& s : samples) {
    if (!s.accepted) continue;
    const PixelPos p = g.place(static_cast<double>(s.im) / scale, static_cast<double>(s.re) / scale);
    svg << "<circle cx=\"" << p.x << "\" cy=\"" << p.y << "\" r=\"1\"/>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

std::uint64_t Histogram2D::total() const noexcept {
  std::uint64_t t = 0;
  for (auto c : counts) t += c;
  return t;
}

std::uint64_t Histogram2D::max() const noexcept {
  return counts.empty() ? 0 : *std::max_element(counts.begin(), counts.end());
}

int histogram_bin(std::uint64_t encoded, int width, int bins) {
  // Packed value / 2^N is exact in long double for every N used in practice.
  const long double frac = std::ldexp(static_cast<long double>(encoded >> 1), -width);
  const auto b = static_cast<int>(std::floor(frac * bins));
  return std::clamp(b, 0, bins - 1);
}

Histogram2D histogram(std::span<const DeviationSample> samples, int width, int bins) {
  if (bins < 1) throw Error("histogram needs at least one bin");
  Histogram2D h;
  h.bins = bins;
  h.counts.assign(static_cast<std::size_t>(bins) * static_cast<std::size_t>(bins), 0);
  for (const auto& s : samples) {
    if (!s.accepted) continue;
    const int row = bins - 1 - histogram_bin(s.re, width, bins);
    const int col = histogram_bin(s.im, width, bins);
    h.counts[static_cast<std::size_t>(row) * static_cast<std::size_t>(bins) + static_cast<std::size_t>(col)]++;
  }
  return h;
}

std::string format_pgm(const Histogram2D& h, std::uint64_t norm) {
  std::ostringstream out;
  out << "P2\n" << h.bins << ' ' << h.bins << "\n255\n";
  for (int r = 0; r < h.bins; ++r) {
    std::size_t line_len = 0;
    for (int c = 0; c < h.bins; ++c) {
      const std::uint64_t count = h.at(r, c);
      std::uint64_t v = 0;
      if (count > 0 && norm > 0) {
        const long double scaled = 255.0L * static_cast<long double>(count) / static_cast<long double>(norm);
        v = std::clamp<std::uint64_t>(static_cast<std::uint64_t>(std::llround(scaled)), 1, 255);
      }
      const std::string tok = std::to_string(v);
      // Plain PGM lines should stay under 70 characters.
      if (line_len > 0 && line_len + 1 + tok.size() > 70) {
        out << '\n';
        line_len = 0;
      } else if (line_len > 0) {
        out << ' ';
        ++line_len;
      }
      out << tok;
      line_len += tok.size();
    }
    out << '\n';
  }
  return out.str();
}

std::string format_manifest(const DatasetManifest& m) {
  ordered_json j;
  j["version"] = m.version;
  j["bins"] = m.bins;
  j["entries"] = ordered_json::array();
  for (const auto& e : m.entries) {
    ordered_json je;
    je["file"] = e.file;
    je["label"] = e.label;
    je["faults"] = e.faults;
    je["width"] = e.width;
    je["epsilon"] = e.epsilon;
    je["gates"] = e.gates;
    je["samples"] = e.samples;
    je["seed"] = e.seed;
    je["version"] = m.version;
    j["entries"].push_back(std::move(je));
  }
  return j.dump(2) + "\n";
}

namespace {

std::string file_stem(std::string_view label) {
  std::string out;
  for (char c : label) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '-' || c == '_' || c == '.';
    out.push_back(ok ? c : '_');
  }
  if (out.empty() || out[0] == '.') out.insert(out.begin(), 'r');
  return out;
}

}  // namespace

DatasetManifest emit_dataset(std::span<const DatasetRun> runs, const fs::path& out_dir,
                             const DatasetOptions& options) {
  if (runs.empty()) throw Error("dataset needs at least one run");
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw Error("cannot create " + out_dir.string() + ": " + ec.message());

  DatasetManifest manifest;
  manifest.bins = options.bins;
  std::vector<Histogram2D> images;
  std::set<std::string> used;
  for (const auto& run : runs) {
    check_label(run.label);
    const auto samples = run_experiment(run.config);
    images.push_back(histogram(samples, run.config.width(), options.bins));

    const std::string base = file_stem(run.label);
    std::string stem = base;
    for (int n = 2; used.count(stem) != 0; ++n) stem = base + "-" + std::to_string(n);
    used.insert(stem);

    ManifestEntry e;
    e.file = stem + ".pgm";
    e.label = run.label;
    e.faults = format_faults(run.config.faults);
    e.width = run.config.width();
    e.epsilon = run.config.epsilon;
    e.gates = run.config.ideal.gate_set();
    e.samples = images.back().total();
    e.seed = run.config.seed;
    manifest.entries.push_back(std::move(e));
  }

  std::uint64_t global = 0;
  for (const auto& h : images) global = std::max(global, h.max());
  for (std::size_t i = 0; i < images.size(); ++i) {
    const std::uint64_t norm = options.global_normalization ? global : images[i].max();
    write_text_file(out_dir / manifest.entries[i].file, format_pgm(images[i], norm));
  }
  write_text_file(out_dir / "manifest.json", format_manifest(manifest));
  return manifest;
}

std::string format_sweep_csv(const SweepResult& sweep) {
  std::string out(kSweepHeader);
  out += '\n';
  for (const auto& p : sweep.points) {
    std::ostringstream row;
    row << sweep.width << ',' << format_double(p.epsilon) << ',' << p.trials << ',' << p.accepted << ','
        << format_double(p.censored_fraction) << ',' << format_double(p.mean_iterations) << ','
        << format_double(p.median_iterations) << ',';
    if (p.fit) {
      row << format_double(p.fit->slope) << ',' << format_double(p.fit->intercept) << ','
          << format_double(p.fit->r_squared) << ',' << format_double(p.fit->rho);
    } else {
      row << ",,,";
    }
    row << ',' << (p.reliable() ? 1 : 0) << '\n';
    out += row.str();
  }
  return out;
}

SweepResult parse_sweep_csv(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.empty() || lines[0] != kSweepHeader) throw ParseError("csv: missing sweep header", 1);
  SweepResult sweep;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line = i + 1;
    const auto f = split(lines[i], ',');
    if (f.size() != 12) throw ParseError("csv: expected 12 fields at line " + std::to_string(line), line);
    const int width = parse_number<int>(f[0], line, "width");
    if (width < 1 || width > kMaxWidth) throw ParseError("csv: width out of range at line " + std::to_string(line), line);
    if (sweep.width != 0 && width != sweep.width) throw ParseError("csv: mixed widths at line " + std::to_string(line), line);
    sweep.width = width;
    SweepPoint p;
    p.epsilon = parse_number<double>(f[1], line, "epsilon");
    if (!sweep.points.empty() && !(p.epsilon > sweep.points.back().epsilon)) {
      throw ParseError("csv: epsilon not strictly increasing at line " + std::to_string(line), line);
    }
    p.trials = parse_number<std::size_t>(f[2], line, "trials");
    p.accepted = parse_number<std::size_t>(f[3], line, "accepted");
    p.censored_fraction = parse_number<double>(f[4], line, "censored_fraction");
    p.mean_iterations = parse_number<double>(f[5], line, "mean_iterations");
    p.median_iterations = parse_number<double>(f[6], line, "median_iterations");
    if (!f[7].empty()) {
      LinearFit fit;
      fit.slope = parse_number<double>(f[7], line, "slope");
      fit.intercept = parse_number<double>(f[8], line, "intercept");
      fit.r_squared = parse_number<double>(f[9], line, "r_squared");
      fit.rho = parse_number<double>(f[10], line, "rho");
      p.fit = fit;
    }
    sweep.points.push_back(std::move(p));
  }
  if (sweep.points.empty()) throw ParseError("csv: sweep has no rows", 1);
  return sweep;
}

std::string format_transition_json(const TransitionEstimate& t, const ScalingFit* scaling) {
  ordered_json j;
  j["epsilon_star"] = t.epsilon_star ? ordered_json(*t.epsilon_star) : ordered_json(nullptr);
  j["tau"] = t.tau;
  j["min_samples"] = t.min_samples;
  if (scaling != nullptr) {
    j["scaling"] = {{"rate", scaling->rate},
                    {"prefactor", scaling->prefactor},
                    {"r_squared", scaling->r_squared},
                    {"rms_residual", scaling->rms_residual},
                    {"points", scaling->points},
                    {"monotone", scaling->monotone}};
  } else {
    j["scaling"] = nullptr;
  }
  return j.dump(2) + "\n";
}

std::string format_spectrum_json(const EnergySpectrum& s, const CompletenessReport* completeness) {
  ordered_json j;
  j["width"] = s.width();
  j["ensemble_size"] = s.ensemble_size();
  j["energy_floor"] = -static_cast<double>(s.ensemble_size()) / (2.0 * s.width());
  j["manifolds"] = ordered_json::array();
  for (const auto& [k, m] : s.manifolds()) {
    j["manifolds"].push_back({{"agreement_count", k},
                              {"relative_uncertainty", 1.0 - static_cast<double>(k) / s.width()},
                              {"degeneracy", m.degeneracy()},
                              {"min_energy", m.min_energy},
                              {"max_energy", m.max_energy},
                              {"mean_energy", m.mean_energy}});
  }
  if (completeness != nullptr) {
    ordered_json c;
    c["complete"] = completeness->complete();
    c["manifolds"] = ordered_json::array();
    for (const auto& m : completeness->manifolds) {
      c["manifolds"].push_back({{"agreement_count", m.agreement_count},
                                {"observed", m.observed},
                                {"expected", m.expected},
                                {"saturated", m.saturated()}});
    }
    j["completeness"] = std::move(c);
  } else {
    j["completeness"] = nullptr;
  }
  return j.dump(2) + "\n";
}

std::string format_energies_csv(const EnergySpectrum& s) {
  std::ostringstream out;
  out << "mu,i,j,count,energy\n";
  for (std::size_t mu = 0; mu < s.ensemble_size(); ++mu) {
    for (int i = 1; i <= s.width(); ++i) {
      for (int j = 1; j <= s.width(); ++j) {
        out << mu << ',' << i << ',' << j << ',' << s.count(mu, i, j) << ','
            << format_double(s.energy(mu, i, j)) << '\n';
      }
    }
  }
  return out.str();
}

}  // namespace faultgan
