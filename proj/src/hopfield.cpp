#include "faultgan/hopfield.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <string>

#include "faultgan/error.hpp"

namespace faultgan {

namespace {

void check_pair_index(std::span<const AgreementVector> ensemble, std::size_t mu, int i, int j) {
  if (mu >= ensemble.size()) throw Error("index: configuration " + std::to_string(mu) + " out of range");
  const int n = ensemble[mu].width();
  if (i < 1 || i > n || j < 1 || j > n) {
    throw Error("index: component pair (" + std::to_string(i) + ", " + std::to_string(j) +
                ") outside [1, " + std::to_string(n) + "]");
  }
}

}  // namespace

AgreementVector agreement_vector(const BitVector& simulated, const BitVector& expected) {
  if (simulated.width() != expected.width()) {
    throw Error("width mismatch: " + std::to_string(simulated.width()) + " vs " +
                std::to_string(expected.width()));
  }
  return {BitVector(simulated.width(), ~(simulated.packed() ^ expected.packed()))};
}

PairEnergy pair_energy_direct(std::span<const AgreementVector> ensemble, std::size_t mu, int i,
                              int j) {
  check_pair_index(ensemble, mu, i, j);
  std::int64_t sum = 0;
  const int xi_i = ensemble[mu].at(i) ? 1 : 0;
  for (const auto& nu : ensemble) {
    const int prod = xi_i * (nu.at(j) ? 1 : 0);
    sum += prod * prod;
  }
  return {sum, ensemble[mu].width()};
}

PairEnergy pair_energy(std::span<const AgreementVector> ensemble, std::size_t mu, int i, int j) {
  check_pair_index(ensemble, mu, i, j);
  if (!ensemble[mu].at(i)) return {0, ensemble[mu].width()};
  std::int64_t column = 0;
  for (const auto& nu : ensemble) column += nu.at(j) ? 1 : 0;
  return {column, ensemble[mu].width()};
}

std::int64_t EnergySpectrum::count(std::size_t mu, int i, int j) const {
  if (mu >= ensemble_size_ || i < 1 || i > width_ || j < 1 || j > width_) {
    throw Error("index: energy (" + std::to_string(mu) + ", " + std::to_string(i) + ", " +
                std::to_string(j) + ") out of range");
  }
  const auto n = static_cast<std::size_t>(width_);
  return counts_[(mu * n + static_cast<std::size_t>(i - 1)) * n + static_cast<std::size_t>(j - 1)];
}

double EnergySpectrum::energy(std::size_t mu, int i, int j) const {
  return PairEnergy{count(mu, i, j), width_}.value();
}

EnergySpectrum spectrum(std::span<const AgreementVector> ensemble) {
  if (ensemble.empty()) throw Error("empty ensemble");
  const int n = ensemble.front().width();
  for (const auto& a : ensemble) {
    if (a.width() != n) throw Error("width: mixed widths in ensemble");
  }
  const auto un = static_cast<std::size_t>(n);

  // Column sums sum_nu xi^nu_j are shared by every (mu, i).
  std::vector<std::int64_t> column(un, 0);
  for (const auto& a : ensemble) {
    for (int j = 1; j <= n; ++j) column[static_cast<std::size_t>(j - 1)] += a.at(j) ? 1 : 0;
  }

  EnergySpectrum s;
  s.width_ = n;
  s.ensemble_size_ = ensemble.size();
  s.counts_.assign(ensemble.size() * un * un, 0);
  for (std::size_t mu = 0; mu < ensemble.size(); ++mu) {
    double lo = 0.0, hi = 0.0, sum = 0.0;
    bool first = true;
    for (int i = 1; i <= n; ++i) {
      const bool on = ensemble[mu].at(i);
      for (int j = 1; j <= n; ++j) {
        const std::int64_t c = on ? column[static_cast<std::size_t>(j - 1)] : 0;
        s.counts_[(mu * un + static_cast<std::size_t>(i - 1)) * un + static_cast<std::size_t>(j - 1)] = c;
        const double e = PairEnergy{c, n}.value();
        lo = first ? e : std::min(lo, e);
        hi = first ? e : std::max(hi, e);
        sum += e;
        first = false;
      }
    }
    const int k = ensemble[mu].agreement_count();
    auto [it, inserted] = s.manifolds_.try_emplace(k);
    Manifold& m = it->second;
    if (inserted) {
      m.agreement_count = k;
      m.min_energy = lo;
      m.max_energy = hi;
    } else {
      m.min_energy = std::min(m.min_energy, lo);
      m.max_energy = std::max(m.max_energy, hi);
    }
    // Running sum; divided once all members are known.
    m.mean_energy += sum;
    m.members.push_back(mu);
  }
  for (auto& [k, m] : s.manifolds_) {
    m.mean_energy /= static_cast<double>(m.members.size()) * n * n;
  }
  return s;
}

bool CompletenessReport::complete() const noexcept {
  return std::all_of(manifolds.begin(), manifolds.end(),
                     [](const ManifoldCompleteness& m) { return m.saturated(); });
}

std::uint64_t binomial(int n, int k) noexcept {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

CompletenessReport completeness_check(int width, std::span<const AgreementVector> ensemble) {
  if (width < 1 || width > 16) throw Error("width: completeness check needs 1 <= N <= 16");
  std::set<std::uint64_t> seen;
  for (const auto& a : ensemble) {
    if (a.width() != width) throw Error("width: ensemble member has width " + std::to_string(a.width()));
    seen.insert(a.xi.packed());
  }
  CompletenessReport report;
  report.width = width;
  for (int k = 0; k <= width; ++k) report.manifolds.push_back({k, 0, binomial(width, k)});
  for (std::uint64_t p : seen) {
    report.manifolds[static_cast<std::size_t>(std::popcount(p))].observed++;
  }
  return report;
}

std::vector<AgreementVector> exhaustive_ensemble(int width) {
  if (width < 1 || width > 20) throw Error("width: exhaustive ensemble needs 1 <= N <= 20");
  std::vector<AgreementVector> out;
  out.reserve(std::size_t{1} << width);
  for (std::uint64_t p = 0; p < (std::uint64_t{1} << width); ++p) {
    out.push_back({BitVector(width, p)});
  }
  return out;
}

}  // namespace faultgan
