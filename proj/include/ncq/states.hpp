#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include "ncq/grid.hpp"

namespace ncq {

struct Coherent {
  std::complex<double> amplitude;
};

struct Thermal {
  double mean_photons = 0.0;
};

/// Squeezed vacuum with quadrature variances in vacuum units (vacuum = 1).
struct SqueezedVacuum {
  double var_x = 1.0;
  double var_p = 1.0;
};

/// Single-photon Fock state.
struct FockOne {};

using AnalyticState = std::variant<Coherent, Thermal, SqueezedVacuum, FockOne>;

template <typename S>
concept is_state_alternative =
    std::is_same_v<S, Coherent> || std::is_same_v<S, Thermal> ||
    std::is_same_v<S, SqueezedVacuum> || std::is_same_v<S, FockOne>;

/// Convex or affine combination of analytic states. Characteristic functions
/// combine linearly, so a mixture of coherent states is classical.
struct MixedState {
  std::vector<double> weights;
  std::vector<AnalyticState> components;

  MixedState() = default;
  MixedState(const AnalyticState& s) : weights{1.0}, components{s} {}
  template <typename S>
    requires is_state_alternative<S>
  MixedState(const S& s) : weights{1.0}, components{AnalyticState(s)} {}
  MixedState(std::vector<double> w, std::vector<AnalyticState> c);

  bool is_pure_component() const { return components.size() == 1; }
};

void validate(const AnalyticState& state);
void validate(const MixedState& state);
template <typename S>
  requires is_state_alternative<S>
void validate(const S& state) {
  validate(AnalyticState(state));
}

bool is_gaussian(const AnalyticState& state);

/// Short textual form, e.g. "squeezed:0.2,5" or "coherent:1,0+coherent:-1,0".
/// parse_state() accepts what describe() produces.
std::string describe(const AnalyticState& state);
std::string describe(const MixedState& state);
template <typename S>
  requires is_state_alternative<S>
std::string describe(const S& state) {
  return describe(AnalyticState(state));
}
MixedState parse_state(std::string_view text);

/// Normally ordered characteristic function Φ(β) = ∫ P(α) e^{βα* − β*α} d²α.
std::complex<double> charfunc_analytic(const AnalyticState& state,
                                       PhasePlanePoint beta);
std::complex<double> charfunc_analytic(const MixedState& state,
                                       PhasePlanePoint beta);
template <typename S>
  requires is_state_alternative<S>
std::complex<double> charfunc_analytic(const S& state, PhasePlanePoint beta) {
  return charfunc_analytic(AnalyticState(state), beta);
}

/// Variance of the quadrature x[φ]; vacuum variance is 1.
double quadrature_variance(const AnalyticState& state, double phase);

/// Mean of x[φ]; only coherent states have a non-zero mean, 2 Re(α₀ e^{iφ}).
double quadrature_mean(const AnalyticState& state, double phase);

/// Single-photon quadrature density x² e^{−x²/2} / √(2π) and its CDF.
double fock_one_density(double x);
double fock_one_cdf(double x);

enum class DataSource { Synthetic, File };

/// Homodyne samples grouped by local-oscillator phase. Phases are sorted,
/// distinct and in [0, π); each phase carries at least one sample.
struct QuadratureDataset {
  std::vector<double> phases;
  std::vector<std::vector<double>> samples;
  std::optional<std::uint64_t> seed;
  DataSource source = DataSource::Synthetic;
  std::string description;

  void validate() const;
  std::size_t total_samples() const;
  std::size_t min_samples_per_phase() const;

  friend bool operator==(const QuadratureDataset&,
                         const QuadratureDataset&) = default;
};

/// `count` equally spaced phases k π / count.
std::vector<double> default_phases(std::size_t count = 12);

/// Emulated balanced homodyne detection. Each phase draws from its own
/// stream derived from (seed, phase index), so output is bit-reproducible.
QuadratureDataset sample_quadratures(const AnalyticState& state,
                                     std::span<const double> phases,
                                     std::size_t n_per_phase,
                                     std::uint64_t seed);

/// CSV with header `phase,x` plus an optional JSON sidecar (same stem,
/// `.json`) carrying seed, state description and n_per_phase.
void save_dataset(const QuadratureDataset& dataset, const std::string& path);
QuadratureDataset load_dataset(const std::string& path);
std::string sidecar_path(const std::string& path);

}  // namespace ncq
