#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ncq/charfunc.hpp"
#include "ncq/filters.hpp"

namespace ncq {

enum class ErrorMethod { IndependentPoint, Bootstrap };

std::string to_string(ErrorMethod method);
ErrorMethod error_method_from_string(const std::string& name);

struct QuasiprobMeta {
  std::string filter;
  double width = 0.0;
  Grid beta_grid;
  std::string convention;
  std::string error_method;
  std::string source;
};

/// P_Ω on an α lattice with a per-node error. Row index runs along Re α,
/// column index along Im α.
struct QuasiprobMap {
  Grid grid;
  Eigen::ArrayXXd values;
  Eigen::ArrayXXd sigma;
  QuasiprobMeta meta;
  /// max |Im P| / max |Re P| of the discarded imaginary part.
  double imag_residue = 0.0;
};

/// Φ_Ω(β; w) = Φ(β) Ω_w(β); sigma scales by the same factor.
CharFuncGrid apply_filter(const CharFuncGrid& cf, const NCFilter& filter);

/// True when the filtered function still exceeds `threshold` on the grid
/// boundary, i.e. the β grid cuts off part of its support.
bool truncates_support(const CharFuncGrid& filtered, double threshold = 1e-6);

struct TransformOptions {
  bool allow_truncation = false;
  double tail_threshold = 1e-6;
  double imag_tolerance = 1e-8;
};

/// P_Ω(α) = π⁻² Σ_β Φ_Ω(β) e^{αβ* − α*β} (Δβ)² on every α node. The error
/// map is left at zero; see propagate_error.
QuasiprobMap fourier_to_quasiprob(const CharFuncGrid& filtered, const Grid& alpha,
                                  const TransformOptions& options = {});

struct ErrorPropagation {
  ErrorMethod method = ErrorMethod::IndependentPoint;
  /// Bootstrap only: the raw data and the filter that produced `filtered`.
  const QuadratureDataset* dataset = nullptr;
  const NCFilter* filter = nullptr;
  std::size_t resamples = 100;
  std::uint64_t seed = 0;
};

/// Statistical error of P_Ω on the α grid.
///
/// IndependentPoint treats nodes as uncorrelated:
/// σ²{P_Ω(α)} = π⁻⁴ Σ_k (Δβ)⁴ σ_k², the same for every α. Nodes estimated from
/// the same phase's samples are in fact correlated, so this understates the
/// spread seen by Bootstrap, which re-estimates the whole pipeline on
/// resampled data and reports the pointwise standard deviation.
Eigen::ArrayXXd propagate_error(const CharFuncGrid& filtered, const Grid& alpha,
                                const ErrorPropagation& how = {});

struct Significance {
  double min_value = 0.0;
  PhasePlanePoint location;
  double sigma = 0.0;
  /// |min| / σ(min); +inf when σ = 0 and min < 0.
  double ratio = 0.0;
  bool infinite = false;
  std::string verdict;
};

/// Most negative node (ties within 1e-12 go to the smallest |α|, then the
/// smallest arg α) and its significance. Negativities above −`floor` count
/// as none; "nonclassical" requires ratio ≥ k.
Significance significance(const QuasiprobMap& map, double k = 5.0, double floor = 1e-8);

/// Σ P (Δα)²; should be 1 within 0.01 when the grids hold the support.
double normalization_check(const QuasiprobMap& map);
inline bool normalization_ok(double sum, double tol = 0.01) { return std::abs(sum - 1.0) <= tol; }

struct CrossSection {
  double angle = 0.0;
  std::vector<double> t;
  std::vector<double> value;
  std::vector<double> imag;
  std::vector<double> sigma;
};

/// P_Ω(t e^{iθ}) evaluated directly from the filtered grid (no interpolation).
CrossSection quasiprob_cross_section(const CharFuncGrid& filtered, double angle,
                                     std::span<const double> t, double sigma = 0.0);

/// Φ_Ω(t e^{iθ}) for an analytic state.
CrossSection charfunc_cross_section(const MixedState& state, const NCFilter& filter,
                                    double angle, std::span<const double> t);

/// t = −range, −range + step, ..., range.
std::vector<double> symmetric_axis(double range, double step);

}  // namespace ncq
