#pragma once

#include <complex>
#include <cstddef>
#include <string>

#include <Eigen/Core>

#include "ncq/grid.hpp"
#include "ncq/states.hpp"

namespace ncq {

enum class CharFuncSource { Analytic, Sampled };

/// Φ(β) tabulated on a symmetric β lattice together with a per-node standard
/// deviation. Node (i, j) holds β = grid.point(i, j).
///
/// Invariants: the centre node is exactly 1 with sigma 0, and the grid is
/// Hermitian bit-for-bit: values(mirror(i), mirror(j)) == conj(values(i, j)).
struct CharFuncGrid {
  Grid grid;
  Eigen::ArrayXXcd values;
  Eigen::ArrayXXd sigma;
  Eigen::ArrayXXi n_samples;
  CharFuncSource source = CharFuncSource::Analytic;
  /// Empty for unfiltered grids, otherwise the filter that was applied.
  std::string filter_tag;

  /// Largest |Φ| over the outermost ring of nodes.
  double boundary_max() const;
};

/// Which phase's samples feed the estimate at β, and with which sign.
///
/// For arg β outside [0, π) the estimate is taken at −β and conjugated;
/// the required phase π/2 − arg β is folded into [0, π) with
/// x[φ − π] = −x[φ] and then snapped to the nearest recorded phase.
/// `sign` is −1 when an odd number of these flips apply.
struct PhaseSelection {
  std::size_t phase_index = 0;
  int sign = 1;
  double radius = 0.0;
  /// Angular distance between the required and the recorded phase.
  double phase_error = 0.0;
};

PhaseSelection select_phase(const QuadratureDataset& dataset, PhasePlanePoint beta);

/// Direct-sampling estimate Φ(β) = (1/N) Σ_j e^{i|β| x_j[π/2 − arg β]} e^{|β|²/2}.
std::complex<double> estimate_charfunc(const QuadratureDataset& dataset,
                                       PhasePlanePoint beta);

/// Universal bound e^{|β|²/2} / √N on the standard deviation of the estimate.
double stddev_bound(std::size_t n, PhasePlanePoint beta);

/// Standard error of the estimate from the spread of its summands,
/// e^{|β|²/2} √(mean |z_j − z̄|² / N) with z_j = e^{i|β| x_j}.
double empirical_std(const QuadratureDataset& dataset, PhasePlanePoint beta);

/// Evaluates the estimator (values and empirical sigma) on every node.
///
/// Each phase's empirical characteristic function k ↦ (1/N) Σ_j e^{ikx_j} is
/// tabulated with its exact derivative on a uniform k mesh and evaluated at
/// the node radii by cubic Hermite interpolation. The mesh is chosen so that
/// the interpolation error is below `kGridInterpolationTolerance` before the
/// e^{|β|²/2} factor.
CharFuncGrid estimate_on_grid(const QuadratureDataset& dataset, const Grid& grid);

inline constexpr double kGridInterpolationTolerance = 1e-9;

/// Analytic passthrough: values = charfunc_analytic, sigma = 0.
CharFuncGrid analytic_on_grid(const MixedState& state, const Grid& grid);

/// Same as estimate_on_grid but every node uses the pointwise estimator.
/// Quadratic cost; meant for small grids and for cross-checking.
CharFuncGrid estimate_on_grid_exact(const QuadratureDataset& dataset, const Grid& grid);

}  // namespace ncq
