#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include "ncq/charfunc.hpp"

namespace ncq {

enum class BochnerKind { Modulus, Determinant };
std::string to_string(BochnerKind kind);

struct BochnerVerdict {
  BochnerKind kind = BochnerKind::Modulus;
  /// Determinant: β_1..β_N. Modulus: the single node that decided the test.
  std::vector<PhasePlanePoint> points;
  /// max |Φ| (modulus) or D_N (determinant).
  double statistic = 0.0;
  /// Propagated error of the statistic; 0 for analytic sources.
  double sigma = 0.0;
  /// Distance past the classical threshold in units of sigma (+inf if sigma = 0).
  double significance = 0.0;
  /// "nonclassical" or "inconclusive". Neither test can certify classicality.
  std::string verdict = "inconclusive";
  /// Determinant tests on sampled sources: spread of D_N over resampled matrices.
  std::optional<double> resampled_sigma;
  std::string note;
};

std::string to_json(const BochnerVerdict& verdict);

/// Disc |β| ≤ radius, or the segment of the line through 0 at `axis_angle`.
struct ScanRegion {
  double radius = 3.0;
  std::optional<double> axis_angle;
  /// Lattice spacing used for analytic sources.
  double step = 0.01;
};

/// |Φ(β)| ≤ 1 for every classical state. Analytic sources violate it when
/// max |Φ| > 1 + 1e-12; sampled grids need |Φ| − 1 ≥ k σ at some node, and the
/// node with the largest (|Φ| − 1)/σ is reported.
BochnerVerdict modulus_test(const MixedState& state, const ScanRegion& region);
BochnerVerdict modulus_test(const CharFuncGrid& cf, const ScanRegion& region, double k = 5.0);

/// Value and standard deviation of Φ at one point.
using CharFuncSampler = std::function<std::pair<std::complex<double>, double>(PhasePlanePoint)>;

struct DeterminantOptions {
  double k = 5.0;
  std::size_t resamples = 100;
  std::uint64_t seed = 0;
};

/// D_N = det(Φ(β_i − β_j)), 1 ≤ N ≤ 8. D_N < 0 certifies nonclassicality;
/// with nonzero entry errors it must lie k σ below 0.
BochnerVerdict determinant_test(const CharFuncSampler& source,
                                std::span<const PhasePlanePoint> points,
                                const DeterminantOptions& options = {});
BochnerVerdict determinant_test(const MixedState& state, std::span<const PhasePlanePoint> points,
                                const DeterminantOptions& options = {});
/// Bilinear interpolation of values and sigma; differences must lie on the grid.
BochnerVerdict determinant_test(const CharFuncGrid& cf, std::span<const PhasePlanePoint> points,
                                const DeterminantOptions& options = {});
/// Pointwise estimator with its empirical error.
BochnerVerdict determinant_test(const QuadratureDataset& dataset,
                                std::span<const PhasePlanePoint> points,
                                const DeterminantOptions& options = {});

/// Value and σ of a grid at an off-node point by bilinear interpolation.
std::pair<std::complex<double>, double> interpolate(const CharFuncGrid& cf, PhasePlanePoint beta);

/// K_ij = f(β_i − β_j).
template <typename Scalar, typename F>
Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic> kernel_matrix(
    const F& f, std::span<const PhasePoint<Scalar>> points) {
  const auto n = static_cast<Eigen::Index>(points.size());
  Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic> out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      out(i, j) = std::complex<Scalar>(f(points[static_cast<std::size_t>(i)] -
                                         points[static_cast<std::size_t>(j)]));
  return out;
}

/// Smallest eigenvalue of a Hermitian matrix.
template <typename Derived>
typename Derived::RealScalar min_eigenvalue(const Eigen::MatrixBase<Derived>& m) {
  using Plain = typename Derived::PlainObject;
  Eigen::SelfAdjointEigenSolver<Plain> solver(m.derived(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

/// Determinant of a Hermitian matrix as the product of its eigenvalues.
template <typename Derived>
typename Derived::RealScalar hermitian_determinant(const Eigen::MatrixBase<Derived>& m) {
  using Plain = typename Derived::PlainObject;
  Eigen::SelfAdjointEigenSolver<Plain> solver(m.derived(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().prod();
}

}  // namespace ncq
