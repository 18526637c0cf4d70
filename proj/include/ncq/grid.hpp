#pragma once

#include <cmath>
#include <complex>
#include <string>

#include <Eigen/Core>

#include "ncq/errors.hpp"

namespace ncq {

/// A point β = β_r + iβ_i of the phase plane.
template <typename Scalar>
using PhasePoint = std::complex<Scalar>;

using PhasePlanePoint = PhasePoint<double>;

/// Symmetric Cartesian lattice [-range, range]^2 with spacing `step`.
///
/// Node (i, j) sits at (i - half) * step + i (j - half) * step, so the centre
/// node is exactly the origin and node (2 half - i, 2 half - j) is exactly the
/// negated point. Row index runs along the real axis, column index along the
/// imaginary axis.
template <typename Scalar>
class SquareGrid {
 public:
  SquareGrid() = default;

  SquareGrid(Scalar range, Scalar step) : range_(range), step_(step) {
    if (!(range > 0) || !(step > 0) || !std::isfinite(range) ||
        !std::isfinite(step))
      fail(ErrorKind::ParameterDomain,
           "grid range and step must be positive and finite");
    half_ = static_cast<Eigen::Index>(std::floor(range / step + Scalar(1e-9)));
    if (half_ < 1)
      fail(ErrorKind::ParameterDomain, "grid step exceeds grid range");
    if (half_ > 4000)
      fail(ErrorKind::ParameterDomain, "grid has too many nodes");
  }

  Scalar range() const { return range_; }
  Scalar step() const { return step_; }
  Eigen::Index half() const { return half_; }
  Eigen::Index size() const { return 2 * half_ + 1; }
  Eigen::Index center() const { return half_; }

  Scalar coord(Eigen::Index i) const {
    return static_cast<Scalar>(i - half_) * step_;
  }

  PhasePoint<Scalar> point(Eigen::Index i, Eigen::Index j) const {
    return {coord(i), coord(j)};
  }

  Eigen::Index mirror(Eigen::Index i) const { return 2 * half_ - i; }

  Eigen::Array<Scalar, Eigen::Dynamic, 1> axis() const {
    Eigen::Array<Scalar, Eigen::Dynamic, 1> out(size());
    for (Eigen::Index i = 0; i < size(); ++i) out(i) = coord(i);
    return out;
  }

  /// Largest |β| over all nodes (the corners).
  Scalar max_radius() const {
    return std::sqrt(Scalar(2)) * static_cast<Scalar>(half_) * step_;
  }

  bool contains(const PhasePoint<Scalar>& p, Scalar slack = Scalar(1e-12)) const {
    const Scalar edge = static_cast<Scalar>(half_) * step_ + slack;
    return std::abs(p.real()) <= edge && std::abs(p.imag()) <= edge;
  }

  bool operator==(const SquareGrid&) const = default;

 private:
  Scalar range_ = 1;
  Scalar step_ = 1;
  Eigen::Index half_ = 1;
};

using Grid = SquareGrid<double>;

}  // namespace ncq
