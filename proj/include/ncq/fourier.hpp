#pragma once

#include <complex>
#include <numbers>

#include <Eigen/Core>

#include "ncq/grid.hpp"

namespace ncq {

/// Tag recorded in output metadata for the transform convention below.
inline constexpr const char* kFourierConvention =
    "P(a) = pi^-2 sum_b Phi(b) exp(2i(a_i b_r - a_r b_i)) db^2";

namespace detail {

template <typename Scalar>
Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic> phase_matrix(
    const SquareGrid<Scalar>& alpha, const SquareGrid<Scalar>& beta, Scalar sign) {
  const auto a = alpha.axis();
  const auto b = beta.axis();
  Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic> out(a.size(), b.size());
  for (Eigen::Index r = 0; r < a.size(); ++r)
    for (Eigen::Index c = 0; c < b.size(); ++c)
      out(r, c) = std::polar(Scalar(1), sign * Scalar(2) * a(r) * b(c));
  return out;
}

}  // namespace detail

/// Riemann-sum phase-space transform of a function tabulated on `beta`,
/// P(α) = π⁻² Σ_β F(β) e^{αβ* − α*β} (Δβ)², evaluated on every node of
/// `alpha`. The kernel e^{2i(α_i β_r − α_r β_i)} factorises, so the double
/// sum is two dense matrix products.
template <typename Derived, typename Scalar>
Eigen::Array<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic> phase_space_transform(
    const Eigen::ArrayBase<Derived>& f, const SquareGrid<Scalar>& beta,
    const SquareGrid<Scalar>& alpha) {
  using Complex = std::complex<Scalar>;
  const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic> fm =
      f.derived().matrix().template cast<Complex>();
  // along_real(a, m) = e^{2i α_i[a] β_r[m]}, along_imag(b, n) = e^{−2i α_r[b] β_i[n]}
  const auto along_real = detail::phase_matrix(alpha, beta, Scalar(1));
  const auto along_imag = detail::phase_matrix(alpha, beta, Scalar(-1));
  const Scalar weight = beta.step() * beta.step() / (std::numbers::pi_v<Scalar> * std::numbers::pi_v<Scalar>);
  Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic> out =
      along_imag * fm.transpose() * along_real.transpose();
  return (out * weight).array();
}

/// Same transform at a single α.
template <typename Derived, typename Scalar>
std::complex<Scalar> phase_space_transform_at(const Eigen::ArrayBase<Derived>& f,
                                              const SquareGrid<Scalar>& beta,
                                              std::complex<Scalar> alpha) {
  using Complex = std::complex<Scalar>;
  const auto b = beta.axis();
  Eigen::Matrix<Complex, Eigen::Dynamic, 1> along_imag(b.size()), along_real(b.size());
  for (Eigen::Index n = 0; n < b.size(); ++n) {
    along_imag(n) = std::polar(Scalar(1), Scalar(-2) * alpha.real() * b(n));
    along_real(n) = std::polar(Scalar(1), Scalar(2) * alpha.imag() * b(n));
  }
  const Eigen::Matrix<Complex, Eigen::Dynamic, 1> inner =
      f.derived().matrix().template cast<Complex>() * along_imag;
  const Scalar weight = beta.step() * beta.step() / (std::numbers::pi_v<Scalar> * std::numbers::pi_v<Scalar>);
  return along_real.cwiseProduct(inner).sum() * weight;
}

}  // namespace ncq
