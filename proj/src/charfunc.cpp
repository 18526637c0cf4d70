#include "ncq/charfunc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace ncq {

namespace {

constexpr double kPi = std::numbers::pi;

void require_samples(const QuadratureDataset& dataset) {
  if (dataset.phases.empty() || dataset.total_samples() == 0)
    fail(ErrorKind::EmptyInput, "dataset has no samples");
}

bool in_upper_half(const Grid& grid, Eigen::Index i, Eigen::Index j) {
  return i > grid.center() || (i == grid.center() && j > grid.center());
}

/// Empirical characteristic function of one phase's samples on a uniform
/// radial mesh, with derivatives, for cubic Hermite evaluation.
class RadialEmpiricalCF {
 public:
  RadialEmpiricalCF(const std::vector<double>& xs, double k_max) {
    const auto n = static_cast<Eigen::Index>(xs.size());
    const Eigen::Map<const Eigen::ArrayXd> all(xs.data(), n);
    const double m4 = std::max(all.pow(4).mean(), 1e-12);
    // Hermite remainder per component: dk⁴/384 · max|f''''|, |f''''| <= E x⁴.
    dk_ = std::min(0.02, std::pow(384.0 * kGridInterpolationTolerance /
                                      (std::numbers::sqrt2 * m4), 0.25));
    const auto nodes = static_cast<Eigen::Index>(std::ceil(k_max / dk_)) + 2;
    re_.setZero(nodes);
    im_.setZero(nodes);
    dre_.setZero(nodes);
    dim_.setZero(nodes);

    constexpr Eigen::Index kChunk = 1024;
    constexpr Eigen::Index kReseed = 64;
    for (Eigen::Index start = 0; start < n; start += kChunk) {
      const Eigen::Index len = std::min(kChunk, n - start);
      const Eigen::Map<const Eigen::ArrayXd> x(xs.data() + start, len);
      const Eigen::ArrayXd rot_c = (x * dk_).cos();
      const Eigen::ArrayXd rot_s = (x * dk_).sin();
      Eigen::ArrayXd c(len), s(len), tmp(len);
      for (Eigen::Index m = 0; m < nodes; ++m) {
        if (m % kReseed == 0) {
          const double k = static_cast<double>(m) * dk_;
          c = (x * k).cos();
          s = (x * k).sin();
        }
        re_(m) += c.sum();
        im_(m) += s.sum();
        dre_(m) -= (x * s).sum();
        dim_(m) += (x * c).sum();
        tmp = c * rot_c - s * rot_s;
        s = c * rot_s + s * rot_c;
        c = tmp;
      }
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    re_ *= inv_n;
    im_ *= inv_n;
    dre_ *= inv_n;
    dim_ *= inv_n;
  }

  std::complex<double> operator()(double k) const {
    auto m = static_cast<Eigen::Index>(std::floor(k / dk_));
    m = std::clamp<Eigen::Index>(m, 0, re_.size() - 2);
    const double t = k / dk_ - static_cast<double>(m);
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    const double r = h00 * re_(m) + h10 * dk_ * dre_(m) + h01 * re_(m + 1) +
                     h11 * dk_ * dre_(m + 1);
    const double i = h00 * im_(m) + h10 * dk_ * dim_(m) + h01 * im_(m + 1) +
                     h11 * dk_ * dim_(m + 1);
    return {r, i};
  }

 private:
  double dk_ = 0.02;
  Eigen::ArrayXd re_, im_, dre_, dim_;
};

CharFuncGrid empty_grid(const Grid& grid, CharFuncSource source) {
  CharFuncGrid out;
  out.grid = grid;
  out.source = source;
  const auto n = grid.size();
  out.values.setZero(n, n);
  out.sigma.setZero(n, n);
  out.n_samples.setZero(n, n);
  return out;
}

void set_node(CharFuncGrid& out, Eigen::Index i, Eigen::Index j, std::complex<double> v,
              double sigma, int n) {
  const auto mi = out.grid.mirror(i);
  const auto mj = out.grid.mirror(j);
  out.values(i, j) = v;
  out.values(mi, mj) = std::conj(v);
  out.sigma(i, j) = out.sigma(mi, mj) = sigma;
  out.n_samples(i, j) = out.n_samples(mi, mj) = n;
}

}  // namespace

double CharFuncGrid::boundary_max() const {
  const auto last = values.rows() - 1;
  double out = 0.0;
  out = std::max(out, values.row(0).abs().maxCoeff());
  out = std::max(out, values.row(last).abs().maxCoeff());
  out = std::max(out, values.col(0).abs().maxCoeff());
  out = std::max(out, values.col(last).abs().maxCoeff());
  return out;
}

PhaseSelection select_phase(const QuadratureDataset& dataset, PhasePlanePoint beta) {
  if (dataset.phases.empty()) fail(ErrorKind::EmptyInput, "dataset has no phases");
  PhaseSelection sel;
  sel.radius = std::abs(beta);
  if (sel.radius == 0.0) return sel;

  double theta = std::arg(beta);
  int sign = 1;
  if (theta < 0.0 || theta >= kPi) {
    theta += theta < 0.0 ? kPi : -kPi;
    sign = -sign;
  }
  double phi = kPi / 2 - theta;
  if (phi < 0.0) {
    phi += kPi;
    sign = -sign;
  }

  double best = kPi;
  for (std::size_t p = 0; p < dataset.phases.size(); ++p) {
    const double direct = std::abs(phi - dataset.phases[p]);
    const double wrapped = kPi - direct;
    if (direct < best) {
      best = direct;
      sel.phase_index = p;
      sel.sign = sign;
    }
    if (wrapped < best) {
      best = wrapped;
      sel.phase_index = p;
      sel.sign = -sign;
    }
  }
  sel.phase_error = best;
  return sel;
}

std::complex<double> estimate_charfunc(const QuadratureDataset& dataset, PhasePlanePoint beta) {
  require_samples(dataset);
  if (beta == PhasePlanePoint{}) return 1.0;
  const auto sel = select_phase(dataset, beta);
  const auto& xs = dataset.samples[sel.phase_index];
  if (xs.empty()) fail(ErrorKind::EmptyInput, "selected phase has no samples");
  double c = 0.0, s = 0.0;
  for (double x : xs) {
    c += std::cos(sel.radius * x);
    s += std::sin(sel.radius * x);
  }
  const double scale = std::exp(sel.radius * sel.radius / 2) / static_cast<double>(xs.size());
  return {c * scale, sel.sign * s * scale};
}

double stddev_bound(std::size_t n, PhasePlanePoint beta) {
  if (n == 0) fail(ErrorKind::ParameterDomain, "sample count must be >= 1");
  return std::exp(std::norm(beta) / 2) / std::sqrt(static_cast<double>(n));
}

double empirical_std(const QuadratureDataset& dataset, PhasePlanePoint beta) {
  require_samples(dataset);
  const auto sel = select_phase(dataset, beta);
  const auto& xs = dataset.samples[sel.phase_index];
  if (xs.size() < 2)
    fail(ErrorKind::InsufficientData, "empirical std needs >= 2 samples at the selected phase");
  const double n = static_cast<double>(xs.size());
  double mc = 0.0, ms = 0.0;
  for (double x : xs) {
    mc += std::cos(sel.radius * x);
    ms += std::sin(sel.radius * x);
  }
  mc /= n;
  ms /= n;
  double var = 0.0;
  for (double x : xs) {
    const double dc = std::cos(sel.radius * x) - mc;
    const double ds = std::sin(sel.radius * x) - ms;
    var += dc * dc + ds * ds;
  }
  var /= n;
  return std::exp(sel.radius * sel.radius / 2) * std::sqrt(var / n);
}

CharFuncGrid estimate_on_grid(const QuadratureDataset& dataset, const Grid& grid) {
  require_samples(dataset);
  dataset.validate();
  auto out = empty_grid(grid, CharFuncSource::Sampled);

  struct Node {
    Eigen::Index i, j;
    int sign;
    double radius;
  };
  std::vector<std::vector<Node>> by_phase(dataset.phases.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i)
    for (Eigen::Index j = 0; j < grid.size(); ++j) {
      if (!in_upper_half(grid, i, j)) continue;
      const auto sel = select_phase(dataset, grid.point(i, j));
      by_phase[sel.phase_index].push_back({i, j, sel.sign, sel.radius});
    }

  for (std::size_t p = 0; p < by_phase.size(); ++p) {
    const auto& nodes = by_phase[p];
    if (nodes.empty()) continue;
    double k_max = 0.0;
    for (const auto& node : nodes) k_max = std::max(k_max, node.radius);
    const RadialEmpiricalCF cf(dataset.samples[p], k_max);
    const auto n = static_cast<int>(dataset.samples[p].size());
    for (const auto& node : nodes) {
      auto z = cf(node.radius);
      if (node.sign < 0) z = std::conj(z);
      const double gain = std::exp(node.radius * node.radius / 2);
      const double sigma =
          gain * std::sqrt(std::max(0.0, 1.0 - std::norm(z)) / static_cast<double>(n));
      set_node(out, node.i, node.j, z * gain, sigma, n);
    }
  }
  const auto c = grid.center();
  out.values(c, c) = 1.0;
  out.sigma(c, c) = 0.0;
  out.n_samples(c, c) = static_cast<int>(dataset.total_samples());
  return out;
}

CharFuncGrid estimate_on_grid_exact(const QuadratureDataset& dataset, const Grid& grid) {
  require_samples(dataset);
  dataset.validate();
  auto out = empty_grid(grid, CharFuncSource::Sampled);
  for (Eigen::Index i = 0; i < grid.size(); ++i)
    for (Eigen::Index j = 0; j < grid.size(); ++j) {
      if (!in_upper_half(grid, i, j)) continue;
      const auto beta = grid.point(i, j);
      const auto sel = select_phase(dataset, beta);
      const auto n = dataset.samples[sel.phase_index].size();
      const double sigma = n >= 2 ? empirical_std(dataset, beta) : stddev_bound(n, beta);
      set_node(out, i, j, estimate_charfunc(dataset, beta), sigma, static_cast<int>(n));
    }
  const auto c = grid.center();
  out.values(c, c) = 1.0;
  out.n_samples(c, c) = static_cast<int>(dataset.total_samples());
  return out;
}

CharFuncGrid analytic_on_grid(const MixedState& state, const Grid& grid) {
  validate(state);
  auto out = empty_grid(grid, CharFuncSource::Analytic);
  for (Eigen::Index i = 0; i < grid.size(); ++i)
    for (Eigen::Index j = 0; j < grid.size(); ++j)
      if (in_upper_half(grid, i, j))
        set_node(out, i, j, charfunc_analytic(state, grid.point(i, j)), 0.0, 0);
  const auto c = grid.center();
  out.values(c, c) = 1.0;
  return out;
}

}  // namespace ncq
