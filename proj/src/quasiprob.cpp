#include "ncq/quasiprob.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numbers>

#include "ncq/fourier.hpp"
#include "ncq/rng.hpp"

namespace ncq {

namespace {

constexpr double kPi = std::numbers::pi;

QuadratureDataset resample(const QuadratureDataset& dataset, Rng& rng) {
  QuadratureDataset out;
  out.phases = dataset.phases;
  out.samples.resize(dataset.samples.size());
  for (std::size_t p = 0; p < dataset.samples.size(); ++p) {
    const auto& xs = dataset.samples[p];
    auto& ys = out.samples[p];
    ys.resize(xs.size());
    for (auto& y : ys) y = xs[rng.index(xs.size())];
  }
  return out;
}

double arg_positive(PhasePlanePoint a) {
  const double t = std::arg(a);
  return t < 0.0 ? t + 2 * kPi : t;
}

}  // namespace

std::string to_string(ErrorMethod method) {
  return method == ErrorMethod::Bootstrap ? "bootstrap" : "independent";
}

ErrorMethod error_method_from_string(const std::string& name) {
  if (name == "independent" || name == "independent-point") return ErrorMethod::IndependentPoint;
  if (name == "bootstrap") return ErrorMethod::Bootstrap;
  fail(ErrorKind::ParameterDomain, "unknown error method '" + name + "'");
}

CharFuncGrid apply_filter(const CharFuncGrid& cf, const NCFilter& filter) {
  if (!(filter.width > 0.0)) fail(ErrorKind::ParameterDomain, "filter width must be > 0");
  const Eigen::ArrayXXd omega = filter_on_grid(filter, cf.grid);
  CharFuncGrid out = cf;
  out.values = cf.values * omega.cast<std::complex<double>>();
  out.sigma = cf.sigma * omega;
  const auto c = cf.grid.center();
  out.values(c, c) = cf.values(c, c);
  out.filter_tag = filter.tag();
  if (truncates_support(out))
    std::cerr << "warning: |Phi_Omega| = " << out.boundary_max()
              << " on the beta grid boundary; the grid truncates the filtered support\n";
  return out;
}

bool truncates_support(const CharFuncGrid& filtered, double threshold) {
  return filtered.boundary_max() > threshold;
}

QuasiprobMap fourier_to_quasiprob(const CharFuncGrid& filtered, const Grid& alpha,
                                  const TransformOptions& options) {
  if (!options.allow_truncation && truncates_support(filtered, options.tail_threshold))
    fail(ErrorKind::Truncation,
         "filtered characteristic function reaches " + std::to_string(filtered.boundary_max()) +
             " on the beta grid boundary; enlarge the grid or allow truncation");

  const Eigen::ArrayXXcd p = phase_space_transform(filtered.values, filtered.grid, alpha);
  const double max_re = p.real().abs().maxCoeff();
  const double max_im = p.imag().abs().maxCoeff();
  const double residue = max_re > 0.0 ? max_im / max_re : max_im;
  if (residue > options.imag_tolerance)
    fail(ErrorKind::Convention, "imaginary residue " + std::to_string(residue) +
                                    " of the transform exceeds tolerance; input is not Hermitian");

  QuasiprobMap out;
  out.grid = alpha;
  out.values = p.real();
  out.sigma = Eigen::ArrayXXd::Zero(alpha.size(), alpha.size());
  out.imag_residue = residue;
  out.meta.beta_grid = filtered.grid;
  out.meta.filter = filtered.filter_tag;
  out.meta.convention = kFourierConvention;
  out.meta.source = filtered.source == CharFuncSource::Analytic ? "analytic" : "sampled";
  return out;
}

Eigen::ArrayXXd propagate_error(const CharFuncGrid& filtered, const Grid& alpha,
                                const ErrorPropagation& how) {
  const auto n = alpha.size();
  if (how.method == ErrorMethod::IndependentPoint) {
    const double h2 = filtered.grid.step() * filtered.grid.step();
    const double s = std::sqrt(filtered.sigma.square().sum()) * h2 / (kPi * kPi);
    return Eigen::ArrayXXd::Constant(n, n, s);
  }

  if (how.dataset == nullptr || how.filter == nullptr)
    fail(ErrorKind::MissingInput, "bootstrap error needs the dataset and the filter");
  if (how.resamples < 2) fail(ErrorKind::ParameterDomain, "bootstrap needs >= 2 resamples");

  // Welford accumulation of the pointwise mean and variance.
  Eigen::ArrayXXd mean = Eigen::ArrayXXd::Zero(n, n);
  Eigen::ArrayXXd m2 = Eigen::ArrayXXd::Zero(n, n);
  TransformOptions relaxed;
  relaxed.allow_truncation = true;
  relaxed.imag_tolerance = std::numeric_limits<double>::infinity();
  for (std::size_t b = 0; b < how.resamples; ++b) {
    Rng rng(how.seed, b);
    const auto data = resample(*how.dataset, rng);
    auto cf = estimate_on_grid(data, filtered.grid);
    const Eigen::ArrayXXd omega = filter_on_grid(*how.filter, filtered.grid);
    cf.values *= omega.cast<std::complex<double>>();
    const Eigen::ArrayXXd p =
        phase_space_transform(cf.values, filtered.grid, alpha).real();
    const Eigen::ArrayXXd delta = p - mean;
    mean += delta / static_cast<double>(b + 1);
    m2 += delta * (p - mean);
  }
  return (m2 / static_cast<double>(how.resamples - 1)).sqrt();
}

Significance significance(const QuasiprobMap& map, double k, double floor) {
  Significance out;
  const double min_value = map.values.minCoeff();
  bool found = false;
  for (Eigen::Index i = 0; i < map.values.rows(); ++i)
    for (Eigen::Index j = 0; j < map.values.cols(); ++j) {
      if (map.values(i, j) > min_value + 1e-12) continue;
      const auto a = map.grid.point(i, j);
      bool better = !found;
      if (found) {
        const double ra = std::abs(a), rb = std::abs(out.location);
        better = ra < rb - 1e-12 ||
                 (std::abs(ra - rb) <= 1e-12 && arg_positive(a) < arg_positive(out.location));
      }
      if (better) {
        found = true;
        out.location = a;
        out.min_value = map.values(i, j);
        out.sigma = map.sigma(i, j);
      }
    }

  if (out.min_value < 0.0) {
    if (out.sigma > 0.0) {
      out.ratio = -out.min_value / out.sigma;
    } else {
      out.ratio = std::numeric_limits<double>::infinity();
      out.infinite = true;
    }
  }
  if (out.min_value >= -floor)
    out.verdict = "no negativity";
  else if (out.ratio >= k)
    out.verdict = "nonclassical";
  else
    out.verdict = "insignificant negativity";
  return out;
}

double normalization_check(const QuasiprobMap& map) {
  return map.values.sum() * map.grid.step() * map.grid.step();
}

CrossSection quasiprob_cross_section(const CharFuncGrid& filtered, double angle,
                                     std::span<const double> t, double sigma) {
  CrossSection out;
  out.angle = angle;
  const auto dir = std::polar(1.0, angle);
  for (double s : t) {
    const auto p = phase_space_transform_at(filtered.values, filtered.grid, s * dir);
    out.t.push_back(s);
    out.value.push_back(p.real());
    out.imag.push_back(p.imag());
    out.sigma.push_back(sigma);
  }
  return out;
}

CrossSection charfunc_cross_section(const MixedState& state, const NCFilter& filter,
                                    double angle, std::span<const double> t) {
  validate(state);
  CrossSection out;
  out.angle = angle;
  const auto dir = std::polar(1.0, angle);
  for (double s : t) {
    const PhasePlanePoint beta = s * dir;
    const auto v = charfunc_analytic(state, beta) * eval_filter(filter, beta);
    out.t.push_back(s);
    out.value.push_back(v.real());
    out.imag.push_back(v.imag());
    out.sigma.push_back(0.0);
  }
  return out;
}

std::vector<double> symmetric_axis(double range, double step) {
  const Grid g(range, step);
  std::vector<double> out(static_cast<std::size_t>(g.size()));
  for (Eigen::Index i = 0; i < g.size(); ++i) out[static_cast<std::size_t>(i)] = g.coord(i);
  return out;
}

}  // namespace ncq
