#include "ncq/bochner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "ncq/rng.hpp"

namespace ncq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxPoints = 8;

std::vector<PhasePlanePoint> scan_points(const ScanRegion& region) {
  if (!(region.radius > 0.0) || !(region.step > 0.0))
    fail(ErrorKind::ParameterDomain, "scan radius and step must be > 0");
  std::vector<PhasePlanePoint> out;
  const auto n = static_cast<long>(std::floor(region.radius / region.step + 1e-9));
  if (region.axis_angle) {
    const auto dir = std::polar(1.0, *region.axis_angle);
    for (long i = -n; i <= n; ++i) out.push_back(static_cast<double>(i) * region.step * dir);
    return out;
  }
  for (long i = -n; i <= n; ++i)
    for (long j = -n; j <= n; ++j) {
      const PhasePlanePoint b(static_cast<double>(i) * region.step,
                              static_cast<double>(j) * region.step);
      if (std::abs(b) <= region.radius + 1e-12) out.push_back(b);
    }
  return out;
}

bool in_region(const ScanRegion& region, PhasePlanePoint beta, double tol) {
  if (std::abs(beta) > region.radius + 1e-12) return false;
  if (!region.axis_angle) return true;
  return std::abs((beta * std::polar(1.0, -*region.axis_angle)).imag()) <= tol;
}

}  // namespace

std::string to_string(BochnerKind kind) {
  return kind == BochnerKind::Modulus ? "modulus" : "determinant";
}

std::string to_json(const BochnerVerdict& v) {
  nlohmann::ordered_json j;
  j["kind"] = to_string(v.kind);
  auto pts = nlohmann::ordered_json::array();
  for (const auto& p : v.points) pts.push_back({p.real(), p.imag()});
  j["points"] = pts;
  j["statistic"] = v.statistic;
  j["sigma"] = v.sigma;
  if (std::isinf(v.significance))
    j["significance"] = "inf";
  else
    j["significance"] = v.significance;
  j["verdict"] = v.verdict;
  if (v.resampled_sigma) j["resampled_sigma"] = *v.resampled_sigma;
  if (!v.note.empty()) j["note"] = v.note;
  return j.dump(2);
}

BochnerVerdict modulus_test(const MixedState& state, const ScanRegion& region) {
  validate(state);
  BochnerVerdict out;
  out.kind = BochnerKind::Modulus;
  PhasePlanePoint best{};
  double best_mod = -1.0;
  for (const auto& b : scan_points(region)) {
    const double m = std::abs(charfunc_analytic(state, b));
    if (m > best_mod) {
      best_mod = m;
      best = b;
    }
  }
  out.points = {best};
  out.statistic = best_mod;
  if (best_mod > 1.0 + 1e-12) {
    out.significance = kInf;
    out.verdict = "nonclassical";
  }
  return out;
}

BochnerVerdict modulus_test(const CharFuncGrid& cf, const ScanRegion& region, double k) {
  if (region.radius > cf.grid.max_radius() + 1e-12)
    fail(ErrorKind::Range, "scan radius exceeds the characteristic-function grid");
  BochnerVerdict out;
  out.kind = BochnerKind::Modulus;
  const double tol = 1e-6 * cf.grid.step();
  const bool analytic = (cf.sigma == 0.0).all();
  double best_score = -kInf;
  for (Eigen::Index i = 0; i < cf.grid.size(); ++i)
    for (Eigen::Index j = 0; j < cf.grid.size(); ++j) {
      const auto b = cf.grid.point(i, j);
      if (!in_region(region, b, tol)) continue;
      const double m = std::abs(cf.values(i, j));
      double score;
      if (analytic)
        score = m;
      else if (cf.sigma(i, j) > 0.0)
        score = (m - 1.0) / cf.sigma(i, j);
      else
        continue;
      if (score > best_score) {
        best_score = score;
        out.points = {b};
        out.statistic = m;
        out.sigma = cf.sigma(i, j);
      }
    }
  if (out.points.empty()) fail(ErrorKind::EmptyInput, "scan region holds no grid nodes");
  if (analytic) {
    out.significance = out.statistic > 1.0 + 1e-12 ? kInf : 0.0;
    if (out.statistic > 1.0 + 1e-12) out.verdict = "nonclassical";
  } else {
    out.significance = best_score;
    if (best_score >= k) out.verdict = "nonclassical";
  }
  return out;
}

BochnerVerdict determinant_test(const CharFuncSampler& source,
                                std::span<const PhasePlanePoint> points,
                                const DeterminantOptions& options) {
  const auto n = static_cast<Eigen::Index>(points.size());
  if (points.empty() || points.size() > kMaxPoints)
    fail(ErrorKind::ParameterDomain, "determinant test needs 1 to 8 points");

  Eigen::MatrixXcd m(n, n);
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    m(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const auto [v, sigma] = source(points[static_cast<std::size_t>(i)] -
                                     points[static_cast<std::size_t>(j)]);
      m(i, j) = v;
      m(j, i) = std::conj(v);
      s(i, j) = s(j, i) = sigma;
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
  const Eigen::VectorXd lambda = solver.eigenvalues();
  const Eigen::MatrixXcd& vecs = solver.eigenvectors();

  BochnerVerdict out;
  out.kind = BochnerKind::Determinant;
  out.points.assign(points.begin(), points.end());
  out.statistic = lambda.prod();

  // adj(M) = Σ_k (Π_{l≠k} λ_l) v_k v_k^†, so ∂D/∂M_ij = adj(M)_ji.
  Eigen::MatrixXcd adj = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    double others = 1.0;
    for (Eigen::Index l = 0; l < n; ++l)
      if (l != k) others *= lambda(l);
    adj += others * vecs.col(k) * vecs.col(k).adjoint();
  }
  double var = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) var += 2.0 * std::norm(adj(j, i)) * s(i, j) * s(i, j);
  out.sigma = std::sqrt(var);

  if (s.maxCoeff() > 0.0 && options.resamples >= 2) {
    Rng rng(options.seed, 0);
    double mean = 0.0, m2 = 0.0;
    for (std::size_t r = 0; r < options.resamples; ++r) {
      Eigen::MatrixXcd p = m;
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j) {
          const double a = s(i, j) / std::sqrt(2.0);
          const std::complex<double> e(a * rng.normal(), a * rng.normal());
          p(i, j) += e;
          p(j, i) = std::conj(p(i, j));
        }
      const double d = hermitian_determinant(p);
      const double delta = d - mean;
      mean += delta / static_cast<double>(r + 1);
      m2 += delta * (d - mean);
    }
    out.resampled_sigma = std::sqrt(m2 / static_cast<double>(options.resamples - 1));
    out.note = "error estimates are first-order perturbation and resampled matrices";
  }

  if (out.sigma > 0.0) {
    out.significance = -out.statistic / out.sigma;
    if (out.statistic < 0.0 && out.significance >= options.k) out.verdict = "nonclassical";
  } else {
    out.significance = out.statistic < -1e-10 ? kInf : 0.0;
    if (out.statistic < -1e-10) out.verdict = "nonclassical";
  }
  return out;
}

BochnerVerdict determinant_test(const MixedState& state, std::span<const PhasePlanePoint> points,
                                const DeterminantOptions& options) {
  validate(state);
  return determinant_test(
      [&](PhasePlanePoint b) { return std::pair{charfunc_analytic(state, b), 0.0}; }, points,
      options);
}

std::pair<std::complex<double>, double> interpolate(const CharFuncGrid& cf, PhasePlanePoint beta) {
  if (!cf.grid.contains(beta))
    fail(ErrorKind::Range, "point (" + std::to_string(beta.real()) + ", " +
                               std::to_string(beta.imag()) + ") lies outside the grid");
  const double h = cf.grid.step();
  const auto last = cf.grid.size() - 1;
  const double u = beta.real() / h + static_cast<double>(cf.grid.half());
  const double v = beta.imag() / h + static_cast<double>(cf.grid.half());
  const auto i = std::clamp<Eigen::Index>(static_cast<Eigen::Index>(std::floor(u)), 0, last - 1);
  const auto j = std::clamp<Eigen::Index>(static_cast<Eigen::Index>(std::floor(v)), 0, last - 1);
  const double fu = std::clamp(u - static_cast<double>(i), 0.0, 1.0);
  const double fv = std::clamp(v - static_cast<double>(j), 0.0, 1.0);
  const double w00 = (1 - fu) * (1 - fv), w10 = fu * (1 - fv), w01 = (1 - fu) * fv, w11 = fu * fv;
  const auto value = w00 * cf.values(i, j) + w10 * cf.values(i + 1, j) +
                     w01 * cf.values(i, j + 1) + w11 * cf.values(i + 1, j + 1);
  const double sigma = w00 * cf.sigma(i, j) + w10 * cf.sigma(i + 1, j) +
                       w01 * cf.sigma(i, j + 1) + w11 * cf.sigma(i + 1, j + 1);
  return {value, sigma};
}

BochnerVerdict determinant_test(const CharFuncGrid& cf, std::span<const PhasePlanePoint> points,
                                const DeterminantOptions& options) {
  return determinant_test([&](PhasePlanePoint b) { return interpolate(cf, b); }, points, options);
}

BochnerVerdict determinant_test(const QuadratureDataset& dataset,
                                std::span<const PhasePlanePoint> points,
                                const DeterminantOptions& options) {
  dataset.validate();
  return determinant_test(
      [&](PhasePlanePoint b) {
        return std::pair{estimate_charfunc(dataset, b), empirical_std(dataset, b)};
      },
      points, options);
}

}  // namespace ncq
