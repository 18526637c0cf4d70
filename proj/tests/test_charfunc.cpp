#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ncq/charfunc.hpp"

using namespace ncq;

namespace {

constexpr double pi = std::numbers::pi;

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no ncq::Error thrown");
  return ErrorKind::Io;
}

}  // namespace

TEST_CASE("phase selection folds arguments into recorded phases") {
  const auto data = sample_quadratures(Thermal{1.0}, default_phases(12), 10, 1);
  auto sel = select_phase(data, {2.0, 0.0});
  CHECK(data.phases[sel.phase_index] == doctest::Approx(pi / 2));
  CHECK(sel.sign == 1);
  CHECK(sel.radius == 2.0);

  sel = select_phase(data, {0.0, 1.0});
  CHECK(sel.phase_index == 0);
  CHECK(sel.sign == 1);

  sel = select_phase(data, {0.0, -1.0});
  CHECK(sel.phase_index == 0);
  CHECK(sel.sign == -1);

  // arg β = 3π/4 needs φ = −π/4, i.e. −x at 3π/4.
  sel = select_phase(data, std::polar(1.0, 3 * pi / 4));
  CHECK(data.phases[sel.phase_index] == doctest::Approx(3 * pi / 4));
  CHECK(sel.sign == -1);
  CHECK(sel.phase_error < 1e-12);
}

TEST_CASE("estimator basics") {
  const auto data = sample_quadratures(SqueezedVacuum{0.2, 5.0}, default_phases(12), 1000, 3);
  CHECK(estimate_charfunc(data, {0.0, 0.0}) == std::complex<double>(1.0));
  CHECK(stddev_bound(100, {1.0, 1.0}) == doctest::Approx(std::exp(1.0) / 10.0));
  CHECK(kind_of([] { stddev_bound(0, {1.0, 0.0}); }) == ErrorKind::ParameterDomain);
  for (const std::complex<double> b : {std::complex<double>(1.0, 0.0), {0.3, -0.7}, {-1.2, 0.4}})
    CHECK(empirical_std(data, b) <= stddev_bound(1000, b) * (1 + 1e-12));
  // The estimate at −β is the conjugate of the estimate at β.
  const std::complex<double> b(0.7, 0.2);
  CHECK(std::abs(estimate_charfunc(data, -b) - std::conj(estimate_charfunc(data, b))) < 1e-14);
}

TEST_CASE("estimator input errors") {
  QuadratureDataset empty;
  CHECK(kind_of([&] { estimate_charfunc(empty, {1.0, 0.0}); }) == ErrorKind::EmptyInput);
  QuadratureDataset one;
  one.phases = {0.0};
  one.samples = {{0.5}};
  CHECK(kind_of([&] { empirical_std(one, {0.0, 1.0}); }) == ErrorKind::InsufficientData);
}

TEST_CASE("estimator is unbiased with the predicted spread") {
  const SqueezedVacuum state{0.2, 5.0};
  const std::vector<std::complex<double>> betas = {
      {0.8, 0.0}, {0.0, 0.8}, std::polar(1.0, pi / 4), {1.3, 0.0}};
  const int m = 50;
  const std::size_t n = 1000;
  for (const auto& b : betas) {
    double sum_re = 0.0, sum_im = 0.0, sq = 0.0, pred = 0.0;
    for (int r = 0; r < m; ++r) {
      const auto data = sample_quadratures(state, default_phases(12), n, 1000 + r);
      const auto v = estimate_charfunc(data, b);
      sum_re += v.real();
      sum_im += v.imag();
      sq += std::norm(v);
      pred += empirical_std(data, b);
    }
    const std::complex<double> mean(sum_re / m, sum_im / m);
    const double spread = std::sqrt(sq / m - std::norm(mean));
    const auto truth = charfunc_analytic(state, b);
    CAPTURE(b);
    CHECK(std::abs(mean - truth) < 4 * spread / std::sqrt(double(m)));
    CHECK(spread <= 1.3 * stddev_bound(n, b));
    CHECK(pred / m == doctest::Approx(spread).epsilon(0.3));
  }
}

TEST_CASE("grid estimator matches the pointwise estimator") {
  const auto data = sample_quadratures(SqueezedVacuum{0.2, 5.0}, default_phases(12), 3000, 8);
  const Grid grid(3.0, 0.25);
  const auto fast = estimate_on_grid(data, grid);
  const auto exact = estimate_on_grid_exact(data, grid);
  for (Eigen::Index i = 0; i < grid.size(); ++i)
    for (Eigen::Index j = 0; j < grid.size(); ++j) {
      const double gain = std::exp(std::norm(grid.point(i, j)) / 2);
      CHECK(std::abs(fast.values(i, j) - exact.values(i, j)) <= 3 * kGridInterpolationTolerance * gain);
      CHECK(std::abs(fast.sigma(i, j) - exact.sigma(i, j)) <= 1e-6 * gain);
      CHECK(fast.n_samples(i, j) == exact.n_samples(i, j));
    }
}

TEST_CASE("grid invariants") {
  const auto data = sample_quadratures(Thermal{0.5}, default_phases(7), 500, 2);
  const Grid grid(2.0, 0.1);
  const auto cf = estimate_on_grid(data, grid);
  const auto c = grid.center();
  CHECK(cf.values(c, c) == std::complex<double>(1.0));
  CHECK(cf.sigma(c, c) == 0.0);
  bool hermitian = true;
  for (Eigen::Index i = 0; i < grid.size(); ++i)
    for (Eigen::Index j = 0; j < grid.size(); ++j)
      hermitian = hermitian && cf.values(grid.mirror(i), grid.mirror(j)) == std::conj(cf.values(i, j));
  CHECK(hermitian);
  CHECK((cf.sigma >= 0.0).all());

  const auto an = analytic_on_grid(SqueezedVacuum{0.2, 5.0}, grid);
  CHECK((an.sigma == 0.0).all());
  CHECK(an.values(c, c) == std::complex<double>(1.0));
  CHECK(an.source == CharFuncSource::Analytic);
  const auto i1 = c + 10;  // β = 1
  CHECK(an.values(i1, c).real() == doctest::Approx(std::exp(0.4)));
}

TEST_CASE("grid construction checks") {
  CHECK(kind_of([] { Grid(0.0, 0.1); }) == ErrorKind::ParameterDomain);
  CHECK(kind_of([] { Grid(1.0, -0.1); }) == ErrorKind::ParameterDomain);
  CHECK(kind_of([] { Grid(0.1, 1.0); }) == ErrorKind::ParameterDomain);
  const Grid g(8.0, 0.04);
  CHECK(g.size() == 401);
  CHECK(g.coord(0) == doctest::Approx(-8.0));
  CHECK(g.point(g.mirror(13), g.mirror(250)) == -g.point(13, 250));
}
