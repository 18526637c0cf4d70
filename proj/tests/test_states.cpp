#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include "ncq/states.hpp"

using namespace ncq;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no ncq::Error thrown");
  return ErrorKind::Io;
}

std::string temp_path(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "ncq_test_states";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream(path) << text;
}

}  // namespace

TEST_CASE("analytic characteristic functions at reference points") {
  CHECK(charfunc_analytic(SqueezedVacuum{0.2, 5.0}, {1.0, 0.0}).real() ==
        doctest::Approx(std::exp(0.4)).epsilon(1e-14));
  CHECK(std::abs(charfunc_analytic(SqueezedVacuum{0.2, 5.0}, {1.0, 0.0}) - 1.491825) < 1e-6);
  CHECK(std::abs(charfunc_analytic(Thermal{1.0}, std::polar(1.0, 0.7)) - 0.367879) < 1e-6);
  CHECK(std::abs(charfunc_analytic(FockOne{}, std::polar(2.0, 1.1)) - (-3.0)) < 1e-12);
  for (const AnalyticState& s :
       {AnalyticState{Coherent{{1.0, -0.5}}}, AnalyticState{Thermal{2.0}},
        AnalyticState{SqueezedVacuum{0.3, 4.0}}, AnalyticState{FockOne{}}})
    CHECK(charfunc_analytic(s, {0.0, 0.0}) == std::complex<double>(1.0));
}

TEST_CASE("coherent characteristic function is a pure phase") {
  const Coherent c{{0.8, -1.3}};
  const std::complex<double> beta(0.4, 0.9);
  const auto v = charfunc_analytic(c, beta);
  CHECK(std::abs(v) == doctest::Approx(1.0));
  CHECK(std::arg(v) == doctest::Approx(2.0 * (beta * std::conj(c.amplitude)).imag()));
}

TEST_CASE("Hermitian symmetry and the e^{|b|^2/2} bound hold for every variant") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  const std::vector<MixedState> states = {
      Coherent{{1.0, 0.5}}, Thermal{0.7}, SqueezedVacuum{0.2, 5.0}, FockOne{},
      parse_state("coherent:1.5+coherent:-1.5")};
  for (const auto& s : states)
    for (int n = 0; n < 200; ++n) {
      const std::complex<double> b(u(gen), u(gen));
      const auto v = charfunc_analytic(s, b);
      CHECK(std::abs(charfunc_analytic(s, -b) - std::conj(v)) < 1e-12 * std::max(1.0, std::abs(v)));
      CHECK(std::abs(v) <= std::exp(std::norm(b) / 2) * (1 + 1e-12));
    }
}

TEST_CASE("invalid parameters are rejected") {
  CHECK(kind_of([] { validate(AnalyticState{SqueezedVacuum{0.5, 0.8}}); }) ==
        ErrorKind::ParameterDomain);
  CHECK(kind_of([] { validate(AnalyticState{SqueezedVacuum{1.2, 5.0}}); }) ==
        ErrorKind::ParameterDomain);
  CHECK(kind_of([] { charfunc_analytic(Thermal{-1.0}, {1.0, 0.0}); }) == ErrorKind::ParameterDomain);
  CHECK(kind_of([] { parse_state("banana:1"); }) == ErrorKind::ParameterDomain);
  CHECK(kind_of([] { parse_state("squeezed:0.2"); }) == ErrorKind::ParameterDomain);
  CHECK(kind_of([] { parse_state("0.3*thermal:1+0.3*fock1"); }) == ErrorKind::ParameterDomain);
}

TEST_CASE("state specifications parse") {
  const auto sq = parse_state("squeezed:0.2,5");
  REQUIRE(sq.is_pure_component());
  const auto& v = std::get<SqueezedVacuum>(sq.components[0]);
  CHECK(v.var_x == 0.2);
  CHECK(v.var_p == 5.0);
  const auto mix = parse_state("coherent:1.5+coherent:-1.5");
  REQUIRE(mix.components.size() == 2);
  CHECK(mix.weights[0] == 0.5);
  const auto weighted = parse_state("0.25*thermal:1+0.75*fock1");
  CHECK(weighted.weights[1] == 0.75);
  CHECK(std::holds_alternative<FockOne>(weighted.components[1]));
}

TEST_CASE("quadrature variances follow the vacuum-unit convention") {
  constexpr double pi = std::numbers::pi;
  CHECK(quadrature_variance(SqueezedVacuum{0.2, 5.0}, pi / 2) == doctest::Approx(0.2));
  CHECK(quadrature_variance(SqueezedVacuum{0.2, 5.0}, 0.0) == doctest::Approx(5.0));
  CHECK(quadrature_variance(Coherent{{2.0, 1.0}}, 0.3) == doctest::Approx(1.0));
  CHECK(quadrature_variance(Thermal{1.0}, 1.1) == doctest::Approx(3.0));
  CHECK(kind_of([] { quadrature_variance(FockOne{}, 0.0); }) == ErrorKind::UnsupportedVariant);
  CHECK(quadrature_mean(Coherent{{1.0, 0.0}}, 0.0) == doctest::Approx(2.0));
}

TEST_CASE("variance convention agrees with the analytic characteristic function") {
  // Φ(β) e^{-|β|²/2} is the quadrature characteristic function at φ = π/2 − arg β.
  const SqueezedVacuum s{0.2, 5.0};
  for (double theta : {0.0, 0.4, 1.2, 2.5}) {
    const double k = 0.9;
    const double phi = std::numbers::pi / 2 - theta;
    const double var = quadrature_variance(s, phi);
    const double expected = std::exp(-k * k * var / 2) * std::exp(k * k / 2);
    CHECK(charfunc_analytic(s, std::polar(k, theta)).real() == doctest::Approx(expected));
  }
}

TEST_CASE("FockOne density integrates to one and matches its CDF") {
  double sum = 0.0, second = 0.0;
  const double h = 1e-3;
  for (double x = -10.0; x <= 10.0; x += h) {
    sum += fock_one_density(x) * h;
    second += x * x * fock_one_density(x) * h;
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(second == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(fock_one_cdf(0.0) == doctest::Approx(0.5));
  double cdf = 0.0;
  for (int k = 0; k < 113000; ++k) cdf += fock_one_density(-10.0 + (k + 0.5) * 1e-4) * 1e-4;
  CHECK(fock_one_cdf(1.3) == doctest::Approx(cdf).epsilon(1e-6));
}

TEST_CASE("sampled moments agree with the model") {
  const auto phases = default_phases(4);
  const std::size_t n = 100000;
  const auto data = sample_quadratures(SqueezedVacuum{0.2, 5.0}, phases, n, 11);
  for (std::size_t p = 0; p < phases.size(); ++p) {
    double m = 0.0, q = 0.0;
    for (double x : data.samples[p]) {
      m += x;
      q += x * x;
    }
    m /= n;
    q /= n;
    const double var = quadrature_variance(SqueezedVacuum{0.2, 5.0}, phases[p]);
    CHECK(std::abs(m) < 5 * std::sqrt(var / n));
    CHECK(std::abs(q - m * m - var) < 5 * var * std::sqrt(2.0 / n));
  }

  const auto coh = sample_quadratures(Coherent{{1.0, 0.5}}, phases, n, 12);
  for (std::size_t p = 0; p < phases.size(); ++p) {
    double m = 0.0;
    for (double x : coh.samples[p]) m += x;
    CHECK(std::abs(m / n - quadrature_mean(Coherent{{1.0, 0.5}}, phases[p])) < 5 / std::sqrt(double(n)));
  }
}

TEST_CASE("FockOne samples follow the single-photon density") {
  const std::vector<double> phase{0.0};
  const std::size_t n = 100000;
  const auto data = sample_quadratures(FockOne{}, phase, n, 5);
  auto xs = data.samples[0];
  std::sort(xs.begin(), xs.end());
  double ks = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = fock_one_cdf(xs[i]);
    ks = std::max({ks, std::abs(f - double(i) / n), std::abs(f - double(i + 1) / n)});
  }
  // 1.63 / sqrt(n) is the 1% critical value of the Kolmogorov distribution.
  CHECK(ks < 1.63 / std::sqrt(double(n)));
  // (1/N) Σ cos(kx) estimates (1 − k²) e^{−k²/2}.
  double c = 0.0;
  for (double x : xs) c += std::cos(0.5 * x);
  CHECK(std::abs(c / n - 0.75 * std::exp(-0.125)) < 5 / std::sqrt(double(n)));
}

TEST_CASE("sampling is deterministic per seed") {
  const auto phases = default_phases(3);
  const auto a = sample_quadratures(Thermal{1.0}, phases, 500, 42);
  const auto b = sample_quadratures(Thermal{1.0}, phases, 500, 42);
  const auto c = sample_quadratures(Thermal{1.0}, phases, 500, 43);
  CHECK(a == b);
  CHECK(a.samples != c.samples);
  CHECK(a.seed == std::optional<std::uint64_t>(42));
}

TEST_CASE("sampling preconditions") {
  const std::vector<double> none;
  CHECK(kind_of([&] { sample_quadratures(Thermal{1.0}, none, 10, 1); }) == ErrorKind::EmptyInput);
  const auto phases = default_phases(2);
  CHECK(kind_of([&] { sample_quadratures(Thermal{1.0}, phases, 0, 1); }) ==
        ErrorKind::ParameterDomain);
}

TEST_CASE("dataset round trip is exact") {
  const auto data = sample_quadratures(SqueezedVacuum{0.2, 5.0}, default_phases(5), 200, 9);
  const auto path = temp_path("round.csv");
  save_dataset(data, path);
  const auto back = load_dataset(path);
  CHECK(back.phases == data.phases);
  CHECK(back.samples == data.samples);
  CHECK(back.seed == data.seed);
  CHECK(std::filesystem::exists(sidecar_path(path)));
}

TEST_CASE("dataset ingestion errors") {
  CHECK(kind_of([] { load_dataset(temp_path("does_not_exist.csv")); }) == ErrorKind::Io);

  const auto bad_header = temp_path("bad_header.csv");
  write_file(bad_header, "angle,value\n0,1\n");
  CHECK(kind_of([&] { load_dataset(bad_header); }) == ErrorKind::Format);

  const auto bad_number = temp_path("bad_number.csv");
  write_file(bad_number, "phase,x\n0,1.5\n0,abc\n");
  try {
    load_dataset(bad_number);
    FAIL("expected a format error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Format);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }

  const auto bad_phase = temp_path("bad_phase.csv");
  write_file(bad_phase, "phase,x\n3.5,1.0\n");
  CHECK(kind_of([&] { load_dataset(bad_phase); }) == ErrorKind::Format);

  const auto empty = temp_path("empty.csv");
  write_file(empty, "phase,x\n");
  CHECK(kind_of([&] { load_dataset(empty); }) == ErrorKind::EmptyInput);
}
