#include "ncq/states.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ncq/rng.hpp"

namespace ncq {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

double parse_double(std::string_view text, std::string_view what) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  double v = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end || text.empty())
    fail(ErrorKind::ParameterDomain,
         "cannot parse " + std::string(what) + " from '" + std::string(text) + "'");
  return v;
}

std::vector<double> parse_list(std::string_view text, std::string_view what) {
  std::vector<double> out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(parse_double(text.substr(0, comma), what));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

AnalyticState parse_component(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view name = text.substr(0, colon);
  const std::string_view args =
      colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  if (name == "fock1" || name == "fock") {
    if (!args.empty() && args != "1")
      fail(ErrorKind::ParameterDomain, "only the single-photon Fock state is supported");
    return FockOne{};
  }
  if (args.empty())
    fail(ErrorKind::ParameterDomain, "state '" + std::string(name) + "' needs parameters");
  const auto values = parse_list(args, name);
  if (name == "coherent") {
    if (values.size() > 2)
      fail(ErrorKind::ParameterDomain, "coherent takes re[,im]");
    return Coherent{{values[0], values.size() == 2 ? values[1] : 0.0}};
  }
  if (name == "thermal") {
    if (values.size() != 1) fail(ErrorKind::ParameterDomain, "thermal takes nbar");
    return Thermal{values[0]};
  }
  if (name == "squeezed") {
    if (values.size() != 2)
      fail(ErrorKind::ParameterDomain, "squeezed takes var_x,var_p");
    return SqueezedVacuum{values[0], values[1]};
  }
  fail(ErrorKind::ParameterDomain, "unknown state '" + std::string(name) + "'");
}

}  // namespace

MixedState::MixedState(std::vector<double> w, std::vector<AnalyticState> c)
    : weights(std::move(w)), components(std::move(c)) {
  validate(*this);
}

void validate(const AnalyticState& state) {
  std::visit(
      overloaded{
          [](const Coherent& s) {
            if (!std::isfinite(s.amplitude.real()) || !std::isfinite(s.amplitude.imag()))
              fail(ErrorKind::ParameterDomain, "coherent amplitude must be finite");
          },
          [](const Thermal& s) {
            if (!(s.mean_photons >= 0.0) || !std::isfinite(s.mean_photons))
              fail(ErrorKind::ParameterDomain, "thermal mean photon number must be >= 0");
          },
          [](const SqueezedVacuum& s) {
            if (!(s.var_x > 0.0 && s.var_x < 1.0 && s.var_p > 1.0) ||
                !std::isfinite(s.var_p))
              fail(ErrorKind::ParameterDomain,
                   "squeezed vacuum requires 0 < var_x < 1 < var_p");
          },
          [](const FockOne&) {},
      },
      state);
}

void validate(const MixedState& state) {
  if (state.components.empty() || state.weights.size() != state.components.size())
    fail(ErrorKind::ParameterDomain, "mixture needs one weight per component");
  double total = 0.0;
  for (double w : state.weights) {
    if (!std::isfinite(w)) fail(ErrorKind::ParameterDomain, "mixture weight not finite");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12)
    fail(ErrorKind::ParameterDomain, "mixture weights must sum to 1");
  for (const auto& c : state.components) validate(c);
}

bool is_gaussian(const AnalyticState& state) {
  return !std::holds_alternative<FockOne>(state);
}

std::string describe(const AnalyticState& state) {
  return std::visit(
      overloaded{
          [](const Coherent& s) {
            return "coherent:" + format_number(s.amplitude.real()) + "," +
                   format_number(s.amplitude.imag());
          },
          [](const Thermal& s) { return "thermal:" + format_number(s.mean_photons); },
          [](const SqueezedVacuum& s) {
            return "squeezed:" + format_number(s.var_x) + "," + format_number(s.var_p);
          },
          [](const FockOne&) { return std::string("fock1"); },
      },
      state);
}

std::string describe(const MixedState& state) {
  if (state.components.size() == 1) return describe(state.components.front());
  const bool equal = std::all_of(state.weights.begin(), state.weights.end(), [&](double w) {
    return w == state.weights.front();
  });
  std::string out;
  for (std::size_t i = 0; i < state.components.size(); ++i) {
    if (i) out += '+';
    if (!equal) out += format_number(state.weights[i]) + "*";
    out += describe(state.components[i]);
  }
  return out;
}

MixedState parse_state(std::string_view text) {
  if (text.empty()) fail(ErrorKind::ParameterDomain, "empty state specification");
  std::vector<double> weights;
  std::vector<AnalyticState> components;
  bool explicit_weights = false;
  while (true) {
    const auto plus = text.find('+');
    std::string_view part = text.substr(0, plus);
    double weight = -1.0;
    if (const auto star = part.find('*'); star != std::string_view::npos) {
      weight = parse_double(part.substr(0, star), "mixture weight");
      part.remove_prefix(star + 1);
      explicit_weights = true;
    }
    weights.push_back(weight);
    components.push_back(parse_component(part));
    if (plus == std::string_view::npos) break;
    text.remove_prefix(plus + 1);
  }
  if (explicit_weights) {
    if (std::any_of(weights.begin(), weights.end(), [](double w) { return w < 0; }))
      fail(ErrorKind::ParameterDomain, "give weights for all mixture components or none");
  } else {
    std::fill(weights.begin(), weights.end(), 1.0 / static_cast<double>(weights.size()));
  }
  return MixedState(std::move(weights), std::move(components));
}

std::complex<double> charfunc_analytic(const AnalyticState& state, PhasePlanePoint beta) {
  validate(state);
  const double br = beta.real();
  const double bi = beta.imag();
  const double r2 = br * br + bi * bi;
  return std::visit(
      overloaded{
          [&](const Coherent& s) {
            // e^{βα₀* − β*α₀} = e^{2i Im(β α₀*)}
            return std::polar(1.0, 2.0 * (beta * std::conj(s.amplitude)).imag());
          },
          [&](const Thermal& s) {
            return std::complex<double>(std::exp(-s.mean_photons * r2), 0.0);
          },
          [&](const SqueezedVacuum& s) {
            // (β+β*)² = 4β_r², (β−β*)² = −4β_i²
            return std::complex<double>(
                std::exp(-br * br * s.var_x / 2.0 - bi * bi * s.var_p / 2.0 + r2 / 2.0),
                0.0);
          },
          [&](const FockOne&) { return std::complex<double>(1.0 - r2, 0.0); },
      },
      state);
}

std::complex<double> charfunc_analytic(const MixedState& state, PhasePlanePoint beta) {
  if (state.components.size() == 1) return charfunc_analytic(state.components[0], beta);
  if (beta == PhasePlanePoint{}) return 1.0;
  std::complex<double> out = 0.0;
  for (std::size_t i = 0; i < state.components.size(); ++i)
    out += state.weights[i] * charfunc_analytic(state.components[i], beta);
  return out;
}

double quadrature_variance(const AnalyticState& state, double phase) {
  validate(state);
  return std::visit(
      overloaded{
          [](const Coherent&) { return 1.0; },
          [](const Thermal& s) { return 2.0 * s.mean_photons + 1.0; },
          [&](const SqueezedVacuum& s) {
            const double sn = std::sin(phase);
            const double cs = std::cos(phase);
            return s.var_x * sn * sn + s.var_p * cs * cs;
          },
          [](const FockOne&) -> double {
            fail(ErrorKind::UnsupportedVariant,
                 "the single-photon quadrature density is not Gaussian");
          },
      },
      state);
}

double quadrature_mean(const AnalyticState& state, double phase) {
  if (const auto* c = std::get_if<Coherent>(&state))
    return 2.0 * (c->amplitude * std::polar(1.0, phase)).real();
  return 0.0;
}

double fock_one_density(double x) {
  return x * x * std::exp(-x * x / 2.0) / std::sqrt(2.0 * std::numbers::pi);
}

double fock_one_cdf(double x) {
  // ∫ t² φ(t) dt = Φ(x) − x φ(x) with φ, Φ the standard normal pdf and cdf.
  const double pdf = std::exp(-x * x / 2.0) / std::sqrt(2.0 * std::numbers::pi);
  const double cdf = 0.5 * std::erfc(-x / std::numbers::sqrt2);
  return cdf - x * pdf;
}

namespace {

/// Inverse-CDF table for the single-photon density on [−8, 8].
class FockOneSampler {
 public:
  static constexpr std::size_t kNodes = 4096;
  static constexpr double kLo = -8.0;
  static constexpr double kHi = 8.0;

  FockOneSampler() : x_(kNodes), cdf_(kNodes) {
    for (std::size_t k = 0; k < kNodes; ++k) {
      x_[k] = kLo + (kHi - kLo) * static_cast<double>(k) / (kNodes - 1);
      cdf_[k] = fock_one_cdf(x_[k]);
    }
    const double lo = cdf_.front();
    const double span = cdf_.back() - lo;
    for (auto& c : cdf_) c = (c - lo) / span;
  }

  double operator()(double u) const {
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.begin()) return x_.front();
    if (it == cdf_.end()) return x_.back();
    const auto k = static_cast<std::size_t>(it - cdf_.begin()) - 1;
    const double t = (u - cdf_[k]) / (cdf_[k + 1] - cdf_[k]);
    return x_[k] + t * (x_[k + 1] - x_[k]);
  }

 private:
  std::vector<double> x_;
  std::vector<double> cdf_;
};

const FockOneSampler& fock_one_sampler() {
  static const FockOneSampler sampler;
  return sampler;
}

}  // namespace

void QuadratureDataset::validate() const {
  if (phases.empty()) fail(ErrorKind::EmptyInput, "dataset has no phases");
  if (samples.size() != phases.size())
    fail(ErrorKind::Format, "dataset needs one sample list per phase");
  for (std::size_t i = 0; i < phases.size(); ++i) {
    if (!(phases[i] >= 0.0 && phases[i] < std::numbers::pi))
      fail(ErrorKind::Format, "phase " + format_number(phases[i]) + " outside [0, pi)");
    if (i > 0 && !(phases[i] > phases[i - 1]))
      fail(ErrorKind::Format, "phases must be strictly increasing");
    if (samples[i].empty())
      fail(ErrorKind::EmptyInput, "phase " + format_number(phases[i]) + " has no samples");
  }
}

std::size_t QuadratureDataset::total_samples() const {
  std::size_t n = 0;
  for (const auto& s : samples) n += s.size();
  return n;
}

std::size_t QuadratureDataset::min_samples_per_phase() const {
  std::size_t n = samples.empty() ? 0 : samples.front().size();
  for (const auto& s : samples) n = std::min(n, s.size());
  return n;
}

std::vector<double> default_phases(std::size_t count) {
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k)
    out[k] = std::numbers::pi * static_cast<double>(k) / static_cast<double>(count);
  return out;
}

QuadratureDataset sample_quadratures(const AnalyticState& state,
                                     std::span<const double> phases,
                                     std::size_t n_per_phase, std::uint64_t seed) {
  validate(state);
  if (phases.empty()) fail(ErrorKind::EmptyInput, "no phases requested");
  if (n_per_phase == 0) fail(ErrorKind::ParameterDomain, "n_per_phase must be >= 1");

  QuadratureDataset out;
  out.phases.assign(phases.begin(), phases.end());
  out.seed = seed;
  out.source = DataSource::Synthetic;
  out.description = describe(state);
  out.samples.resize(phases.size());

  const bool fock = std::holds_alternative<FockOne>(state);
  for (std::size_t p = 0; p < phases.size(); ++p) {
    Rng rng(seed, p);
    auto& xs = out.samples[p];
    xs.resize(n_per_phase);
    if (fock) {
      const auto& inv = fock_one_sampler();
      for (auto& x : xs) x = inv(rng.uniform_open());
    } else {
      const double mean = quadrature_mean(state, phases[p]);
      const double sd = std::sqrt(quadrature_variance(state, phases[p]));
      for (auto& x : xs) x = mean + sd * rng.normal();
    }
  }
  out.validate();
  return out;
}

}  // namespace ncq
