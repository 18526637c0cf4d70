#include "ncq/filters.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "ncq/fourier.hpp"

namespace ncq {

namespace {

double support_radius(const std::function<double(double)>& log_profile) {
  const double peak = log_profile(0.0);
  double rho = 0.0;
  while (rho < 100.0 && log_profile(rho * rho) - peak >= std::log(1e-40)) rho += 0.01;
  return rho;
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

RadialKernel quartic_kernel() {
  RadialKernel k;
  k.name = "exp-quartic";
  k.log_profile = [](double r2) { return -r2 * r2; };
  k.support = support_radius(k.log_profile);
  return k;
}

RadialKernel gaussian_kernel() {
  RadialKernel k;
  k.name = "gaussian";
  k.log_profile = [](double r2) { return -r2; };
  k.support = support_radius(k.log_profile);
  return k;
}

RadialKernel kernel_by_name(const std::string& name) {
  if (name == "exp-quartic" || name == "quartic") return quartic_kernel();
  if (name == "gaussian") return gaussian_kernel();
  fail(ErrorKind::ParameterDomain, "unknown kernel '" + name + "'");
}

double autocorrelation(const RadialKernel& kernel, double r, double rel_tol) {
  const double half = r / 2.0;
  const double box = kernel.support;
  // The integrand is even in both components of β′ + β/2, so integrate one
  // quadrant with half weights on the axes.
  auto trapezoid = [&](int n) {
    const double h = box / n;
    double sum = 0.0;
    for (int ix = 0; ix <= n; ++ix) {
      const double ux = ix * h;
      const double wx = (ix == 0 || ix == n) ? 0.5 : 1.0;
      const double ax = (ux - half) * (ux - half);
      const double bx = (ux + half) * (ux + half);
      double row = 0.0;
      for (int iy = 0; iy <= n; ++iy) {
        const double uy2 = (iy * h) * (iy * h);
        const double wy = (iy == 0 || iy == n) ? 0.5 : 1.0;
        row += wy * std::exp(kernel.log_profile(ax + uy2) + kernel.log_profile(bx + uy2));
      }
      sum += wx * row;
    }
    return 4.0 * h * h * sum;
  };
  double prev = trapezoid(32);
  for (int n = 64; n <= 1024; n *= 2) {
    const double cur = trapezoid(n);
    if (std::abs(cur - prev) <= rel_tol * std::abs(cur) || (cur == 0.0 && prev == 0.0))
      return cur;
    prev = cur;
  }
  fail(ErrorKind::Accuracy, "autocorrelation quadrature did not converge at r = " + num(r));
}

RadialTable::RadialTable(std::vector<double> radii, std::vector<double> values,
                         double normalization, std::string kernel_name)
    : radii_(std::move(radii)),
      values_(std::move(values)),
      normalization_(normalization),
      kernel_name_(std::move(kernel_name)) {
  const std::size_t n = radii_.size();
  if (n < 3 || values_.size() != n)
    fail(ErrorKind::ParameterDomain, "radial table needs >= 3 matching nodes");
  for (std::size_t k = 1; k < n; ++k)
    if (!(radii_[k] > radii_[k - 1]))
      fail(ErrorKind::ParameterDomain, "radial table radii must increase");

  std::vector<double> h(n - 1), delta(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    h[k] = radii_[k + 1] - radii_[k];
    delta[k] = (values_[k + 1] - values_[k]) / h[k];
  }
  slopes_.assign(n, 0.0);
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (delta[k - 1] * delta[k] <= 0.0) continue;
    const double w1 = 2.0 * h[k] + h[k - 1];
    const double w2 = h[k] + 2.0 * h[k - 1];
    slopes_[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
  }
  // Even profile: zero slope at the origin.
  slopes_[0] = radii_[0] == 0.0 ? 0.0 : delta[0];
  {
    const std::size_t m = n - 2;
    double d = ((2.0 * h[m] + h[m - 1]) * delta[m] - h[m] * delta[m - 1]) / (h[m] + h[m - 1]);
    if (d * delta[m] <= 0.0)
      d = 0.0;
    else if (delta[m] * delta[m - 1] <= 0.0 && std::abs(d) > 3.0 * std::abs(delta[m]))
      d = 3.0 * delta[m];
    slopes_[n - 1] = d;
  }
}

double RadialTable::operator()(double r) const {
  r = std::abs(r);
  if (r > radii_.back()) return 0.0;
  auto it = std::upper_bound(radii_.begin(), radii_.end(), r);
  std::size_t k = it == radii_.begin() ? 0 : static_cast<std::size_t>(it - radii_.begin()) - 1;
  k = std::min(k, radii_.size() - 2);
  const double h = radii_[k + 1] - radii_[k];
  const double t = (r - radii_[k]) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * values_[k] + (t3 - 2 * t2 + t) * h * slopes_[k] +
         (-2 * t3 + 3 * t2) * values_[k + 1] + (t3 - t2) * h * slopes_[k + 1];
}

RadialTable build_autocorr_filter(const RadialKernel& kernel, std::size_t nodes) {
  if (!kernel.log_profile || !(kernel.support > 0.0))
    fail(ErrorKind::ParameterDomain, "kernel needs a profile and a positive support");
  if (nodes < 3) fail(ErrorKind::ParameterDomain, "radial table needs >= 3 nodes");

  const double norm = autocorrelation(kernel, 0.0);
  if (!(norm > 0.0) || !std::isfinite(norm))
    fail(ErrorKind::ParameterDomain, "kernel is not square integrable");

  const double scan_step = kernel.support / 200.0;
  double r_max = 0.0;
  while (autocorrelation(kernel, r_max) / norm >= kRadialCutoff) {
    r_max += scan_step;
    if (r_max > 2.0 * kernel.support)
      fail(ErrorKind::Accuracy, "autocorrelation does not decay within the kernel support");
  }

  std::vector<double> radii(nodes), values(nodes);
  for (std::size_t k = 0; k < nodes; ++k) {
    radii[k] = r_max * static_cast<double>(k) / static_cast<double>(nodes - 1);
    values[k] = k == 0 ? 1.0 : autocorrelation(kernel, radii[k]) / norm;
    if (k > 0 && values[k] > values[k - 1]) {
      if (values[k] - values[k - 1] > 1e-12 * values[k - 1])
        fail(ErrorKind::Accuracy, "autocorrelation table is not monotone at r = " + num(radii[k]));
      values[k] = values[k - 1];
    }
    values[k] = std::max(values[k], 0.0);
  }
  return RadialTable(std::move(radii), std::move(values), norm, kernel.name);
}

std::shared_ptr<const RadialTable> default_autocorr_table() {
  static const auto table =
      std::make_shared<const RadialTable>(build_autocorr_filter(quartic_kernel()));
  return table;
}

std::string to_string(FilterKind kind) {
  switch (kind) {
    case FilterKind::TriangularProduct: return "triangular";
    case FilterKind::Autocorrelation: return "autocorrelation";
    case FilterKind::GaussianS: return "gaussian-s";
  }
  return "unknown";
}

FilterKind filter_kind_from_string(const std::string& name) {
  if (name == "triangular" || name == "tri") return FilterKind::TriangularProduct;
  if (name == "autocorrelation" || name == "autocorr") return FilterKind::Autocorrelation;
  if (name == "gaussian-s" || name == "gaussian") return FilterKind::GaussianS;
  fail(ErrorKind::ParameterDomain, "unknown filter kind '" + name + "'");
}

NCFilter NCFilter::triangular(double width) {
  if (!(width > 0.0)) fail(ErrorKind::ParameterDomain, "filter width must be > 0");
  return NCFilter{FilterKind::TriangularProduct, width, 0.0, nullptr};
}

NCFilter NCFilter::autocorrelation(double width, std::shared_ptr<const RadialTable> table) {
  if (!(width > 0.0)) fail(ErrorKind::ParameterDomain, "filter width must be > 0");
  if (!table) fail(ErrorKind::MissingInput, "autocorrelation filter needs a radial table");
  return NCFilter{FilterKind::Autocorrelation, width, 0.0, std::move(table)};
}

NCFilter NCFilter::gaussian_s(double s) {
  if (!(s <= 1.0)) fail(ErrorKind::ParameterDomain, "s-parameter must be <= 1");
  return NCFilter{FilterKind::GaussianS, 1.0, s, nullptr};
}

NCFilter NCFilter::with_width(double w) const {
  if (!(w > 0.0)) fail(ErrorKind::ParameterDomain, "filter width must be > 0");
  NCFilter out = *this;
  out.width = w;
  return out;
}

double NCFilter::support() const {
  switch (kind) {
    case FilterKind::TriangularProduct: return width * std::numbers::sqrt2;
    case FilterKind::Autocorrelation: return width * table->r_max();
    case FilterKind::GaussianS: break;
  }
  return std::numeric_limits<double>::infinity();
}

std::string NCFilter::tag() const {
  if (kind == FilterKind::GaussianS) return "gaussian-s(s=" + num(s) + ")";
  return to_string(kind) + "(w=" + num(width) + ")";
}

double eval_triangular(PhasePlanePoint beta, double width) {
  if (!(width > 0.0)) fail(ErrorKind::ParameterDomain, "filter width must be > 0");
  auto tri = [](double x) { return std::abs(x) < 1.0 ? 1.0 - std::abs(x) : 0.0; };
  return tri(beta.real() / width) * tri(beta.imag() / width);
}

double eval_gaussian_s(PhasePlanePoint beta, double s) {
  return std::exp((s - 1.0) * std::norm(beta) / 2.0);
}

double eval_filter(const NCFilter& filter, PhasePlanePoint beta) {
  switch (filter.kind) {
    case FilterKind::TriangularProduct: return eval_triangular(beta, filter.width);
    case FilterKind::Autocorrelation: return (*filter.table)(std::abs(beta) / filter.width);
    case FilterKind::GaussianS: return eval_gaussian_s(beta, filter.s);
  }
  return 0.0;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

namespace {

/// The filter under the scaling transform β → β/w. For the GaussianS family
/// the transform maps s to 1 − (1 − s)/w².
double scaled_eval(const NCFilter& filter, double w, PhasePlanePoint beta) {
  if (filter.kind == FilterKind::GaussianS) return eval_gaussian_s(beta / w, filter.s);
  return eval_filter(filter.with_width(w), beta);
}

double scaled_support(const NCFilter& filter, double w) {
  if (filter.kind == FilterKind::GaussianS) {
    if (filter.s >= 1.0) return std::numeric_limits<double>::infinity();
    // exp((s − 1)|β/w|²/2) < 1e-16
    return w * std::sqrt(2.0 * 37.0 / (1.0 - filter.s));
  }
  return filter.with_width(w).support();
}

void merge(ConditionResult& total, Verdict v) {
  if (v == Verdict::Fail || total.verdict == Verdict::Fail)
    total.verdict = Verdict::Fail;
  else if (v == Verdict::Inconclusive || total.verdict == Verdict::Inconclusive)
    total.verdict = Verdict::Inconclusive;
}

/// I(L) = ∫_{[−L, L]²} Ω² e^{|β|²} for L = 1..l_max with cell size 1/m.
std::vector<long double> box_integrals(const NCFilter& filter, double w, int l_max, int m) {
  const double h = 1.0 / m;
  const int n = l_max * m;
  std::vector<long double> shell(static_cast<std::size_t>(l_max) + 1, 0.0L);
  for (int i = 0; i < n; ++i) {
    const double x = (i + 0.5) * h;
    for (int j = 0; j < n; ++j) {
      const double y = (j + 0.5) * h;
      const double omega = scaled_eval(filter, w, {x, y});
      if (omega == 0.0) continue;
      const long double g =
          std::exp(2.0L * std::log(static_cast<long double>(std::abs(omega))) +
                   static_cast<long double>(x * x + y * y));
      shell[static_cast<std::size_t>((std::max(i, j) + m) / m)] += g;
    }
  }
  std::vector<long double> out(shell.size(), 0.0L);
  for (std::size_t l = 1; l < shell.size(); ++l)
    out[l] = out[l - 1] + 4.0L * static_cast<long double>(h * h) * shell[l];
  return out;
}

ConditionResult check_universality(const NCFilter& filter, double w,
                                   const ConditionTolerances& tol) {
  ConditionResult res;
  const double support = scaled_support(filter, w);
  int l_max = std::isfinite(support)
                  ? static_cast<int>(std::ceil(std::max(8.0, 1.5 * support + 3.0)))
                  : 30;
  l_max = std::min(l_max, static_cast<int>(tol.max_box));
  const int m = std::clamp(static_cast<int>(std::ceil(20.0 / w)), 20, 200);

  const auto coarse = box_integrals(filter, w, l_max, m);
  const auto fine = box_integrals(filter, w, l_max, 2 * m);
  const auto L = static_cast<std::size_t>(l_max);

  auto rel = [](long double a, long double b) {
    return b == 0.0L ? 0.0 : static_cast<double>(std::abs(b - a) / std::abs(b));
  };
  bool finite = true;
  for (auto v : fine) finite = finite && std::isfinite(static_cast<double>(v));
  std::ostringstream ev;
  ev << "w=" << w << " box=" << l_max;

  // Divergence: over the finite prefix, the last three box increments are
  // positive and non-decreasing.
  std::size_t last = 0;
  while (last + 1 < fine.size() && std::isfinite(static_cast<double>(fine[last + 1]))) ++last;
  bool growing = false;
  if (last >= 4) {
    const long double d1 = fine[last - 2] - fine[last - 3];
    const long double d2 = fine[last - 1] - fine[last - 2];
    const long double d3 = fine[last] - fine[last - 1];
    growing = d1 > 0.0L && d2 >= d1 && d3 >= d2;
  }

  if (!finite) {
    res.verdict = growing ? Verdict::Fail : Verdict::Inconclusive;
    res.metric = std::numeric_limits<double>::infinity();
    ev << " integral leaves the floating-point range";
    res.evidence = ev.str();
    return res;
  }
  const double step1 = rel(fine[L - 1], fine[L]);
  const double step2 = rel(fine[L - 2], fine[L - 1]);
  const double refine = rel(coarse[L], fine[L]);
  res.metric = std::max(step1, step2);
  ev << " I=" << static_cast<double>(fine[L]) << " growth=" << res.metric
     << " refinement=" << refine;
  if (step1 < tol.convergence && step2 < tol.convergence) {
    res.verdict = refine < 1e-2 ? Verdict::Pass : Verdict::Inconclusive;
  } else if (growing) {
    res.verdict = Verdict::Fail;
    ev << " (diverging)";
  } else {
    res.verdict = Verdict::Inconclusive;
  }
  res.evidence = ev.str();
  return res;
}

ConditionResult check_non_negativity(const NCFilter& filter, double w,
                                     const ConditionTolerances& tol) {
  ConditionResult res;
  double range = scaled_support(filter, w);
  if (filter.kind == FilterKind::TriangularProduct) range = w;
  std::ostringstream ev;
  ev << "w=" << w;
  if (!std::isfinite(range) || range > 40.0) {
    res.verdict = Verdict::Inconclusive;
    ev << " support too wide for the transform grid";
    res.evidence = ev.str();
    return res;
  }
  const Grid beta(range, range / 150.0);
  const double a_range = std::max(3.0, 4.0 / w);
  const Grid alpha(a_range, a_range / 60.0);
  const Eigen::ArrayXXd omega = filter_on_grid(
      filter.kind == FilterKind::GaussianS ? NCFilter::gaussian_s(1.0 - (1.0 - filter.s) / (w * w))
                                           : filter.with_width(w),
      beta);
  const Eigen::ArrayXXd ft = phase_space_transform(omega, beta, alpha).real();
  const double lo = ft.minCoeff();
  const double hi = ft.maxCoeff();
  res.metric = lo / hi;
  res.verdict = lo >= -tol.negativity * hi ? Verdict::Pass : Verdict::Fail;
  ev << " min/max=" << res.metric;
  res.evidence = ev.str();
  return res;
}

ConditionResult check_completeness(const NCFilter& filter, double w) {
  ConditionResult res;
  res.verdict = Verdict::Pass;
  std::ostringstream ev;
  ev << "w=" << w;
  const double at_zero = scaled_eval(filter, w, {0.0, 0.0});
  double worst = std::abs(at_zero - 1.0);
  if (worst > 1e-14) res.verdict = Verdict::Fail;

  const double radii[] = {0.1, 0.3, 0.6, 1.0, 1.5, 2.5, 4.0};
  const double angles[] = {0.0, std::numbers::pi / 6, std::numbers::pi / 4, std::numbers::pi / 2};
  for (double r : radii)
    for (double a : angles) {
      const PhasePlanePoint beta = std::polar(r, a);
      double prev = scaled_eval(filter, w, beta);
      const double first = prev;
      for (int k = 1; k <= 4; ++k) {
        const double cur = scaled_eval(filter, w * std::ldexp(1.0, k), beta);
        const double drop = prev - cur;
        const double excess = cur - 1.0;
        worst = std::max({worst, drop, excess});
        if (drop > 1e-12 || excess > 1e-12) res.verdict = Verdict::Fail;
        prev = cur;
      }
      if (first < 1.0 - 1e-12 && !(prev > first)) res.verdict = Verdict::Fail;
    }
  res.metric = worst;
  ev << " Omega(0)=" << at_zero << " worst violation=" << worst;
  res.evidence = ev.str();
  return res;
}

}  // namespace

ConditionReport check_conditions(const NCFilter& filter, std::span<const double> widths,
                                 const ConditionTolerances& tol) {
  if (widths.empty()) fail(ErrorKind::EmptyInput, "no filter widths to check");
  ConditionReport report;
  report.universality.verdict = Verdict::Pass;
  report.non_negativity.verdict = Verdict::Pass;
  report.completeness.verdict = Verdict::Pass;
  for (double w : widths) {
    if (!(w > 0.0)) fail(ErrorKind::ParameterDomain, "filter width must be > 0");
    const auto a = check_universality(filter, w, tol);
    const auto b = check_non_negativity(filter, w, tol);
    const auto c = check_completeness(filter, w);
    merge(report.universality, a.verdict);
    merge(report.non_negativity, b.verdict);
    merge(report.completeness, c.verdict);
    report.universality.metric = std::max(report.universality.metric, a.metric);
    report.non_negativity.metric = std::min(report.non_negativity.metric, b.metric);
    report.completeness.metric = std::max(report.completeness.metric, c.metric);
    auto append = [](std::string& s, const ConditionResult& r) {
      if (!s.empty()) s += "; ";
      s += r.evidence + " -> " + to_string(r.verdict);
    };
    append(report.universality.evidence, a);
    append(report.non_negativity.evidence, b);
    append(report.completeness.evidence, c);
  }
  return report;
}

namespace {

/// C(u)² = 2π ∫₀^R ρ ω(ρ)² e^{2uρ²} dρ by refined trapezoid.
long double weighted_norm_sq(const RadialKernel& kernel, double u, double radius) {
  auto integrate = [&](int n) {
    const long double h = static_cast<long double>(radius) / n;
    long double sum = 0.0L;
    for (int k = 1; k <= n; ++k) {
      const long double rho = k * h;
      const long double w = (k == n) ? 0.5L : 1.0L;
      const long double log_om = kernel.log_profile(static_cast<double>(rho * rho));
      sum += w * rho * std::exp(2.0L * log_om + 2.0L * u * rho * rho);
    }
    return 2.0L * std::numbers::pi_v<long double> * h * sum;
  };
  long double prev = integrate(1024);
  for (int n = 2048; n <= (1 << 20); n *= 2) {
    const long double cur = integrate(n);
    if (!std::isfinite(static_cast<double>(cur))) return cur;
    if (std::abs(cur - prev) <= 1e-12L * std::abs(cur)) return cur;
    prev = cur;
  }
  return prev;
}

}  // namespace

LemmaReport lemma1_bound_check(const RadialKernel& kernel, double u,
                               std::span<const PhasePlanePoint> alphas) {
  if (!(u > 0.0)) fail(ErrorKind::ParameterDomain, "u must be positive");
  LemmaReport report;
  report.u = u;

  long double prev = weighted_norm_sq(kernel, u, kernel.support);
  bool converged = false;
  for (double radius = 2.0 * kernel.support; radius <= 64.0 * kernel.support; radius *= 2.0) {
    const long double cur = weighted_norm_sq(kernel, u, radius);
    if (!std::isfinite(static_cast<double>(cur))) break;
    if (std::abs(cur - prev) <= 1e-10L * std::abs(cur)) {
      converged = true;
      prev = cur;
      break;
    }
    prev = cur;
  }
  if (!converged) {
    report.premise_holds = false;
    report.bound_holds = false;
    report.weighted_norm = std::numeric_limits<double>::infinity();
    report.note = "weighted norm of " + kernel.name + " diverges for u = " + num(u);
    return report;
  }
  report.premise_holds = true;
  report.weighted_norm = std::sqrt(static_cast<double>(prev));
  const double c2 = static_cast<double>(prev);
  report.bound_holds = true;
  for (const auto& alpha : alphas) {
    const double r = std::abs(alpha);
    const double value = std::abs(autocorrelation(kernel, r));
    const double bound = c2 * std::exp(-u * r * r / 2.0);
    report.points.push_back({r, value, bound});
    if (value > bound * (1.0 + 1e-12)) report.bound_holds = false;
  }
  report.note = report.bound_holds ? "bound holds at all points" : "bound violated";
  return report;
}

void save_radial_table(const RadialTable& table, const std::string& csv_path) {
  std::FILE* f = std::fopen(csv_path.c_str(), "w");
  if (!f) fail(ErrorKind::Io, "cannot open '" + csv_path + "' for writing");
  std::fputs("r,omega\n", f);
  for (std::size_t k = 0; k < table.radii().size(); ++k)
    std::fprintf(f, "%.17g,%.17g\n", table.radii()[k], table.values()[k]);
  if (std::fclose(f) != 0) fail(ErrorKind::Io, "failed writing '" + csv_path + "'");

  nlohmann::ordered_json meta;
  meta["kernel"] = table.kernel_name();
  meta["nodes"] = table.radii().size();
  meta["normalization"] = table.normalization();
  meta["r_max"] = table.r_max();
  std::ofstream side(std::filesystem::path(csv_path).replace_extension(".json"));
  if (!side) fail(ErrorKind::Io, "cannot write metadata for '" + csv_path + "'");
  side << meta.dump(2) << '\n';
}

}  // namespace ncq
