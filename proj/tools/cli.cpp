#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ncq/bochner.hpp"
#include "ncq/charfunc.hpp"
#include "ncq/filters.hpp"
#include "ncq/fourier.hpp"
#include "ncq/quasiprob.hpp"
#include "ncq/serialize.hpp"
#include "ncq/states.hpp"

namespace ncq::cli {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr double kPi = std::numbers::pi;

struct Options {
  std::string command;
  std::string state;
  std::string data;
  std::string filter = "autocorrelation";
  std::vector<double> widths;
  double s = 0.0;
  double beta_range = 8.0;
  double beta_step = 0.04;
  double alpha_range = 3.0;
  double alpha_step = 0.05;
  std::size_t phases = 12;
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
  bool seed_given = false;
  bool sampled = false;
  std::string error_method = "independent";
  std::size_t resamples = 100;
  double k = 5.0;
  double axis_angle = std::nan("");
  bool allow_truncation = false;
  bool write_charfunc = false;
  std::string test = "modulus";
  std::string points;
  double scan_radius = 3.0;
  double u = 1.0;
  std::size_t lemma_points = 100;
  std::string out;
};

/// Prefixes library errors with the pipeline stage that raised them.
template <typename F>
auto stage(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(e.kind(), std::string(name) + ": " + e.what());
  }
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Io:
    case ErrorKind::Format:
      return 4;
    case ErrorKind::ParameterDomain:
    case ErrorKind::UnsupportedVariant:
    case ErrorKind::MissingInput:
      return 2;
    default:
      return 3;
  }
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

json point_json(PhasePlanePoint p) { return json::array({p.real(), p.imag()}); }

json config_json(const Options& o) {
  json j;
  j["command"] = o.command;
  if (!o.state.empty()) j["state"] = o.state;
  if (!o.data.empty()) j["data"] = o.data;
  j["filter"] = o.filter;
  j["widths"] = o.widths;
  j["s"] = o.s;
  j["beta_range"] = o.beta_range;
  j["beta_step"] = o.beta_step;
  j["alpha_range"] = o.alpha_range;
  j["alpha_step"] = o.alpha_step;
  j["phases"] = o.phases;
  j["samples"] = o.samples;
  j["sampled"] = o.sampled;
  j["error_method"] = o.error_method;
  j["resamples"] = o.resamples;
  j["k"] = o.k;
  if (!std::isnan(o.axis_angle)) j["axis_angle"] = o.axis_angle;
  j["allow_truncation"] = o.allow_truncation;
  return j;
}

json provenance(const Options& o, const std::optional<std::uint64_t>& seed) {
  json j;
  j["version"] = kVersion;
  j["config"] = config_json(o);
  if (seed)
    j["seed"] = *seed;
  else
    j["seed"] = nullptr;
  j["fourier_convention"] = kFourierConvention;
  return j;
}

void write_sidecar(const std::string& path, json meta) {
  meta["file"] = fs::path(path).filename().string();
  write_text(sidecar_path(path), meta.dump(2) + "\n");
}

std::uint64_t resolve_seed(Options& o) {
  if (!o.seed_given) {
    std::random_device rd;
    o.seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    o.seed_given = true;
  }
  return o.seed;
}

NCFilter make_filter(const Options& o, double w) {
  switch (filter_kind_from_string(o.filter)) {
    case FilterKind::TriangularProduct: return NCFilter::triangular(w);
    case FilterKind::Autocorrelation: return NCFilter::autocorrelation(w);
    case FilterKind::GaussianS: return NCFilter::gaussian_s(o.s);
  }
  fail(ErrorKind::ParameterDomain, "unknown filter");
}

void check_grids(const Options& o) {
  for (double w : o.widths)
    if (!(w > 0.0)) fail(ErrorKind::ParameterDomain, "widths must be > 0");
  (void)Grid(o.beta_range, o.beta_step);
  (void)Grid(o.alpha_range, o.alpha_step);
}

AnalyticState single_component(const MixedState& m) {
  if (!m.is_pure_component())
    fail(ErrorKind::UnsupportedVariant, "sampling a mixture is not supported");
  return m.components.front();
}

std::string path_in(const Options& o, const std::string& name) {
  return (fs::path(o.out.empty() ? "." : o.out) / name).string();
}

std::vector<PhasePlanePoint> parse_points(const std::string& text) {
  std::vector<PhasePlanePoint> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    double re = 0.0, im = 0.0;
    char extra = 0;
    const bool pair = std::sscanf(item.c_str(), " %lf , %lf %c", &re, &im, &extra) == 2;
    if (!pair) {
      im = 0.0;
      if (std::sscanf(item.c_str(), " %lf %c", &re, &extra) != 1)
        fail(ErrorKind::ParameterDomain, "malformed point '" + item + "' (expected re[,im])");
    }
    out.emplace_back(re, im);
  }
  if (out.empty()) fail(ErrorKind::ParameterDomain, "no points given");
  return out;
}

int cmd_simulate(Options& o, std::ostream& out) {
  if (o.state.empty()) fail(ErrorKind::MissingInput, "simulate needs --state");
  const auto state = single_component(parse_state(o.state));
  const auto seed = resolve_seed(o);
  const auto phases = default_phases(o.phases);
  const auto data = stage("sample", [&] {
    return sample_quadratures(state, phases, o.samples, seed);
  });
  const std::string path = o.out.empty() ? "dataset.csv" : o.out;
  stage("write", [&] { save_dataset(data, path); });
  out << "phases " << data.phases.size() << ", samples per phase " << o.samples << ", total "
      << data.total_samples() << ", seed " << seed << "\nwrote " << path << "\n";
  return 0;
}

struct Source {
  CharFuncGrid cf;
  std::optional<QuadratureDataset> dataset;
  std::optional<MixedState> state;
};

Source load_source(Options& o, const Grid& beta) {
  Source src;
  if (!o.data.empty()) {
    src.dataset = stage("load", [&] { return load_dataset(o.data); });
    if (src.dataset->seed) {
      o.seed = *src.dataset->seed;
      o.seed_given = true;
    }
  } else if (!o.state.empty()) {
    src.state = parse_state(o.state);
    if (o.sampled) {
      const auto seed = resolve_seed(o);
      const auto phases = default_phases(o.phases);
      src.dataset = stage("sample", [&] {
        return sample_quadratures(single_component(*src.state), phases, o.samples, seed);
      });
    }
  } else {
    fail(ErrorKind::MissingInput, "need --state or --data");
  }
  if (src.dataset)
    src.cf = stage("estimate", [&] { return estimate_on_grid(*src.dataset, beta); });
  else
    src.cf = stage("estimate", [&] { return analytic_on_grid(*src.state, beta); });
  return src;
}

double nearest_sigma(const QuasiprobMap& map, PhasePlanePoint a) {
  const auto h = map.grid.step();
  const auto last = map.grid.size() - 1;
  const auto i = std::clamp<Eigen::Index>(std::lround(a.real() / h) + map.grid.half(), 0, last);
  const auto j = std::clamp<Eigen::Index>(std::lround(a.imag() / h) + map.grid.half(), 0, last);
  return map.sigma(i, j);
}

int cmd_pipeline(Options& o, std::ostream& out) {
  if (o.widths.empty()) o.widths = {1.2};
  check_grids(o);
  const Grid beta(o.beta_range, o.beta_step);
  const Grid alpha(o.alpha_range, o.alpha_step);
  const auto method = error_method_from_string(o.error_method);
  auto src = load_source(o, beta);
  const std::optional<std::uint64_t> seed =
      o.seed_given ? std::optional<std::uint64_t>(o.seed) : std::nullopt;
  const double angle = std::isnan(o.axis_angle) ? kPi / 2 : o.axis_angle;

  if (o.write_charfunc) {
    const auto path = path_in(o, "charfunc.csv");
    stage("write", [&] { write_charfunc_csv(src.cf, path); });
    write_sidecar(path, provenance(o, seed));
  }

  json results = json::array();
  bool any_nonclassical = false;
  for (double w : o.widths) {
    const auto filter = make_filter(o, w);
    const auto filtered = stage("filter", [&] { return apply_filter(src.cf, filter); });
    TransformOptions topt;
    topt.allow_truncation = o.allow_truncation;
    auto map = stage("transform", [&] { return fourier_to_quasiprob(filtered, alpha, topt); });
    ErrorPropagation how;
    how.method = method;
    how.dataset = src.dataset ? &*src.dataset : nullptr;
    how.filter = &filter;
    how.resamples = o.resamples;
    how.seed = o.seed;
    map.sigma = stage("error", [&] { return propagate_error(filtered, alpha, how); });
    map.meta.width = w;
    map.meta.error_method = to_string(method);
    const auto sig = significance(map, o.k);
    const double norm = normalization_check(map);

    const auto t = symmetric_axis(o.alpha_range, o.alpha_step);
    auto section = stage("transform", [&] { return quasiprob_cross_section(filtered, angle, t); });
    const auto dir = std::polar(1.0, angle);
    for (std::size_t n = 0; n < t.size(); ++n) section.sigma[n] = nearest_sigma(map, t[n] * dir);

    json meta = provenance(o, seed);
    meta["filter"] = filter.tag();
    meta["width"] = w;
    meta["beta_grid"] = {{"range", beta.range()}, {"step", beta.step()}};
    meta["alpha_grid"] = {{"range", alpha.range()}, {"step", alpha.step()}};
    meta["error_method"] = to_string(method);
    meta["source"] = map.meta.source;

    const auto map_path = path_in(o, "quasiprob_w" + num(w) + ".csv");
    const auto sec_path = path_in(o, "section_w" + num(w) + ".csv");
    stage("write", [&] {
      write_quasiprob_csv(map, map_path);
      write_sidecar(map_path, meta);
      write_cross_section_csv(section, sec_path);
      json smeta = meta;
      smeta["axis_angle"] = angle;
      write_sidecar(sec_path, smeta);
    });

    json r;
    r["width"] = w;
    r["filter"] = filter.tag();
    r["min"] = sig.min_value;
    r["location"] = point_json(sig.location);
    r["sigma"] = sig.sigma;
    if (sig.infinite)
      r["ratio"] = "inf";
    else
      r["ratio"] = sig.ratio;
    r["verdict"] = sig.verdict;
    r["normalization"] = norm;
    r["normalization_ok"] = normalization_ok(norm);
    r["imag_residue"] = map.imag_residue;
    r["boundary_max"] = filtered.boundary_max();
    results.push_back(r);
    any_nonclassical = any_nonclassical || sig.verdict == "nonclassical";

    out << filter.tag() << ": min " << sig.min_value << " at (" << sig.location.real() << ", "
        << sig.location.imag() << "), ratio " << (sig.infinite ? "inf" : num(sig.ratio)) << ", "
        << sig.verdict << ", normalization " << norm << "\n";
  }

  json verdict = provenance(o, seed);
  verdict["results"] = results;
  verdict["verdict"] = any_nonclassical ? "nonclassical" : "no significant negativity";
  const auto vpath = path_in(o, "verdict.json");
  stage("write", [&] { write_text(vpath, verdict.dump(2) + "\n"); });
  return 0;
}

int cmd_fig1(Options& o, std::ostream& out) {
  if (o.state.empty()) o.state = "squeezed:0.2,5";
  if (o.widths.empty()) o.widths = {1.2, 1.5};
  check_grids(o);
  const auto state = parse_state(o.state);
  const auto t = symmetric_axis(o.beta_range, o.beta_step);
  json summary = provenance(o, std::nullopt);
  json curves = json::array();
  for (double w : o.widths) {
    const auto filter = make_filter(o, w);
    for (const auto& [label, angle] : {std::pair{"squeezed", 0.0}, std::pair{"unsqueezed", kPi / 2}}) {
      const auto cs = charfunc_cross_section(state, filter, angle, t);
      const auto path = path_in(o, "fig1_w" + num(w) + "_" + label + ".csv");
      json meta = provenance(o, std::nullopt);
      meta["filter"] = filter.tag();
      meta["axis"] = label;
      meta["axis_angle"] = angle;
      stage("write", [&] {
        write_cross_section_csv(cs, path, true);
        write_sidecar(path, meta);
      });
      double peak = 0.0, tail = 0.0;
      for (std::size_t n = 0; n < t.size(); ++n) {
        peak = std::max(peak, cs.value[n]);
        if (std::abs(t[n]) >= 6.0 - 1e-12) tail = std::max(tail, std::abs(cs.value[n]));
      }
      curves.push_back({{"width", w}, {"axis", label}, {"peak", peak}, {"max_abs_beyond_6", tail}});
      out << "w=" << w << " " << label << ": peak " << peak << ", |Phi| beyond 6: " << tail << "\n";
    }
  }
  summary["curves"] = curves;
  stage("write", [&] { write_text(path_in(o, "fig1.json"), summary.dump(2) + "\n"); });
  return 0;
}

int cmd_fig2(Options& o, std::ostream& out) {
  if (o.state.empty() && o.data.empty()) o.state = "squeezed:0.2,5";
  if (o.widths.empty()) o.widths = {1.2, 1.5};
  check_grids(o);
  const Grid beta(o.beta_range, o.beta_step);
  auto src = load_source(o, beta);
  const std::optional<std::uint64_t> seed =
      o.seed_given ? std::optional<std::uint64_t>(o.seed) : std::nullopt;
  const auto t = symmetric_axis(o.alpha_range, o.alpha_step);
  json curves = json::array();
  for (double w : o.widths) {
    const auto filter = make_filter(o, w);
    const auto filtered = stage("filter", [&] { return apply_filter(src.cf, filter); });
    if (!o.allow_truncation && truncates_support(filtered))
      fail(ErrorKind::Truncation, "transform: beta grid truncates the filtered support");
    double sigma = 0.0;
    if (src.dataset) {
      const Grid one(o.alpha_step, o.alpha_step);
      sigma = propagate_error(filtered, one)(0, 0);
    }
    // In the α plane the squeezed quadrature lies along the imaginary axis.
    for (const auto& [label, angle] : {std::pair{"squeezed", kPi / 2}, std::pair{"unsqueezed", 0.0}}) {
      const auto cs = stage("transform", [&] { return quasiprob_cross_section(filtered, angle, t, sigma); });
      const auto path = path_in(o, "fig2_w" + num(w) + "_" + label + ".csv");
      json meta = provenance(o, seed);
      meta["filter"] = filter.tag();
      meta["axis"] = label;
      meta["axis_angle"] = angle;
      meta["beta_grid"] = {{"range", beta.range()}, {"step", beta.step()}};
      stage("write", [&] {
        write_cross_section_csv(cs, path);
        write_sidecar(path, meta);
      });
      const auto mid = t.size() / 2;
      double lo = cs.value[0];
      std::size_t at = 0;
      double asym = 0.0;
      for (std::size_t n = 0; n < t.size(); ++n) {
        if (cs.value[n] < lo) {
          lo = cs.value[n];
          at = n;
        }
        asym = std::max(asym, std::abs(cs.value[n] - cs.value[t.size() - 1 - n]));
      }
      curves.push_back({{"width", w},
                        {"axis", label},
                        {"center", cs.value[mid]},
                        {"min", lo},
                        {"min_at", std::abs(t[at])},
                        {"asymmetry", asym}});
      out << "w=" << w << " " << label << ": P(0) " << cs.value[mid] << ", min " << lo
          << " at |t|=" << std::abs(t[at]) << "\n";
    }
  }
  json summary = provenance(o, seed);
  summary["curves"] = curves;
  stage("write", [&] { write_text(path_in(o, "fig2.json"), summary.dump(2) + "\n"); });
  return 0;
}

int cmd_bochner(Options& o, std::ostream& out) {
  BochnerVerdict v;
  const std::optional<std::uint64_t> seed =
      o.seed_given ? std::optional<std::uint64_t>(o.seed) : std::nullopt;
  if (o.test == "determinant") {
    const auto pts = parse_points(o.points);
    DeterminantOptions dopt;
    dopt.k = o.k;
    dopt.resamples = o.resamples;
    dopt.seed = o.seed;
    if (!o.data.empty()) {
      const auto data = stage("load", [&] { return load_dataset(o.data); });
      v = stage("determinant", [&] { return determinant_test(data, pts, dopt); });
    } else if (!o.state.empty()) {
      const auto state = parse_state(o.state);
      v = stage("determinant", [&] { return determinant_test(state, pts, dopt); });
    } else {
      fail(ErrorKind::MissingInput, "need --state or --data");
    }
  } else if (o.test == "modulus") {
    ScanRegion region;
    region.radius = o.scan_radius;
    if (!std::isnan(o.axis_angle)) region.axis_angle = o.axis_angle;
    if (!o.data.empty()) {
      const Grid beta(o.beta_range, o.beta_step);
      const auto src = load_source(o, beta);
      v = stage("modulus", [&] { return modulus_test(src.cf, region, o.k); });
    } else if (!o.state.empty()) {
      const auto state = parse_state(o.state);
      v = stage("modulus", [&] { return modulus_test(state, region); });
    } else {
      fail(ErrorKind::MissingInput, "need --state or --data");
    }
  } else {
    fail(ErrorKind::ParameterDomain, "unknown test '" + o.test + "' (modulus|determinant)");
  }
  json j = json::parse(to_json(v));
  j["provenance"] = provenance(o, seed);
  const auto text = j.dump(2);
  out << text << "\n";
  stage("write", [&] { write_text(path_in(o, "bochner.json"), text + "\n"); });
  return 0;
}

int cmd_filter_check(Options& o, std::ostream& out) {
  if (o.widths.empty()) o.widths = {1.0, 2.0};
  for (double w : o.widths)
    if (!(w > 0.0)) fail(ErrorKind::ParameterDomain, "widths must be > 0");
  const auto filter = make_filter(o, o.widths.front());
  const auto report = stage("conditions", [&] { return check_conditions(filter, o.widths); });

  json j = provenance(o, o.seed);
  j["filter"] = to_string(filter.kind);
  auto cond = [](const ConditionResult& c) {
    return json{{"verdict", to_string(c.verdict)}, {"metric", c.metric}, {"evidence", c.evidence}};
  };
  j["universality"] = cond(report.universality);
  j["non_negativity"] = cond(report.non_negativity);
  j["completeness"] = cond(report.completeness);
  j["all_pass"] = report.all_pass();

  if (filter.kind == FilterKind::Autocorrelation) {
    std::mt19937_64 gen(o.seed);
    std::vector<PhasePlanePoint> alphas;
    for (std::size_t n = 0; n < o.lemma_points; ++n) {
      const double r = 4.0 * static_cast<double>(gen() >> 11) * 0x1.0p-53;
      const double phi = 2 * kPi * static_cast<double>(gen() >> 11) * 0x1.0p-53;
      alphas.push_back(std::polar(r, phi));
    }
    const auto lemma = stage("lemma", [&] {
      return lemma1_bound_check(kernel_by_name(filter.table->kernel_name()), o.u, alphas);
    });
    j["lemma"] = {{"u", lemma.u},
                  {"premise_holds", lemma.premise_holds},
                  {"weighted_norm", lemma.weighted_norm},
                  {"points", lemma.points.size()},
                  {"bound_holds", lemma.bound_holds},
                  {"note", lemma.note}};
    stage("write", [&] { save_radial_table(*filter.table, path_in(o, "radial_table.csv")); });
  }
  const auto text = j.dump(2);
  out << text << "\n";
  stage("write", [&] { write_text(path_in(o, "filter_check.json"), text + "\n"); });
  return 0;
}

void add_grid_options(CLI::App* sub, Options& o) {
  sub->add_option("--beta-range", o.beta_range, "half-width of the beta grid")->capture_default_str();
  sub->add_option("--beta-step", o.beta_step, "beta grid spacing")->capture_default_str();
  sub->add_option("--alpha-range", o.alpha_range, "half-width of the alpha grid")->capture_default_str();
  sub->add_option("--alpha-step", o.alpha_step, "alpha grid spacing")->capture_default_str();
}

void add_filter_options(CLI::App* sub, Options& o) {
  sub->add_option("--filter", o.filter, "autocorrelation | triangular | gaussian-s")->capture_default_str();
  sub->add_option("--width", o.widths, "filter width(s), comma separated")->delimiter(',');
  sub->add_option("--s", o.s, "s parameter of the gaussian-s filter")->capture_default_str();
}

void add_sampling_options(CLI::App* sub, Options& o, CLI::Option*& seed_opt) {
  sub->add_option("--phases", o.phases, "number of equally spaced phases")->capture_default_str();
  sub->add_option("--samples", o.samples, "samples per phase")->capture_default_str();
  seed_opt = sub->add_option("--seed", o.seed, "RNG seed (generated and recorded if absent)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Nonclassicality filters and quasiprobabilities"};
  app.set_config("--config", "", "INI file; command-line flags take precedence");
  app.require_subcommand(1);
  std::vector<CLI::Option*> seed_opts;

  auto* simulate = app.add_subcommand("simulate", "sample homodyne data from an analytic state");
  simulate->add_option("--state", o.state, "e.g. squeezed:0.2,5 | thermal:1 | coherent:1,0 | fock1");
  simulate->add_option("--out", o.out, "dataset CSV path");
  CLI::Option* so = nullptr;
  add_sampling_options(simulate, o, so);
  seed_opts.push_back(so);

  auto* pipeline = app.add_subcommand("pipeline", "estimate, filter, transform, significance");
  for (auto* sub : {pipeline, app.add_subcommand("fig2", "P_Omega cross sections of the squeezed state")}) {
    sub->add_option("--state", o.state, "analytic state");
    sub->add_option("--data", o.data, "dataset CSV");
    sub->add_flag("--sampled", o.sampled, "sample --state instead of using it analytically");
    add_filter_options(sub, o);
    add_grid_options(sub, o);
    add_sampling_options(sub, o, so);
    seed_opts.push_back(so);
    sub->add_option("--error-method", o.error_method, "independent | bootstrap")->capture_default_str();
    sub->add_option("--resamples", o.resamples, "bootstrap resamples")->capture_default_str();
    sub->add_option("--k", o.k, "significance multiple")->capture_default_str();
    sub->add_option("--axis-angle", o.axis_angle, "cross-section direction in the alpha plane (rad)");
    sub->add_flag("--allow-truncation", o.allow_truncation, "transform even if the beta grid truncates");
    sub->add_option("--out", o.out, "output directory");
  }
  pipeline->add_flag("--write-charfunc", o.write_charfunc, "also dump the estimated beta grid");

  auto* fig1 = app.add_subcommand("fig1", "Phi_Omega cross sections of the squeezed state");
  fig1->add_option("--state", o.state, "analytic state");
  add_filter_options(fig1, o);
  add_grid_options(fig1, o);
  fig1->add_option("--out", o.out, "output directory");

  auto* bochner = app.add_subcommand("bochner", "modulus and determinant tests");
  bochner->add_option("--state", o.state, "analytic state");
  bochner->add_option("--data", o.data, "dataset CSV");
  bochner->add_option("--test", o.test, "modulus | determinant")->capture_default_str();
  bochner->add_option("--points", o.points, "determinant points 're,im;re,im;...'");
  bochner->add_option("--scan-radius", o.scan_radius, "modulus scan radius")->capture_default_str();
  bochner->add_option("--axis-angle", o.axis_angle, "restrict the modulus scan to a line (rad)");
  bochner->add_option("--k", o.k, "significance multiple")->capture_default_str();
  bochner->add_option("--resamples", o.resamples, "resampled matrices for the D_N error")->capture_default_str();
  add_grid_options(bochner, o);
  seed_opts.push_back(bochner->add_option("--seed", o.seed, "seed for resampled matrices"));
  bochner->add_option("--out", o.out, "output directory");

  auto* check = app.add_subcommand("filter-check", "conditions (a)-(c) and the decay bound");
  add_filter_options(check, o);
  check->add_option("--u", o.u, "exponent of the decay bound")->capture_default_str();
  check->add_option("--lemma-points", o.lemma_points, "random alpha points")->capture_default_str();
  seed_opts.push_back(check->add_option("--seed", o.seed, "seed for the alpha points"));
  check->add_option("--out", o.out, "output directory");

  std::vector<std::string> argv_store{"ncq"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "ncq: " << e.what() << "\n" << app.help();
    return 2;
  }
  for (auto* s : seed_opts)
    if (s && s->count() > 0) o.seed_given = true;

  auto* sub = app.get_subcommands().front();
  try {
    o.command = sub->get_name();
    if (sub == simulate) return cmd_simulate(o, out);
    if (sub == pipeline) return cmd_pipeline(o, out);
    if (sub == fig1) return cmd_fig1(o, out);
    if (o.command == "fig2") return cmd_fig2(o, out);
    if (sub == bochner) return cmd_bochner(o, out);
    if (sub == check) return cmd_filter_check(o, out);
  } catch (const Error& e) {
    err << "ncq: " << e.what() << "\n";
    const int code = exit_code(e.kind());
    if (code == 2) err << sub->help();
    return code;
  } catch (const std::exception& e) {
    err << "ncq: " << e.what() << "\n";
    return 3;
  }
  return 2;
}

}  // namespace ncq::cli
