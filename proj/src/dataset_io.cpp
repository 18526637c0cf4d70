#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <string>

#include <json.hpp>

#include "ncq/states.hpp"

namespace ncq {

namespace {

std::string line_error(std::size_t line, const std::string& what) {
  return "line " + std::to_string(line) + ": " + what;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

double parse_field(std::string_view field, std::size_t line, const char* name) {
  field = trim(field);
  double v = 0.0;
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, v);
  if (field.empty() || ec != std::errc{} || ptr != end || !std::isfinite(v))
    fail(ErrorKind::Format,
         line_error(line, std::string("non-numeric ") + name + " '" + std::string(field) + "'"));
  return v;
}

}  // namespace

std::string sidecar_path(const std::string& path) {
  return std::filesystem::path(path).replace_extension(".json").string();
}

void save_dataset(const QuadratureDataset& dataset, const std::string& path) {
  dataset.validate();
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) fail(ErrorKind::Io, "cannot open '" + path + "' for writing");
  bool ok = std::fputs("phase,x\n", f) >= 0;
  for (std::size_t p = 0; p < dataset.phases.size() && ok; ++p)
    for (double x : dataset.samples[p])
      if (std::fprintf(f, "%.17g,%.17g\n", dataset.phases[p], x) < 0) {
        ok = false;
        break;
      }
  ok = (std::fclose(f) == 0) && ok;
  if (!ok) fail(ErrorKind::Io, "failed writing '" + path + "'");

  nlohmann::ordered_json meta;
  meta["format"] = "quadrature-dataset";
  meta["source"] = dataset.source == DataSource::Synthetic ? "synthetic" : "file";
  meta["state"] = dataset.description;
  if (dataset.seed) meta["seed"] = *dataset.seed;
  meta["n_phases"] = dataset.phases.size();
  meta["n_per_phase"] = dataset.min_samples_per_phase();
  meta["total_samples"] = dataset.total_samples();
  std::ofstream side(sidecar_path(path));
  if (!side) fail(ErrorKind::Io, "cannot write sidecar for '" + path + "'");
  side << meta.dump(2) << '\n';
}

QuadratureDataset load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open '" + path + "'");

  std::map<double, std::vector<double>> groups;
  std::string text;
  std::size_t line = 0;
  bool header_seen = false;
  while (std::getline(in, text)) {
    ++line;
    const std::string_view row = trim(text);
    if (row.empty()) continue;
    if (!header_seen) {
      if (row != "phase,x")
        fail(ErrorKind::Format, line_error(line, "expected header 'phase,x'"));
      header_seen = true;
      continue;
    }
    const auto comma = row.find(',');
    if (comma == std::string_view::npos || row.find(',', comma + 1) != std::string_view::npos)
      fail(ErrorKind::Format, line_error(line, "expected two comma-separated fields"));
    const double phase = parse_field(row.substr(0, comma), line, "phase");
    const double x = parse_field(row.substr(comma + 1), line, "quadrature");
    if (!(phase >= 0.0 && phase < std::numbers::pi))
      fail(ErrorKind::Format, line_error(line, "phase outside [0, pi)"));
    groups[phase].push_back(x);
  }
  if (groups.empty()) fail(ErrorKind::EmptyInput, "'" + path + "' contains no samples");

  QuadratureDataset out;
  out.source = DataSource::File;
  for (auto& [phase, xs] : groups) {
    out.phases.push_back(phase);
    out.samples.push_back(std::move(xs));
  }

  const auto side = sidecar_path(path);
  if (std::filesystem::exists(side)) {
    std::ifstream s(side);
    try {
      const auto meta = nlohmann::json::parse(s);
      if (meta.contains("seed")) out.seed = meta.at("seed").get<std::uint64_t>();
      if (meta.contains("state")) out.description = meta.at("state").get<std::string>();
      if (meta.value("source", "") == "synthetic") out.source = DataSource::Synthetic;
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorKind::Format, "sidecar '" + side + "': " + e.what());
    }
  }
  out.validate();
  return out;
}

}  // namespace ncq
