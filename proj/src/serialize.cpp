#include "ncq/serialize.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace ncq {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_text(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  std::error_code ec;
  const auto parent = fs::path(path).parent_path();
  if (!parent.empty()) fs::create_directories(parent, ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::Io, "cannot open '" + path + "' for writing");
  out << content;
  out.close();
  if (!out) fail(ErrorKind::Io, "failed writing '" + path + "'");
}

void write_charfunc_csv(const CharFuncGrid& cf, const std::string& path) {
  std::string s;
  s += "# range=" + fmt(cf.grid.range()) + " step=" + fmt(cf.grid.step()) +
       " n_samples=" + std::to_string(cf.n_samples(cf.grid.center(), cf.grid.center())) +
       " source=" + (cf.source == CharFuncSource::Analytic ? "analytic" : "sampled");
  if (!cf.filter_tag.empty()) s += " filter=" + cf.filter_tag;
  s += "\nbeta_r,beta_i,re,im,sigma\n";
  for (Eigen::Index j = 0; j < cf.grid.size(); ++j)
    for (Eigen::Index i = 0; i < cf.grid.size(); ++i) {
      const auto b = cf.grid.point(i, j);
      s += fmt(b.real()) + ',' + fmt(b.imag()) + ',' + fmt(cf.values(i, j).real()) + ',' +
           fmt(cf.values(i, j).imag()) + ',' + fmt(cf.sigma(i, j)) + '\n';
    }
  write_text(path, s);
}

void write_quasiprob_csv(const QuasiprobMap& map, const std::string& path) {
  std::string s = "alpha_r,alpha_i,P,sigma\n";
  for (Eigen::Index j = 0; j < map.grid.size(); ++j)
    for (Eigen::Index i = 0; i < map.grid.size(); ++i) {
      const auto a = map.grid.point(i, j);
      s += fmt(a.real()) + ',' + fmt(a.imag()) + ',' + fmt(map.values(i, j)) + ',' +
           fmt(map.sigma(i, j)) + '\n';
    }
  write_text(path, s);
}

void write_cross_section_csv(const CrossSection& section, const std::string& path,
                             bool complex_values) {
  std::string s = complex_values ? "t,re,im,sigma\n" : "t,value,sigma\n";
  for (std::size_t k = 0; k < section.t.size(); ++k) {
    s += fmt(section.t[k]) + ',' + fmt(section.value[k]) + ',';
    if (complex_values) s += fmt(section.imag[k]) + ',';
    s += fmt(section.sigma[k]) + '\n';
  }
  write_text(path, s);
}

}  // namespace ncq
