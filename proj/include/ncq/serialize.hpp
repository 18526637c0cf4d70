#pragma once

#include <string>

#include "ncq/charfunc.hpp"
#include "ncq/quasiprob.hpp"

namespace ncq {

inline constexpr const char* kVersion = "0.1.0";

/// Writes `content` to `path`, creating parent directories. Io error on failure.
void write_text(const std::string& path, const std::string& content);

/// `# range=.. step=.. n_samples=.. source=.. filter=..` then
/// `beta_r,beta_i,re,im,sigma` rows.
void write_charfunc_csv(const CharFuncGrid& cf, const std::string& path);

/// `alpha_r,alpha_i,P,sigma` rows, real part fastest.
void write_quasiprob_csv(const QuasiprobMap& map, const std::string& path);

/// `t,value,sigma`, or `t,re,im,sigma` when `complex_values` is set.
void write_cross_section_csv(const CrossSection& section, const std::string& path,
                             bool complex_values = false);

}  // namespace ncq
