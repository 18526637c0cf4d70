#include "ncq/errors.hpp"

namespace ncq {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParameterDomain: return "parameter-domain";
    case ErrorKind::EmptyInput: return "empty-input";
    case ErrorKind::UnsupportedVariant: return "unsupported-variant";
    case ErrorKind::Format: return "format";
    case ErrorKind::InsufficientData: return "insufficient-data";
    case ErrorKind::Accuracy: return "accuracy";
    case ErrorKind::Range: return "range";
    case ErrorKind::MissingInput: return "missing-input";
    case ErrorKind::Truncation: return "truncation";
    case ErrorKind::Convention: return "convention";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, std::string(to_string(kind)) + " error: " + what);
}

}  // namespace ncq
