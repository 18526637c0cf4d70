#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ncq {

enum class ErrorKind {
  ParameterDomain,
  EmptyInput,
  UnsupportedVariant,
  Format,
  InsufficientData,
  Accuracy,
  Range,
  MissingInput,
  Truncation,
  Convention,
  Io,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so the CLI can map it
/// onto an exit code without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace ncq
