#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pairnet {

enum class ErrorKind {
  Io,
  Schema,
  Parse,
  EmptyInput,
  Parameter,
  Dimension,
  Training,
};

std::string_view to_string(ErrorKind kind);

/// All library failures are reported through this one exception type; the
/// kind drives the CLI exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace pairnet
