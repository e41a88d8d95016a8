#include "pairnet/error.hpp"

namespace pairnet {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Io: return "io error";
    case ErrorKind::Schema: return "schema error";
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::EmptyInput: return "empty-input error";
    case ErrorKind::Parameter: return "parameter error";
    case ErrorKind::Dimension: return "dimension error";
    case ErrorKind::Training: return "training error";
  }
  return "error";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace pairnet
