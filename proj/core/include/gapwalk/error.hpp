#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gapwalk {

enum class ErrorCode {
  kDuplicateNode,
  kDanglingEdgeEndpoint,
  kDuplicateEdge,
  kUnknownNode,
  kEmptyGraph,
  kMissingCoordinates,
  kMissingProperty,
  kInvalidTraversal,
  kConfigError,
  kSafetyCapExceeded,
  kNotAnOdf,
  kNotAServer,
  kInvalidParams,
  kDimensionMismatch,
  kEmptyPairSet,
  kTooFewBudgets,
  kParseError,
  kSchemaError,
  kIoError,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library. The code selects the failure class,
/// the message names the offending id, pair, or field.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gapwalk
