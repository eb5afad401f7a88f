#include "gapwalk/error.hpp"

namespace gapwalk {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDuplicateNode: return "DuplicateNode";
    case ErrorCode::kDanglingEdgeEndpoint: return "DanglingEdgeEndpoint";
    case ErrorCode::kDuplicateEdge: return "DuplicateEdge";
    case ErrorCode::kUnknownNode: return "UnknownNode";
    case ErrorCode::kEmptyGraph: return "EmptyGraph";
    case ErrorCode::kMissingCoordinates: return "MissingCoordinates";
    case ErrorCode::kMissingProperty: return "MissingProperty";
    case ErrorCode::kInvalidTraversal: return "InvalidTraversal";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kSafetyCapExceeded: return "SafetyCapExceeded";
    case ErrorCode::kNotAnOdf: return "NotAnOdf";
    case ErrorCode::kNotAServer: return "NotAServer";
    case ErrorCode::kInvalidParams: return "InvalidParams";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kEmptyPairSet: return "EmptyPairSet";
    case ErrorCode::kTooFewBudgets: return "TooFewBudgets";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kSchemaError: return "SchemaError";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace gapwalk
