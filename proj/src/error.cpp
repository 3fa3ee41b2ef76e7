// Copyright 2026 The apkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "apkit/error.hpp"

namespace apkit {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedJson: return "MALFORMED_JSON";
    case ErrorCode::kMissingContext: return "MISSING_CONTEXT";
    case ErrorCode::kLayerMismatch: return "LAYER_MISMATCH";
    case ErrorCode::kNameCollision: return "NAME_COLLISION";
    case ErrorCode::kCycle: return "CYCLE";
    case ErrorCode::kInvalidIr: return "INVALID_IR";
    case ErrorCode::kDatatypeUnion: return "DATATYPE_UNION";
    case ErrorCode::kUnknownClass: return "UNKNOWN_CLASS";
    case ErrorCode::kMissingEntryPoint: return "MISSING_ENTRY_POINT";
    case ErrorCode::kAlreadyExtended: return "ALREADY_EXTENDED";
    case ErrorCode::kMissingBaseLayer: return "MISSING_BASE_LAYER";
    case ErrorCode::kInadmissibleExtension: return "INADMISSIBLE_EXTENSION";
    case ErrorCode::kUnknownRootClass: return "UNKNOWN_ROOT_CLASS";
    case ErrorCode::kUnknownRule: return "UNKNOWN_RULE";
    case ErrorCode::kNotAnExtension: return "NOT_AN_EXTENSION";
    case ErrorCode::kNotConformant: return "NOT_CONFORMANT";
    case ErrorCode::kPolicyCollision: return "POLICY_COLLISION";
    case ErrorCode::kInvalidPolicy: return "INVALID_POLICY";
    case ErrorCode::kNetwork: return "NETWORK";
    case ErrorCode::kMalformedPayload: return "MALFORMED_PAYLOAD";
    case ErrorCode::kMalformedInstance: return "MALFORMED_INSTANCE";
    case ErrorCode::kMalformedRdf: return "MALFORMED_RDF";
    case ErrorCode::kIo: return "IO";
  }
  return "UNKNOWN";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace apkit
