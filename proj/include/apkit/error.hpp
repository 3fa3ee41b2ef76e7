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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace apkit {

enum class ErrorCode {
  kMalformedJson,
  kMissingContext,
  kLayerMismatch,
  kNameCollision,
  kCycle,
  kInvalidIr,
  kDatatypeUnion,
  kUnknownClass,
  kMissingEntryPoint,
  kAlreadyExtended,
  kMissingBaseLayer,
  kInadmissibleExtension,
  kUnknownRootClass,
  kUnknownRule,
  kNotAnExtension,
  kNotConformant,
  kPolicyCollision,
  kInvalidPolicy,
  kNetwork,
  kMalformedPayload,
  kMalformedInstance,
  kMalformedRdf,
  kIo,
};

/// Stable upper-snake identifier used in reports and on the CLI, e.g. "LAYER_MISMATCH".
std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace apkit
