// Copyright 2026 The rnatreedit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "rnatreedit/error.hpp"

namespace rnatreedit {

const char* ToString(ParseErrorCode code) {
  switch (code) {
    case ParseErrorCode::kUnbalancedBrackets: return "UnbalancedBrackets";
    case ParseErrorCode::kLengthMismatch: return "LengthMismatch";
    case ParseErrorCode::kIllegalCharacter: return "IllegalCharacter";
    case ParseErrorCode::kNonCanonicalPair: return "NonCanonicalPair";
    case ParseErrorCode::kNonReciprocalPair: return "NonReciprocalPair";
    case ParseErrorCode::kPseudoknotDetected: return "PseudoknotDetected";
    case ParseErrorCode::kBadRecordCount: return "BadRecordCount";
    case ParseErrorCode::kMalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

ParseError::ParseError(ParseErrorCode code, int line, const std::string& what)
    : std::runtime_error(std::string(ToString(code)) +
                         (line > 0 ? " (line " + std::to_string(line) + ")"
                                   : std::string()) +
                         ": " + what),
      code_(code),
      line_(line) {}

}  // namespace rnatreedit
