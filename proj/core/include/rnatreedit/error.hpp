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

#ifndef RNATREEDIT_ERROR_HPP_
#define RNATREEDIT_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace rnatreedit {

enum class ParseErrorCode {
  kUnbalancedBrackets,
  kLengthMismatch,
  kIllegalCharacter,
  kNonCanonicalPair,
  kNonReciprocalPair,
  kPseudoknotDetected,
  kBadRecordCount,
  kMalformedInput,
};

const char* ToString(ParseErrorCode code);

// Raised by the structure and tree readers. `line` is 1-based, 0 if unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorCode code, int line, const std::string& what);

  ParseErrorCode code() const { return code_; }
  int line() const { return line_; }

 private:
  ParseErrorCode code_;
  int line_;
};

// Invalid parameters: negative t, out-of-range fusion depth, bad config keys.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The exhaustive oracles refuse inputs beyond their size or cost budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Colored trees passed to the fine pass come from different coarse passes.
class ColorSetMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Index or table structure is inconsistent with the trees handed in.
class MalformedIndex : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace rnatreedit

#endif  // RNATREEDIT_ERROR_HPP_
