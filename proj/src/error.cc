// Copyright 2026 The ClaimRank Authors.
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

#include "claimrank/error.hpp"

namespace claimrank {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse:
      return "parse error";
    case ErrorCode::kValidation:
      return "validation error";
    case ErrorCode::kContract:
      return "contract error";
    case ErrorCode::kNotFound:
      return "not found";
    case ErrorCode::kUndefinedInput:
      return "undefined input";
    case ErrorCode::kIo:
      return "i/o error";
    case ErrorCode::kInvalidArgument:
      return "invalid argument";
  }
  return "error";
}

Error::Error(ErrorCode code, const std::string& message, std::size_t line)
    : std::runtime_error(message), code_(code), line_(line) {}

void ThrowParse(std::size_t line, const std::string& message) {
  throw Error(ErrorCode::kParse, "line " + std::to_string(line) + ": " + message,
              line);
}

void ThrowContract(const std::string& message) {
  throw Error(ErrorCode::kContract, message);
}

}  // namespace claimrank
