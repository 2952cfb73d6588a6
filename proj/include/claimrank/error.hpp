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

#ifndef CLAIMRANK_ERROR_HPP_
#define CLAIMRANK_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace claimrank {

enum class ErrorCode {
  kParse = 1,
  kValidation,
  kContract,
  kNotFound,
  kUndefinedInput,
  kIo,
  kInvalidArgument,
};

const char* ErrorCodeName(ErrorCode code);

// All library failures are reported as claimrank::Error. `line` is the
// 1-based input line for parse errors and 0 otherwise.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::size_t line = 0);

  ErrorCode code() const { return code_; }
  std::size_t line() const { return line_; }

 private:
  ErrorCode code_;
  std::size_t line_;
};

[[noreturn]] void ThrowParse(std::size_t line, const std::string& message);
[[noreturn]] void ThrowContract(const std::string& message);

}  // namespace claimrank

#endif  // CLAIMRANK_ERROR_HPP_
