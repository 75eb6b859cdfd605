// Copyright 2026 The MutualCover Authors
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

#ifndef MCOVER_ERROR_H_
#define MCOVER_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace mcover {

enum class ErrorCode {
  kInvalidArgument,
  kParse,
  kMissingColumn,
  kDomainViolation,
  kInfeasiblePartition,
  kShapeMismatch,
  kIo,
  kInternal,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every failure surfaced by the library is an Error carrying a code, so
// callers (and tests) can branch on the category without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void Fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace mcover

#endif  // MCOVER_ERROR_H_
