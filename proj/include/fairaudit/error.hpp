// Copyright 2026 The FairAudit Authors
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

#ifndef FAIRAUDIT_ERROR_HPP_
#define FAIRAUDIT_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace fairaudit {

enum class ErrorCode {
  kInvalidInput = 1,
  kParseError,
  kEmptyVersionSpace,
  kNonRealizableOracle,
  kInfeasible,
  kNoQueryNeeded,
  kNoCrossing,
  kNotPsd,
  kSizeLimit,
  kDegenerateClass,
  kFeasibilityTimeout,
  kIoError,
  kTransportError,
};

/// Error type carried across every module; the C API maps `code` to a status.
class FaError : public std::runtime_error {
 public:
  FaError(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

const char* error_code_name(ErrorCode code);

}  // namespace fairaudit

#endif  // FAIRAUDIT_ERROR_HPP_
