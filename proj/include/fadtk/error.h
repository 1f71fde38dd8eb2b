// Copyright 2026 The FADTK Authors. All Rights Reserved.
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

#ifndef FADTK_ERROR_H_
#define FADTK_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace fadtk {

enum class ErrorCode {
  kFormat,
  kUnsupportedCodec,
  kIo,
  kInsufficientInput,
  kArgument,
  kSpec,
  kUndefined,
  kInsufficientData,
  kInvalidStats,
  kIncompatibleStats,
  kLookup,
  kNoData,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported as fadtk::Error carrying a code that
// callers (CLI, bindings) can map to exit statuses or exception types.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kFormat: return "format error";
    case ErrorCode::kUnsupportedCodec: return "unsupported codec";
    case ErrorCode::kIo: return "I/O error";
    case ErrorCode::kInsufficientInput: return "insufficient input";
    case ErrorCode::kArgument: return "argument error";
    case ErrorCode::kSpec: return "distortion spec error";
    case ErrorCode::kUndefined: return "undefined";
    case ErrorCode::kInsufficientData: return "insufficient data";
    case ErrorCode::kInvalidStats: return "invalid stats";
    case ErrorCode::kIncompatibleStats: return "incompatible stats";
    case ErrorCode::kLookup: return "lookup error";
    case ErrorCode::kNoData: return "no data";
  }
  return "error";
}

}  // namespace fadtk

#endif  // FADTK_ERROR_H_
