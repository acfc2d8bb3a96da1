// Copyright 2026 The htlab Authors
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

#include "htlab/error.hpp"

namespace htlab {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Parameter:
      return "ParameterError";
    case ErrorCode::Domain:
      return "DomainError";
    case ErrorCode::NoKestenRoot:
      return "NoKestenRoot";
    case ErrorCode::UnsupportedBackwardHorizon:
      return "UnsupportedBackwardHorizon";
    case ErrorCode::NotKDependent:
      return "NotKDependent";
    case ErrorCode::AlphaOutOfRange:
      return "AlphaOutOfRange";
    case ErrorCode::Unsupported:
      return "Unsupported";
    case ErrorCode::Undefined:
      return "Undefined";
    case ErrorCode::Precondition:
      return "PreconditionViolated";
    case ErrorCode::Config:
      return "ConfigError";
    case ErrorCode::Io:
      return "IoError";
  }
  return "UnknownError";
}

bool is_numeric(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NoKestenRoot:
    case ErrorCode::NotKDependent:
    case ErrorCode::AlphaOutOfRange:
    case ErrorCode::Unsupported:
    case ErrorCode::Undefined:
    case ErrorCode::UnsupportedBackwardHorizon:
      return true;
    default:
      return false;
  }
}

}  // namespace htlab
