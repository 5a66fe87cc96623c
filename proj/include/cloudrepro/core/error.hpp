// Copyright 2026 The cloudrepro Authors
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

namespace cloudrepro {

enum class ErrorCode {
  // request configuration
  UnknownEngine,
  MissingRequiredKey,
  MalformedValue,
  ProviderMismatch,
  // pipeline generation
  UnmappedService,
  UnsupportedProvider,
  UnsupportedEngineOnProvider,
  // runtime and simulated cloud
  DeploymentRejected,
  UnknownInstanceType,
  QuotaExceeded,
  NoSuchKey,
  NoSuchImage,
  ClockModeViolation,
  StorageFailure,
  AnalyticsFailure,
  InvalidState,
  // history
  RedactionViolation,
  NotFound,
  MalformedURL,
  UnknownField,
  ArchiveCorrupt,
  // reproduction
  InvalidMerge,
  // metrics
  OpenLedger,
  NonPositiveBaseline,
  InsufficientSamples,
  // generic
  InvalidArgument,
  SuiteParse,
  Io,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cloudrepro
