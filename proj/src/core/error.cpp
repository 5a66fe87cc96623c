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

#include "cloudrepro/core/error.hpp"

namespace cloudrepro {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownEngine: return "UnknownEngine";
    case ErrorCode::MissingRequiredKey: return "MissingRequiredKey";
    case ErrorCode::MalformedValue: return "MalformedValue";
    case ErrorCode::ProviderMismatch: return "ProviderMismatch";
    case ErrorCode::UnmappedService: return "UnmappedService";
    case ErrorCode::UnsupportedProvider: return "UnsupportedProvider";
    case ErrorCode::UnsupportedEngineOnProvider: return "UnsupportedEngineOnProvider";
    case ErrorCode::DeploymentRejected: return "DeploymentRejected";
    case ErrorCode::UnknownInstanceType: return "UnknownInstanceType";
    case ErrorCode::QuotaExceeded: return "QuotaExceeded";
    case ErrorCode::NoSuchKey: return "NoSuchKey";
    case ErrorCode::NoSuchImage: return "NoSuchImage";
    case ErrorCode::ClockModeViolation: return "ClockModeViolation";
    case ErrorCode::StorageFailure: return "StorageFailure";
    case ErrorCode::AnalyticsFailure: return "AnalyticsFailure";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::RedactionViolation: return "RedactionViolation";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::MalformedURL: return "MalformedURL";
    case ErrorCode::UnknownField: return "UnknownField";
    case ErrorCode::ArchiveCorrupt: return "ArchiveCorrupt";
    case ErrorCode::InvalidMerge: return "InvalidMerge";
    case ErrorCode::OpenLedger: return "OpenLedger";
    case ErrorCode::NonPositiveBaseline: return "NonPositiveBaseline";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SuiteParse: return "SuiteParse";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace cloudrepro
