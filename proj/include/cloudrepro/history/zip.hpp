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

#include <string>
#include <string_view>
#include <vector>

namespace cloudrepro::history {

struct ZipEntry {
  std::string name;
  std::string bytes;
  friend bool operator==(const ZipEntry&, const ZipEntry&) = default;
};

/// Uncompressed zip archive with entries in the given order and every
/// timestamp set to 1980-01-01 00:00, so equal inputs give equal bytes.
std::string write_zip(const std::vector<ZipEntry>& entries);

/// Reads archives produced by write_zip (stored entries only). Throws
/// Error(ArchiveCorrupt) on structural or checksum errors.
std::vector<ZipEntry> read_zip(std::string_view archive);

}  // namespace cloudrepro::history
