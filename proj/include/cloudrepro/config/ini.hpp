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

namespace cloudrepro::config {

struct IniEntry {
  std::string key;
  std::string value;
  int line = 0;

  friend bool operator==(const IniEntry& a, const IniEntry& b) { return a.key == b.key && a.value == b.value; }
};

struct IniSection {
  std::string name;
  std::vector<IniEntry> entries;

  const IniEntry* find(std::string_view key) const;
  /// Appends `key = value` unless the key is already present.
  void set_default(std::string_view key, std::string_view value);

  friend bool operator==(const IniSection&, const IniSection&) = default;
};

/// Parsed INI file: section order and key order are preserved as written.
///
/// Dialect: `[section]` headers, `key = value` pairs, full-line `#`
/// comments, blank lines ignored, CR/LF tolerated. Keys and section names use
/// [A-Za-z0-9_.-]. The value is everything after the first `=`, trimmed; a
/// `#` inside a value is literal. Duplicate sections or duplicate keys within
/// a section are rejected.
class IniDocument {
 public:
  static IniDocument parse(std::string_view text, std::string_view file_name = "<input>");

  const IniSection* find(std::string_view section) const;
  IniSection* find(std::string_view section);
  IniSection& ensure(std::string_view section);

  const std::vector<IniSection>& sections() const { return sections_; }

  friend bool operator==(const IniDocument&, const IniDocument&) = default;

 private:
  std::vector<IniSection> sections_;
};

std::string_view trim(std::string_view s);

/// Splits a comma-separated list, trimming items and dropping empty ones.
std::vector<std::string> split_list(std::string_view value);

}  // namespace cloudrepro::config
