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

#include "cloudrepro/config/ini.hpp"

#include <algorithm>

#include "cloudrepro/core/error.hpp"

namespace cloudrepro::config {
namespace {

bool is_name_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
         c == '.' || c == '-';
}

bool is_name(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), is_name_char);
}

[[noreturn]] void syntax_error(std::string_view file, int line, const std::string& what) {
  throw Error(ErrorCode::MalformedValue, std::string(file) + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_list(std::string_view value) {
  std::vector<std::string> out;
  while (true) {
    const auto comma = value.find(',');
    const auto item = trim(value.substr(0, comma));
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    value.remove_prefix(comma + 1);
  }
  return out;
}

const IniEntry* IniSection::find(std::string_view key) const {
  for (const auto& e : entries)
    if (e.key == key) return &e;
  return nullptr;
}

void IniSection::set_default(std::string_view key, std::string_view value) {
  if (find(key) == nullptr) entries.push_back({std::string(key), std::string(value), 0});
}

const IniSection* IniDocument::find(std::string_view section) const {
  for (const auto& s : sections_)
    if (s.name == section) return &s;
  return nullptr;
}

IniSection* IniDocument::find(std::string_view section) {
  for (auto& s : sections_)
    if (s.name == section) return &s;
  return nullptr;
}

IniSection& IniDocument::ensure(std::string_view section) {
  if (auto* s = find(section)) return *s;
  sections_.push_back({std::string(section), {}});
  return sections_.back();
}

IniDocument IniDocument::parse(std::string_view text, std::string_view file_name) {
  IniDocument doc;
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

  IniSection* current = nullptr;
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    auto line = trim(text.substr(0, nl));
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;

    if (line.empty() || line.front() == '#') continue;

    if (line.front() == '[') {
      if (line.back() != ']') syntax_error(file_name, line_no, "unterminated section header");
      const auto name = trim(line.substr(1, line.size() - 2));
      if (!is_name(name)) syntax_error(file_name, line_no, "invalid section name '" + std::string(name) + "'");
      if (doc.find(name) != nullptr) syntax_error(file_name, line_no, "duplicate section [" + std::string(name) + "]");
      doc.sections_.push_back({std::string(name), {}});
      current = &doc.sections_.back();
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) syntax_error(file_name, line_no, "expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (!is_name(key)) syntax_error(file_name, line_no, "invalid key '" + std::string(key) + "'");
    if (current == nullptr) syntax_error(file_name, line_no, "key '" + std::string(key) + "' outside of any section");
    if (current->find(key) != nullptr)
      syntax_error(file_name, line_no, "duplicate key '" + std::string(key) + "' in [" + current->name + "]");
    current->entries.push_back({std::string(key), std::string(value), line_no});
  }
  return doc;
}

}  // namespace cloudrepro::config
