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

#include "cloudrepro/history/url.hpp"

#include <algorithm>

#include "cloudrepro/core/error.hpp"

namespace cloudrepro::history {

namespace {

bool valid_segment(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '-' || c == '_' || c == '.';
  });
}

}  // namespace

std::string HistoryURL::to_string() const {
  return std::string(kUrlScheme) + "://" + provider + "/" + store + "/" + execution_id;
}

HistoryURL HistoryURL::parse(std::string_view text) {
  const std::string prefix = std::string(kUrlScheme) + "://";
  if (!text.starts_with(prefix)) throw Error(ErrorCode::MalformedURL, "expected rpac:// URL, got '" + std::string(text) + "'");
  std::string_view rest = text.substr(prefix.size());
  HistoryURL url;
  std::string* parts[] = {&url.provider, &url.store, &url.execution_id};
  for (int i = 0; i < 3; ++i) {
    const auto slash = rest.find('/');
    const auto seg = i < 2 ? rest.substr(0, slash) : rest;
    if ((i < 2 && slash == std::string_view::npos) || !valid_segment(seg))
      throw Error(ErrorCode::MalformedURL, "malformed history URL '" + std::string(text) + "'");
    *parts[i] = std::string(seg);
    if (i < 2) rest.remove_prefix(slash + 1);
  }
  return url;
}

}  // namespace cloudrepro::history
