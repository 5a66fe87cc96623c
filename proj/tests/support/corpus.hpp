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

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cloudrepro/config/parse.hpp"
#include "cloudrepro/core/error.hpp"

namespace cloudrepro::testing {

/// One labelled request triple: `expect` is "ok" or an ErrorCode name.
struct CorpusCase {
  std::string name;
  std::string expect;
  std::string resources;
  std::string application;
  std::string personal;
  nlohmann::json fields;
};

namespace corpus_detail {

inline std::string& pick(CorpusCase& c, const std::string& file) {
  if (file == "resources") return c.resources;
  if (file == "application") return c.application;
  if (file == "personal") return c.personal;
  throw std::runtime_error("corpus: unknown file " + file);
}

// Drops `[name]` and its body up to the next header.
inline std::string cut_section(const std::string& text, const std::string& name) {
  const auto start = text.find("[" + name + "]");
  if (start == std::string::npos) throw std::runtime_error("corpus: no section " + name);
  auto end = text.find("\n[", start + 1);
  end = end == std::string::npos ? text.size() : end + 1;
  return text.substr(0, start) + text.substr(end);
}

}  // namespace corpus_detail

/// Expands the base triple and edit lists of a corpus file.
inline std::vector<CorpusCase> load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("corpus: cannot open " + path);
  const auto j = nlohmann::json::parse(in);
  std::vector<CorpusCase> out;
  for (const auto& c : j.at("cases")) {
    CorpusCase k{c.at("name"), c.at("expect"), j.at("base").at("resources"), j.at("base").at("application"),
                 j.at("base").at("personal"), c.value("fields", nlohmann::json::object())};
    for (const auto& e : c.at("edits")) {
      auto& text = corpus_detail::pick(k, e.at("file"));
      if (e.contains("replace")) {
        const std::string from = e["replace"][0], to = e["replace"][1];
        const auto pos = text.find(from);
        if (pos == std::string::npos) throw std::runtime_error("corpus: '" + from + "' absent in " + k.name);
        text.replace(pos, from.size(), to);
      } else if (e.contains("cut_section")) {
        text = corpus_detail::cut_section(text, e["cut_section"]);
      } else if (e.contains("append")) {
        text += "\n" + e["append"].get<std::string>();
      } else if (e.contains("text")) {
        text = e["text"];
      } else if (e.value("crlf", false)) {
        std::string crlf;
        for (char ch : text) crlf += ch == '\n' ? std::string("\r\n") : std::string(1, ch);
        text = crlf;
      }
    }
    out.push_back(std::move(k));
  }
  return out;
}

struct Classification {
  std::string label;  // "ok" or the error code name
  config::ParsedRequest parsed;
};

inline Classification classify(const CorpusCase& c) {
  try {
    return {"ok", config::parse_abstract_request(c.resources, c.application, c.personal)};
  } catch (const Error& e) {
    return {std::string(to_string(e.code())), {}};
  }
}

/// Compares the optional field expectations of an accepted case; returns
/// mismatch descriptions.
inline std::vector<std::string> check_fields(const CorpusCase& c, const config::ParsedRequest& p) {
  std::vector<std::string> bad;
  const auto& r = p.request;
  const auto& provider = r.personal.cloud_provider;
  auto expect = [&](const char* key, const nlohmann::json& actual) {
    if (c.fields.contains(key) && c.fields.at(key) != actual)
      bad.push_back(std::string(key) + ": expected " + c.fields.at(key).dump() + ", got " + actual.dump());
  };
  expect("engine", std::string(config::to_string(r.resources.bigdata_engine)));
  expect("provider", provider);
  expect("nodes", r.resources.instance_number(provider));
  expect("region", provider == "aws" && r.resources.aws     ? r.resources.aws->region
                   : provider == "azure" && r.resources.azure ? r.resources.azure->region
                                                              : std::string());
  expect("python_runtime", r.personal.python_runtime);
  expect("inputs", r.application.data_uri.size());
  expect("bootstrap", r.application.bootstrap.size());
  expect("command", r.application.command);
  expect("warnings", p.warnings.size());
  return bad;
}

}  // namespace cloudrepro::testing
