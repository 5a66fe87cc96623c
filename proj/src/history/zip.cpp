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

#include "cloudrepro/history/zip.hpp"

#include <zlib.h>

#include <cstdint>
#include <limits>

#include "cloudrepro/core/error.hpp"

namespace cloudrepro::history {

namespace {

constexpr std::uint32_t kLocalHeader = 0x04034b50;
constexpr std::uint32_t kCentralHeader = 0x02014b50;
constexpr std::uint32_t kEndOfCentral = 0x06054b50;
constexpr std::uint16_t kVersion = 20;
constexpr std::uint16_t kDosDate = (0 << 9) | (1 << 5) | 1;  // 1980-01-01
constexpr std::uint16_t kDosTime = 0;

void put16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>(v >> 8));
}

void put32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint32_t crc_of(std::string_view bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed in chunks.
  while (!bytes.empty()) {
    const auto n = static_cast<uInt>(std::min<std::size_t>(bytes.size(), std::numeric_limits<uInt>::max()));
    crc = crc32(crc, reinterpret_cast<const Bytef*>(bytes.data()), n);
    bytes.remove_prefix(n);
  }
  return static_cast<std::uint32_t>(crc);
}

[[noreturn]] void corrupt(const std::string& what) { throw Error(ErrorCode::ArchiveCorrupt, what); }

struct Reader {
  std::string_view data;
  std::uint16_t u16(std::size_t at) const {
    if (at + 2 > data.size()) corrupt("truncated archive");
    return static_cast<std::uint16_t>(static_cast<unsigned char>(data[at]) |
                                      (static_cast<unsigned char>(data[at + 1]) << 8));
  }
  std::uint32_t u32(std::size_t at) const { return u16(at) | (static_cast<std::uint32_t>(u16(at + 2)) << 16); }
  std::string_view bytes(std::size_t at, std::size_t n) const {
    if (at > data.size() || n > data.size() - at) corrupt("truncated archive");
    return data.substr(at, n);
  }
};

}  // namespace

std::string write_zip(const std::vector<ZipEntry>& entries) {
  if (entries.size() > 0xffff) throw Error(ErrorCode::InvalidArgument, "too many archive entries");
  std::string out;
  std::string central;
  for (const auto& e : entries) {
    if (e.name.size() > 0xffff || e.bytes.size() > 0xfffffffeULL)
      throw Error(ErrorCode::InvalidArgument, "archive entry too large: " + e.name);
    const auto offset = static_cast<std::uint32_t>(out.size());
    const auto crc = crc_of(e.bytes);
    const auto size = static_cast<std::uint32_t>(e.bytes.size());
    const auto name_len = static_cast<std::uint16_t>(e.name.size());

    put32(out, kLocalHeader);
    put16(out, kVersion);
    put16(out, 0);  // flags
    put16(out, 0);  // stored
    put16(out, kDosTime);
    put16(out, kDosDate);
    put32(out, crc);
    put32(out, size);
    put32(out, size);
    put16(out, name_len);
    put16(out, 0);
    out += e.name;
    out += e.bytes;

    put32(central, kCentralHeader);
    put16(central, kVersion);
    put16(central, kVersion);
    put16(central, 0);
    put16(central, 0);
    put16(central, kDosTime);
    put16(central, kDosDate);
    put32(central, crc);
    put32(central, size);
    put32(central, size);
    put16(central, name_len);
    put16(central, 0);  // extra
    put16(central, 0);  // comment
    put16(central, 0);  // disk
    put16(central, 0);  // internal attributes
    put32(central, 0);  // external attributes
    put32(central, offset);
    central += e.name;
  }
  const auto central_offset = static_cast<std::uint32_t>(out.size());
  out += central;
  put32(out, kEndOfCentral);
  put16(out, 0);
  put16(out, 0);
  put16(out, static_cast<std::uint16_t>(entries.size()));
  put16(out, static_cast<std::uint16_t>(entries.size()));
  put32(out, static_cast<std::uint32_t>(central.size()));
  put32(out, central_offset);
  put16(out, 0);
  return out;
}

std::vector<ZipEntry> read_zip(std::string_view archive) {
  Reader r{archive};
  if (archive.size() < 22) corrupt("archive shorter than its trailer");
  const std::size_t eocd = archive.size() - 22;
  if (r.u32(eocd) != kEndOfCentral) corrupt("missing end-of-central-directory record");
  const std::size_t count = r.u16(eocd + 10);
  std::size_t at = r.u32(eocd + 16);
  std::vector<ZipEntry> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (r.u32(at) != kCentralHeader) corrupt("bad central directory entry");
    if (r.u16(at + 10) != 0) corrupt("compressed entries are not supported");
    const auto crc = r.u32(at + 16);
    const auto size = r.u32(at + 20);
    const auto name_len = r.u16(at + 28);
    const auto extra_len = r.u16(at + 30);
    const auto comment_len = r.u16(at + 32);
    const std::size_t local = r.u32(at + 42);
    std::string name(r.bytes(at + 46, name_len));
    at += 46 + name_len + extra_len + comment_len;

    if (r.u32(local) != kLocalHeader) corrupt("bad local header for " + name);
    const auto local_name_len = r.u16(local + 26);
    const auto local_extra_len = r.u16(local + 28);
    if (r.bytes(local + 30, local_name_len) != name) corrupt("name mismatch for " + name);
    std::string bytes(r.bytes(local + 30 + local_name_len + local_extra_len, size));
    if (crc_of(bytes) != crc) corrupt("checksum mismatch for " + name);
    out.push_back({std::move(name), std::move(bytes)});
  }
  return out;
}

}  // namespace cloudrepro::history
