// Copyright 2026 The MoPS Authors
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
//
////////////////////////////////////////////////////////////////////////////////
#include "mops/zip.h"

#include <zlib.h>

#include <algorithm>
#include <set>

#include "mops/error.h"

namespace mops {

namespace {

constexpr std::uint32_t kLocalSig = 0x04034b50;
constexpr std::uint32_t kCentralSig = 0x02014b50;
constexpr std::uint32_t kEndSig = 0x06054b50;
constexpr std::uint16_t kDosDate = (0 << 9) | (1 << 5) | 1;  // 1980-01-01
constexpr std::uint16_t kVersion = 20;
constexpr std::uint16_t kUtf8Flag = 1 << 11;

void Put16(Bytes& out, std::uint16_t v) {
  out.push_back(v & 0xff);
  out.push_back(v >> 8);
}

void Put32(Bytes& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back((v >> (8 * i)) & 0xff);
}

std::uint16_t Get16(ByteView in, std::size_t at) {
  if (at + 2 > in.size()) throw Error(Errc::kParse, "zip: truncated");
  return static_cast<std::uint16_t>(in[at] | (in[at + 1] << 8));
}

std::uint32_t Get32(ByteView in, std::size_t at) {
  if (at + 4 > in.size()) throw Error(Errc::kParse, "zip: truncated");
  return static_cast<std::uint32_t>(in[at]) | (std::uint32_t{in[at + 1]} << 8) |
         (std::uint32_t{in[at + 2]} << 16) | (std::uint32_t{in[at + 3]} << 24);
}

std::uint32_t Crc(ByteView data) {
  uLong c = crc32(0L, Z_NULL, 0);
  std::size_t off = 0;
  while (off < data.size()) {
    const auto n = static_cast<uInt>(std::min<std::size_t>(data.size() - off, 1u << 30));
    c = crc32(c, data.data() + off, n);
    off += n;
  }
  return static_cast<std::uint32_t>(c);
}

Bytes Deflate(ByteView data) {
  z_stream s{};
  if (deflateInit2(&s, 6, Z_DEFLATED, -15, 8, Z_DEFAULT_STRATEGY) != Z_OK) {
    throw Error(Errc::kStorage, "zip: deflateInit failed");
  }
  Bytes out(deflateBound(&s, data.size()));
  s.next_in = const_cast<Bytef*>(data.data());
  s.avail_in = static_cast<uInt>(data.size());
  s.next_out = out.data();
  s.avail_out = static_cast<uInt>(out.size());
  const int rc = deflate(&s, Z_FINISH);
  out.resize(s.total_out);
  deflateEnd(&s);
  if (rc != Z_STREAM_END) throw Error(Errc::kStorage, "zip: deflate failed");
  return out;
}

Bytes Inflate(ByteView data, std::size_t expected) {
  z_stream s{};
  if (inflateInit2(&s, -15) != Z_OK) {
    throw Error(Errc::kParse, "zip: inflateInit failed");
  }
  Bytes out(expected);
  s.next_in = const_cast<Bytef*>(data.data());
  s.avail_in = static_cast<uInt>(data.size());
  s.next_out = out.data();
  s.avail_out = static_cast<uInt>(out.size());
  const int rc = inflate(&s, Z_FINISH);
  const bool whole = rc == Z_STREAM_END && s.total_out == expected &&
                     s.avail_in == 0;
  inflateEnd(&s);
  if (!whole) throw Error(Errc::kParse, "zip: corrupt deflate stream");
  return out;
}

}  // namespace

Bytes WriteZip(const std::vector<ZipEntry>& entries) {
  Bytes out;
  Bytes central;
  std::set<std::string> seen;
  for (const ZipEntry& e : entries) {
    if (e.name.empty() || e.name.size() > 0xffff || !seen.insert(e.name).second) {
      throw Error(Errc::kUsage, "zip: bad or duplicate entry name '" + e.name + "'");
    }
    if (e.content.size() >= 0xffffffffu || out.size() >= 0xffffffffu) {
      throw Error(Errc::kUsage, "zip: archive too large");
    }
    const std::uint32_t crc = Crc(e.content);
    Bytes packed = Deflate(e.content);
    std::uint16_t method = 8;
    if (packed.size() >= e.content.size()) {
      packed = e.content;
      method = 0;
    }
    const auto offset = static_cast<std::uint32_t>(out.size());
    const auto name_len = static_cast<std::uint16_t>(e.name.size());

    Put32(out, kLocalSig);
    Put16(out, kVersion);
    Put16(out, kUtf8Flag);
    Put16(out, method);
    Put16(out, 0);
    Put16(out, kDosDate);
    Put32(out, crc);
    Put32(out, static_cast<std::uint32_t>(packed.size()));
    Put32(out, static_cast<std::uint32_t>(e.content.size()));
    Put16(out, name_len);
    Put16(out, 0);
    out.insert(out.end(), e.name.begin(), e.name.end());
    out.insert(out.end(), packed.begin(), packed.end());

    Put32(central, kCentralSig);
    Put16(central, kVersion);
    Put16(central, kVersion);
    Put16(central, kUtf8Flag);
    Put16(central, method);
    Put16(central, 0);
    Put16(central, kDosDate);
    Put32(central, crc);
    Put32(central, static_cast<std::uint32_t>(packed.size()));
    Put32(central, static_cast<std::uint32_t>(e.content.size()));
    Put16(central, name_len);
    Put16(central, 0);  // extra
    Put16(central, 0);  // comment
    Put16(central, 0);  // disk
    Put16(central, 0);  // internal attributes
    Put32(central, 0);  // external attributes
    Put32(central, offset);
    central.insert(central.end(), e.name.begin(), e.name.end());
  }
  if (entries.size() > 0xfffe) throw Error(Errc::kUsage, "zip: too many entries");
  const auto cd_offset = static_cast<std::uint32_t>(out.size());
  out.insert(out.end(), central.begin(), central.end());
  Put32(out, kEndSig);
  Put16(out, 0);
  Put16(out, 0);
  Put16(out, static_cast<std::uint16_t>(entries.size()));
  Put16(out, static_cast<std::uint16_t>(entries.size()));
  Put32(out, static_cast<std::uint32_t>(central.size()));
  Put32(out, cd_offset);
  Put16(out, 0);
  return out;
}

std::vector<ZipEntry> ReadZip(ByteView in) {
  if (in.size() < 22) throw Error(Errc::kParse, "zip: too short");
  // The end record sits at the very end unless a comment follows it.
  std::size_t end = std::string::npos;
  const std::size_t lowest = in.size() > 22 + 0xffff ? in.size() - 22 - 0xffff : 0;
  for (std::size_t p = in.size() - 22 + 1; p-- > lowest;) {
    if (Get32(in, p) == kEndSig && p + 22 + Get16(in, p + 20) == in.size()) {
      end = p;
      break;
    }
  }
  if (end == std::string::npos) throw Error(Errc::kParse, "zip: no end of central directory");
  if (Get16(in, end + 4) != 0 || Get16(in, end + 6) != 0 ||
      Get16(in, end + 8) != Get16(in, end + 10)) {
    throw Error(Errc::kParse, "zip: multi-disk archives are not supported");
  }
  const std::size_t count = Get16(in, end + 10);
  const std::size_t cd_size = Get32(in, end + 12);
  std::size_t p = Get32(in, end + 16);
  if (p == 0xffffffffu || p + cd_size > end) throw Error(Errc::kParse, "zip: bad central directory");

  std::vector<ZipEntry> entries;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < count; ++i) {
    if (Get32(in, p) != kCentralSig) throw Error(Errc::kParse, "zip: bad central header");
    const std::uint16_t flags = Get16(in, p + 8);
    const std::uint16_t method = Get16(in, p + 10);
    const std::uint32_t crc = Get32(in, p + 16);
    const std::uint32_t csize = Get32(in, p + 20);
    const std::uint32_t usize = Get32(in, p + 24);
    const std::uint16_t name_len = Get16(in, p + 28);
    const std::uint16_t extra_len = Get16(in, p + 30);
    const std::uint16_t comment_len = Get16(in, p + 32);
    const std::uint32_t local = Get32(in, p + 42);
    if (p + 46 + name_len > in.size()) throw Error(Errc::kParse, "zip: truncated");
    std::string name(reinterpret_cast<const char*>(in.data() + p + 46), name_len);
    p += 46 + name_len + extra_len + comment_len;

    if (flags & 0x1) throw Error(Errc::kParse, "zip: encrypted entry '" + name + "'");
    if (csize == 0xffffffffu || usize == 0xffffffffu || local == 0xffffffffu) {
      throw Error(Errc::kParse, "zip: ZIP64 entry '" + name + "'");
    }
    if (method != 0 && method != 8) {
      throw Error(Errc::kParse, "zip: unsupported method for '" + name + "'");
    }
    if (!seen.insert(name).second) throw Error(Errc::kParse, "zip: duplicate entry '" + name + "'");
    if (Get32(in, local) != kLocalSig) throw Error(Errc::kParse, "zip: bad local header for '" + name + "'");
    const std::size_t data = local + 30 + Get16(in, local + 26) + Get16(in, local + 28);
    if (data + csize > in.size()) throw Error(Errc::kParse, "zip: truncated entry '" + name + "'");
    ByteView packed = in.subspan(data, csize);

    ZipEntry e{std::move(name), {}};
    if (method == 0) {
      if (csize != usize) throw Error(Errc::kParse, "zip: size mismatch for '" + e.name + "'");
      e.content.assign(packed.begin(), packed.end());
    } else {
      e.content = Inflate(packed, usize);
    }
    if (Crc(e.content) != crc) throw Error(Errc::kParse, "zip: CRC mismatch for '" + e.name + "'");
    entries.push_back(std::move(e));
  }
  return entries;
}

}  // namespace mops
