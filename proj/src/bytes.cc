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
#include "mops/bytes.h"

#include "mops/error.h"

namespace mops {

Bytes ToBytes(std::string_view text) { return Bytes(text.begin(), text.end()); }

std::string ToString(ByteView bytes) {
  return std::string(bytes.begin(), bytes.end());
}

std::string HexEncode(ByteView bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

namespace {

int HexValue(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

Bytes HexDecode(std::string_view hex) {
  if (hex.size() % 2 != 0) throw Error(Errc::kParse, "odd-length hex string");
  Bytes out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    int hi = HexValue(hex[2 * i]);
    int lo = HexValue(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw Error(Errc::kParse, "invalid hex digit");
    out[i] = static_cast<std::uint8_t>(hi << 4 | lo);
  }
  return out;
}

Encoder& Encoder::U8(std::uint8_t value) {
  out_.push_back(value);
  return *this;
}

Encoder& Encoder::U64(std::uint64_t value) {
  for (int shift = 56; shift >= 0; shift -= 8) {
    out_.push_back(static_cast<std::uint8_t>(value >> shift));
  }
  return *this;
}

Encoder& Encoder::Field(ByteView value) {
  U64(value.size());
  out_.insert(out_.end(), value.begin(), value.end());
  return *this;
}

Encoder& Encoder::Field(std::string_view value) {
  return Field(ByteView(reinterpret_cast<const std::uint8_t*>(value.data()),
                        value.size()));
}

Encoder& Encoder::IntField(std::int64_t value) {
  U64(8);
  return I64(value);
}

Encoder& Encoder::Raw(ByteView value) {
  out_.insert(out_.end(), value.begin(), value.end());
  return *this;
}

ByteView Decoder::Take(std::size_t n) {
  if (n > in_.size() - pos_) throw Error(Errc::kParse, "truncated input");
  ByteView out = in_.subspan(pos_, n);
  pos_ += n;
  return out;
}

std::uint8_t Decoder::U8() { return Take(1)[0]; }

std::uint64_t Decoder::U64() {
  ByteView b = Take(8);
  std::uint64_t v = 0;
  for (std::uint8_t x : b) v = v << 8 | x;
  return v;
}

Bytes Decoder::Field() {
  std::uint64_t n = U64();
  if (n > in_.size() - pos_) throw Error(Errc::kParse, "field overruns input");
  ByteView b = Take(static_cast<std::size_t>(n));
  return Bytes(b.begin(), b.end());
}

std::string Decoder::Text() { return ToString(Field()); }

std::int64_t Decoder::IntField() {
  if (U64() != 8) throw Error(Errc::kParse, "integer field length != 8");
  return I64();
}

void Decoder::Finish() const {
  if (!AtEnd()) throw Error(Errc::kParse, "trailing bytes");
}

Bytes Concat(std::initializer_list<ByteView> parts) {
  Encoder e;
  for (ByteView p : parts) e.Field(p);
  return e.Take();
}

}  // namespace mops
