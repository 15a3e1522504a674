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
#ifndef MOPS_BYTES_H_
#define MOPS_BYTES_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mops {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

Bytes ToBytes(std::string_view text);
std::string ToString(ByteView bytes);
std::string HexEncode(ByteView bytes);
// Throws Error(kParse) on odd length or non-hex characters.
Bytes HexDecode(std::string_view hex);

// Writer for the canonical binary encodings. Every field() is preceded by its
// length as 8-byte big-endian; this is also the "||" operator of the hash
// inputs.
class Encoder {
 public:
  Encoder& U8(std::uint8_t value);
  Encoder& U64(std::uint64_t value);
  Encoder& I64(std::int64_t value) {
    return U64(static_cast<std::uint64_t>(value));
  }
  Encoder& Field(ByteView value);
  Encoder& Field(std::string_view value);
  Encoder& Field(const Bytes& value) { return Field(ByteView(value)); }
  Encoder& Field(const char* value) { return Field(std::string_view(value)); }
  // A field holding an 8-byte big-endian integer.
  Encoder& IntField(std::int64_t value);
  Encoder& Raw(ByteView value);

  const Bytes& bytes() const { return out_; }
  Bytes Take() { return std::move(out_); }

 private:
  Bytes out_;
};

// Strict reader: every read past the end, or any leftover bytes at Finish(),
// throws Error(kParse).
class Decoder {
 public:
  explicit Decoder(ByteView in) : in_(in) {}

  std::uint8_t U8();
  std::uint64_t U64();
  std::int64_t I64() { return static_cast<std::int64_t>(U64()); }
  Bytes Field();
  std::string Text();
  std::int64_t IntField();
  bool AtEnd() const { return pos_ == in_.size(); }
  void Finish() const;

 private:
  ByteView Take(std::size_t n);

  ByteView in_;
  std::size_t pos_ = 0;
};

// Length-prefixed concatenation of the operands.
Bytes Concat(std::initializer_list<ByteView> parts);

}  // namespace mops

#endif  // MOPS_BYTES_H_
