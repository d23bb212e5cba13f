// Copyright 2026 The ens-lab Authors
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

#ifndef ENSLAB_BYTES_H_
#define ENSLAB_BYTES_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace enslab {

using Bytes = std::vector<uint8_t>;
using ByteView = std::span<const uint8_t>;

std::string ToHex(ByteView data);
Bytes FromHex(const std::string& hex);

inline Bytes Concat(std::initializer_list<ByteView> parts) {
  Bytes out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

inline Bytes ToBytes(const std::string& s) {
  return Bytes(s.begin(), s.end());
}

// Big-endian packing helpers for fixed-width protocol fields.
void PutBe16(uint16_t v, uint8_t* out);
void PutBe32(uint32_t v, uint8_t* out);
uint16_t GetBe16(const uint8_t* in);
uint32_t GetBe32(const uint8_t* in);

}  // namespace enslab

#endif  // ENSLAB_BYTES_H_
