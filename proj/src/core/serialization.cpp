// Copyright 2026 The vsauction Authors
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

#include "core/serialization.hpp"

#include <bit>
#include <charconv>
#include <istream>

#include "core/domain.hpp"

namespace vsa {

std::string encode_double(double x) {
  const auto bits = std::bit_cast<std::uint64_t>(x);
  std::string out(16, '0');
  static constexpr char kHex[] = "0123456789abcdef";
  for (int i = 15; i >= 0; --i) {
    out[i] = kHex[(bits >> (4 * (15 - i))) & 0xF];
  }
  return out;
}

double decode_double(const std::string& token) {
  std::uint64_t bits = 0;
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, bits, 16);
  if (token.size() != 16 || ec != std::errc() || ptr != last) {
    throw ContractError("checkpoint: bad encoded double '" + token + "'");
  }
  return std::bit_cast<double>(bits);
}

double read_double(std::istream& in) {
  std::string token;
  if (!(in >> token)) throw ContractError("checkpoint: truncated data");
  return decode_double(token);
}

void expect_token(std::istream& in, const std::string& token) {
  std::string got;
  if (!(in >> got) || got != token) {
    throw ContractError("checkpoint: expected '" + token + "', found '" + got +
                        "'");
  }
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace vsa
