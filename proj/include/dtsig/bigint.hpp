//------------------------------------------------------------------------------
//
//   Copyright 2026 The dtsig authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace dtsig {

using Bigint = mpz_class;
using Bytes = std::vector<std::uint8_t>;

// Canonical representative of a mod m in [0, m) — mathematical (floored)
// modulo, so negative inputs land in range too.
Bigint mod_floor(const Bigint& a, const Bigint& m);

// Minimal number of bytes needed to hold v (>= 1, so zero encodes as 0x00).
std::size_t byte_length(const Bigint& v);

// Big-endian encoding left-padded with zeros to exactly `width` bytes.
// Throws ParseError if v is negative or does not fit.
Bytes to_fixed_width_be(const Bigint& v, std::size_t width);

std::string to_hex(const Bytes& data);
Bytes from_hex(const std::string& hex);

std::string to_decimal(const Bigint& v);
Bigint from_decimal(const std::string& text);

// Overwrites a secret with zero. GMP can leave stale limbs behind on
// reallocation; this clears the live value only.
void wipe(Bigint& v);

}  // namespace dtsig
