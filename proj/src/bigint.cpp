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

#include "dtsig/bigint.hpp"

#include <cctype>
#include <stdexcept>

#include "dtsig/errors.hpp"

namespace dtsig {

Bigint mod_floor(const Bigint& a, const Bigint& m) {
  if (m <= 0) {
    throw Error("mod_floor: modulus must be positive");
  }
  Bigint r;
  // fdiv: remainder carries the divisor's sign, so r in [0, m) for m > 0.
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

std::size_t byte_length(const Bigint& v) {
  if (v == 0) {
    return 1;
  }
  return (mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8;
}

Bytes to_fixed_width_be(const Bigint& v, std::size_t width) {
  if (v < 0) {
    throw ParseError("to_fixed_width_be: negative value");
  }
  if (byte_length(v) > width && v != 0) {
    throw ParseError("to_fixed_width_be: value does not fit in " + std::to_string(width) +
                     " bytes");
  }
  Bytes out(width, 0);
  std::size_t count = 0;
  // Most-significant byte first; left padding stays zero.
  mpz_export(out.data() + (width - byte_length(v)), &count, 1, 1, 1, 0, v.get_mpz_t());
  return out;
}

std::string to_hex(const Bytes& data) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(data.size() * 2);
  for (auto b : data) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0xf]);
  }
  return out;
}

namespace {

int hex_nibble(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

Bytes from_hex(const std::string& hex) {
  if (hex.size() % 2 != 0) {
    throw ParseError("from_hex: odd-length hex string");
  }
  Bytes out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    int hi = hex_nibble(hex[i]);
    int lo = hex_nibble(hex[i + 1]);
    if (hi < 0 || lo < 0) {
      throw ParseError("from_hex: invalid hex digit in '" + hex + "'");
    }
    out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
  }
  return out;
}

std::string to_decimal(const Bigint& v) { return v.get_str(10); }

Bigint from_decimal(const std::string& text) {
  if (text.empty()) {
    throw ParseError("from_decimal: empty string");
  }
  std::size_t start = (text[0] == '-') ? 1 : 0;
  if (start == text.size()) {
    throw ParseError("from_decimal: bare sign");
  }
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      throw ParseError("from_decimal: invalid decimal '" + text + "'");
    }
  }
  return Bigint(text, 10);
}

void wipe(Bigint& v) { v = 0; }

}  // namespace dtsig
