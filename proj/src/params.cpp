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

#include "dtsig/params.hpp"

#include <openssl/evp.h>

#include <array>
#include <ostream>
#include <sstream>

#include "textio.hpp"

namespace dtsig {

namespace {

constexpr int kMillerRabinRounds = 64;

Bigint pow2(unsigned bits) {
  Bigint r = 1;
  r <<= bits;
  return r;
}

}  // namespace

void HashOracle::script_entry(std::vector<Bigint> elements, Bytes m, Bigint out) {
  script[{std::move(elements), std::move(m)}] = std::move(out);
}

bool probable_prime(const Bigint& n) {
  if (n < 2) {
    return false;
  }
  return mpz_probab_prime_p(n.get_mpz_t(), kMillerRabinRounds) > 0;
}

SystemParams generate_params(int p_bits, int q_bits, RandomSource& rng,
                             unsigned attempt_budget) {
  if (q_bits < 4 || p_bits < 4 || q_bits >= p_bits) {
    throw Error("generate_params: need 4 <= q_bits < p_bits");
  }
  unsigned attempts = 0;
  auto charge = [&] {
    if (++attempts > attempt_budget) {
      throw GenerationTimeout("generate_params: no valid (p, q) within " +
                              std::to_string(attempt_budget) + " attempts");
    }
  };

  // q: prime of exactly q_bits.
  Bigint q;
  const Bigint q_floor = pow2(static_cast<unsigned>(q_bits - 1));
  while (true) {
    charge();
    q = q_floor + rng.draw_below(q_floor);
    mpz_setbit(q.get_mpz_t(), 0);
    if (probable_prime(q)) {
      break;
    }
  }

  // p = c*q + 1 with even c, retried until p has exactly p_bits and is prime.
  Bigint p;
  const unsigned k = static_cast<unsigned>(p_bits - q_bits);
  const Bigint c_half = pow2(k - 1);
  while (true) {
    charge();
    Bigint c = 2 * (1 + rng.draw_below(c_half));
    p = c * q + 1;
    if (mpz_sizeinbase(p.get_mpz_t(), 2) != static_cast<std::size_t>(p_bits)) {
      continue;
    }
    if (probable_prime(p)) {
      break;
    }
  }

  // g = k^((p-1)/q) mod p for random k, retried until g > 1.
  const Bigint cofactor = (p - 1) / q;
  Bigint g;
  while (true) {
    charge();
    Bigint base = 1 + rng.draw_below(p - 1);
    g = mod_exp(base, cofactor, p).value;
    if (g > 1) {
      break;
    }
  }

  return SystemParams{std::move(p), std::move(q), std::move(g), HashOracle::standard_oracle()};
}

ValidationReport validate_params(const SystemParams& params, bool allow_toy) {
  ValidationReport report;
  auto flag = [&](const std::string& msg) { report.violations.push_back(msg); };

  const bool p_ok = probable_prime(params.p);
  const bool q_ok = probable_prime(params.q);
  if (!p_ok) {
    flag("p is not prime");
  }
  if (!q_ok) {
    flag("q is not prime");
  }
  if (params.q >= 2 && params.p >= 2) {
    if (mod_floor(params.p - 1, params.q) != 0) {
      flag("q does not divide p - 1");
    }
  }
  if (!(params.g > 1 && params.g < params.p)) {
    flag("g must satisfy 1 < g < p");
  } else if (params.q >= 1) {
    if (mod_exp(params.g, params.q, params.p).value != 1) {
      flag("g^q != 1 (mod p): g is not of order q");
    }
  }
  if (!allow_toy) {
    if (mpz_sizeinbase(params.p.get_mpz_t(), 2) != kProductionPBits) {
      flag("p is outside the production range 2^511 < p < 2^512 (toy scale needs allow_toy)");
    }
    if (mpz_sizeinbase(params.q.get_mpz_t(), 2) != kProductionQBits) {
      flag("q is outside the production range 2^159 < q < 2^160 (toy scale needs allow_toy)");
    }
  }
  return report;
}

KeyPair keygen(const SystemParams& params, RandomSource& rng) {
  Bigint x = draw_nonzero_below(rng, params.q);
  Bigint y = mod_exp(params.g, x, params.p).value;
  return KeyPair{std::move(x), std::move(y)};
}

Bigint smallest_p_for_q(const Bigint& q) {
  if (q < 3 || !probable_prime(q)) {
    throw Error("smallest_p_for_q: q must be an odd prime");
  }
  for (Bigint c = 2; c < 100000000; c += 2) {
    Bigint p = c * q + 1;
    if (probable_prime(p)) {
      return p;
    }
  }
  throw GenerationTimeout("smallest_p_for_q: no prime c*q + 1 found");
}

namespace {

void append_length_prefixed(Bytes& buf, const Bytes& field) {
  const auto n = static_cast<std::uint32_t>(field.size());
  buf.push_back(static_cast<std::uint8_t>((n >> 24) & 0xff));
  buf.push_back(static_cast<std::uint8_t>((n >> 16) & 0xff));
  buf.push_back(static_cast<std::uint8_t>((n >> 8) & 0xff));
  buf.push_back(static_cast<std::uint8_t>(n & 0xff));
  buf.insert(buf.end(), field.begin(), field.end());
}

std::string describe_query(std::span<const Residue> elements, const Bytes& m) {
  std::string s = "(";
  for (const auto& e : elements) {
    s += e.value.get_str(10) + ", ";
  }
  s += "m=" + to_hex(m) + ")";
  return s;
}

}  // namespace

Bigint oracle_hash(const HashOracle& oracle, std::span<const Residue> elements,
                   const Bytes& m, const Bigint& q) {
  if (q < 2) {
    throw Error("oracle_hash: q must be >= 2");
  }
  if (oracle.kind == HashKind::scripted) {
    std::vector<Bigint> key;
    key.reserve(elements.size());
    for (const auto& e : elements) {
      key.push_back(e.value);
    }
    auto it = oracle.script.find({key, m});
    if (it == oracle.script.end()) {
      throw UnscriptedQuery("scripted hash oracle has no entry for " +
                            describe_query(elements, m));
    }
    return mod_floor(it->second, q);
  }

  Bytes buf;
  for (const auto& e : elements) {
    append_length_prefixed(buf, to_fixed_width_be(e.value, byte_length(e.modulus)));
  }
  append_length_prefixed(buf, m);

  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int digest_len = 0;
  if (EVP_Digest(buf.data(), buf.size(), digest.data(), &digest_len, EVP_sha256(), nullptr) !=
      1) {
    throw Error("oracle_hash: SHA-256 failed");
  }
  Bigint h;
  mpz_import(h.get_mpz_t(), digest_len, 1, 1, 1, 0, digest.data());
  return mod_floor(h, q);
}

Residue hash_to_zq(const HashOracle& oracle, const Residue& Z, const Residue& W,
                   const Bytes& m, const Bigint& q) {
  const std::array<Residue, 2> elements{Z, W};
  return Residue(oracle_hash(oracle, elements, m, q), q);
}

void save_params(const SystemParams& params, std::ostream& out) {
  out << "p=" << params.p << "\n";
  out << "q=" << params.q << "\n";
  out << "g=" << params.g << "\n";
  out << "hash=" << (params.hash_oracle.kind == HashKind::standard ? "standard" : "scripted")
      << "\n";
  for (const auto& [key, value] : params.hash_oracle.script) {
    const auto& [elements, m] = key;
    if (elements.size() != 2) {
      throw Error("save_params: only (Z, W, m) scripted entries are representable");
    }
    out << elements[0] << "," << elements[1] << "," << to_hex(m) << "->" << value << "\n";
  }
}

SystemParams load_params(std::istream& in) {
  SystemParams params;
  params.hash_oracle = HashOracle::standard_oracle();
  bool have_p = false, have_q = false, have_g = false, scripted = false;

  for (const auto& line : textio::read_lines(in)) {
    auto arrow = line.find("->");
    if (arrow != std::string::npos) {
      if (!scripted) {
        throw ParseError("params: table line before hash=scripted: '" + line + "'");
      }
      auto fields = textio::split(line.substr(0, arrow), ',');
      if (fields.size() != 3) {
        throw ParseError("params: table line needs Z,W,hex(m)->R: '" + line + "'");
      }
      params.hash_oracle.script_entry({from_decimal(fields[0]), from_decimal(fields[1])},
                                      from_hex(fields[2]), from_decimal(line.substr(arrow + 2)));
      continue;
    }
    auto [key, value] = textio::split_key_value(line);
    if (key == "p") {
      params.p = from_decimal(value);
      have_p = true;
    } else if (key == "q") {
      params.q = from_decimal(value);
      have_q = true;
    } else if (key == "g") {
      params.g = from_decimal(value);
      have_g = true;
    } else if (key == "hash") {
      if (value == "standard") {
        params.hash_oracle.kind = HashKind::standard;
      } else if (value == "scripted") {
        params.hash_oracle.kind = HashKind::scripted;
        scripted = true;
      } else {
        throw ParseError("params: unknown hash kind '" + value + "'");
      }
    } else {
      throw ParseError("params: unknown key '" + key + "'");
    }
  }
  if (!have_p || !have_q || !have_g) {
    throw ParseError("params: p=, q=, g= are all required");
  }
  return params;
}

void save_params_file(const SystemParams& params, const std::string& path) {
  auto out = textio::open_output(path);
  save_params(params, out);
}

SystemParams load_params_file(const std::string& path) {
  auto in = textio::open_input(path);
  return load_params(in);
}

void save_keypair_file(const KeyPair& kp, const std::string& path) {
  auto out = textio::open_output(path);
  out << "x=" << kp.x << "\n";
  out << "y=" << kp.y << "\n";
}

KeyPair load_keypair_file(const std::string& path) {
  auto in = textio::open_input(path);
  KeyPair kp;
  bool have_x = false, have_y = false;
  for (const auto& line : textio::read_lines(in)) {
    auto [key, value] = textio::split_key_value(line);
    if (key == "x") {
      kp.x = from_decimal(value);
      have_x = true;
    } else if (key == "y") {
      kp.y = from_decimal(value);
      have_y = true;
    } else {
      throw ParseError("keypair: unknown key '" + key + "'");
    }
  }
  if (!have_x || !have_y) {
    throw ParseError("keypair: x= and y= are required");
  }
  return kp;
}

}  // namespace dtsig
