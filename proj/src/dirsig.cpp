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

#include "dtsig/dirsig.hpp"

#include <array>

#include "textio.hpp"

namespace dtsig {

SchnorrSignature schnorr_sign(const SystemParams& params, const KeyPair& signer,
                              const Bytes& m, RandomSource& rng) {
  const Bigint k = draw_nonzero_below(rng, params.q);
  const Residue commitment = mod_exp(params.g, k, params.p);
  const std::array<Residue, 1> elems{commitment};
  const Bigint r = oracle_hash(params.hash_oracle, elems, m, params.q);
  const Bigint s = sub_mod(k, signer.x * r, params.q);
  return SchnorrSignature{r, s};
}

bool schnorr_verify(const SystemParams& params, const Bigint& y_signer, const Bytes& m,
                    const SchnorrSignature& sig) {
  if (sig.r < 0 || sig.r >= params.q || sig.s < 0 || sig.s >= params.q) {
    return false;
  }
  // g^s y^r = g^{k - xr} g^{xr} = g^k
  const Bigint recovered = mul_mod(mod_exp(params.g, sig.s, params.p).value,
                                   mod_exp(y_signer, sig.r, params.p).value, params.p);
  const std::array<Residue, 1> elems{Residue(recovered, params.p)};
  try {
    return oracle_hash(params.hash_oracle, elems, m, params.q) == sig.r;
  } catch (const UnscriptedQuery&) {
    // A recomputation a scripted oracle has never seen cannot match.
    return false;
  }
}

DirectedSignature directed_sign(const SystemParams& params, const KeyPair& signer,
                                const Bigint& y_receiver, const Bytes& m,
                                RandomSource& rng) {
  const Bigint k1 = draw_nonzero_below(rng, params.q);
  const Bigint k2 = draw_nonzero_below(rng, params.q);
  const Residue W = mod_exp(params.g, sub_mod(k1, k2, params.q), params.p);
  const Residue Z = mod_exp(y_receiver, k1, params.p);
  const Bigint R = hash_to_zq(params.hash_oracle, Z, W, m, params.q).value;
  const Bigint S = sub_mod(k2, signer.x * R, params.q);
  return DirectedSignature{S, W.value, R, m};
}

VerifyResult directed_verify(const SystemParams& params, const Bigint& y_signer,
                             const KeyPair& receiver, const DirectedSignature& sig) {
  VerifyResult result;
  if (sig.S < 0 || sig.S >= params.q || sig.R < 0 || sig.R >= params.q || sig.W <= 0 ||
      sig.W >= params.p) {
    return result;
  }
  // mu = g^S y_A^R W = g^{k2 - xR + xR + k1 - k2} = g^{k1}
  Bigint mu = mul_mod(mod_exp(params.g, sig.S, params.p).value,
                      mod_exp(y_signer, sig.R, params.p).value, params.p);
  mu = mul_mod(mu, sig.W, params.p);
  const Residue z = mod_exp(mu, receiver.x, params.p);
  result.mu = mu;
  result.z = z.value;
  try {
    const Bigint expected =
        hash_to_zq(params.hash_oracle, z, Residue(sig.W, params.p), sig.m, params.q).value;
    result.accept = (expected == sig.R);
  } catch (const UnscriptedQuery&) {
    result.accept = false;
  }
  return result;
}

namespace {

void save_quad(const Bigint& S, const Bigint& W, const Bigint& R, const Bytes& m,
               const std::string& path) {
  auto out = textio::open_output(path);
  out << "S=" << S << "\n";
  out << "W=" << W << "\n";
  out << "R=" << R << "\n";
  out << "m=" << to_hex(m) << "\n";
}

}  // namespace

void save_directed_signature_file(const DirectedSignature& sig, const std::string& path) {
  save_quad(sig.S, sig.W, sig.R, sig.m, path);
}

DirectedSignature load_directed_signature_file(const std::string& path) {
  auto in = textio::open_input(path);
  DirectedSignature sig;
  bool have_s = false, have_w = false, have_r = false, have_m = false;
  for (const auto& line : textio::read_lines(in)) {
    auto [key, value] = textio::split_key_value(line);
    if (key == "S") {
      sig.S = from_decimal(value);
      have_s = true;
    } else if (key == "W") {
      sig.W = from_decimal(value);
      have_w = true;
    } else if (key == "R") {
      sig.R = from_decimal(value);
      have_r = true;
    } else if (key == "m") {
      sig.m = from_hex(value);
      have_m = true;
    } else {
      throw ParseError("signature: unknown key '" + key + "'");
    }
  }
  if (!have_s || !have_w || !have_r || !have_m) {
    throw ParseError("signature: S=, W=, R=, m= are all required");
  }
  return sig;
}

}  // namespace dtsig
