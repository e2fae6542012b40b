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

#include "dtsig/shamir.hpp"

#include <set>

#include "textio.hpp"

namespace dtsig {

namespace {

// Reduce mod q and enforce post-reduction distinctness/nonzeroness.
std::vector<Bigint> reduce_points(const std::vector<Bigint>& points, const Bigint& q) {
  std::vector<Bigint> reduced;
  reduced.reserve(points.size());
  std::set<Bigint> seen;
  for (const auto& u : points) {
    Bigint r = mod_floor(u, q);
    if (r == 0) {
      throw ZeroPoint("evaluation point " + u.get_str(10) + " is 0 mod q");
    }
    if (!seen.insert(r).second) {
      throw DuplicatePoint("evaluation point " + u.get_str(10) + " collides mod q");
    }
    reduced.push_back(std::move(r));
  }
  return reduced;
}

}  // namespace

Bigint eval_poly(const DealerPolynomial& poly, const Bigint& x, const Bigint& q) {
  Bigint acc = 0;
  for (auto it = poly.coefficients.rbegin(); it != poly.coefficients.rend(); ++it) {
    acc = mod_floor(acc * x + *it, q);
  }
  return acc;
}

DealResult deal(const SystemParams& params, const std::optional<Bigint>& secret,
                std::size_t t, const std::vector<MemberRef>& members, RandomSource& rng,
                RetainPolynomial retain) {
  if (t < 1) {
    throw Error("deal: threshold must be >= 1");
  }
  if (t > members.size()) {
    throw ThresholdExceedsGroup("deal: t = " + std::to_string(t) + " > n = " +
                                std::to_string(members.size()));
  }
  if (!probable_prime(params.q)) {
    throw CompositeModulus("deal: q must be prime for Lagrange interpolation to work");
  }
  std::vector<Bigint> points;
  points.reserve(members.size());
  for (const auto& m : members) {
    points.push_back(m.u);
  }
  reduce_points(points, params.q);

  DealerPolynomial poly;
  poly.threshold = t;
  poly.group_size = members.size();
  poly.coefficients.reserve(t);
  if (secret) {
    if (*secret < 1 || *secret >= params.q) {
      throw Error("deal: secret must lie in [1, q)");
    }
    poly.coefficients.push_back(*secret);
  } else {
    poly.coefficients.push_back(draw_nonzero_below(rng, params.q));
  }
  for (std::size_t i = 1; i < t; ++i) {
    poly.coefficients.push_back(rng.draw_below(params.q));
  }

  DealResult result;
  result.shares.reserve(members.size());
  for (const auto& m : members) {
    result.shares.push_back(Share{m.id, m.u, eval_poly(poly, mod_floor(m.u, params.q), params.q)});
  }
  result.group_public_key = mod_exp(params.g, poly.coefficients[0], params.p).value;

  if (retain == RetainPolynomial::yes) {
    result.polynomial = poly;
  } else {
    for (auto& c : poly.coefficients) {
      wipe(c);
    }
  }
  return result;
}

Bigint reconstruct_secret(const std::vector<Share>& shares, const SystemParams& params) {
  if (shares.empty()) {
    throw Error("reconstruct_secret: no shares");
  }
  std::vector<Bigint> points;
  points.reserve(shares.size());
  for (const auto& s : shares) {
    points.push_back(s.u);
  }
  Bigint secret = 0;
  for (std::size_t i = 0; i < shares.size(); ++i) {
    Bigint coeff = lagrange_coeff_at_zero(i, points, params.q).value;
    secret = add_mod(secret, mul_mod(shares[i].v, coeff, params.q), params.q);
  }
  return secret;
}

DealerPolynomial reconstruct_polynomial(const std::vector<Share>& shares, std::size_t t,
                                        const SystemParams& params) {
  if (t < 1 || shares.size() < t) {
    throw Error("reconstruct_polynomial: need at least t shares");
  }
  const Bigint& q = params.q;
  std::vector<Bigint> points;
  points.reserve(shares.size());
  for (const auto& s : shares) {
    points.push_back(s.u);
  }
  const std::vector<Bigint> reduced = reduce_points(points, q);

  // Monomial-basis Lagrange interpolation over the first t shares.
  DealerPolynomial poly;
  poly.threshold = t;
  poly.group_size = shares.size();
  poly.coefficients.assign(t, 0);
  for (std::size_t i = 0; i < t; ++i) {
    // numer(x) = prod_{j != i} (x - u_j), expanded low-to-high.
    std::vector<Bigint> numer{1};
    Bigint denom = 1;
    for (std::size_t j = 0; j < t; ++j) {
      if (j == i) {
        continue;
      }
      const Bigint neg_uj = sub_mod(0, reduced[j], q);
      std::vector<Bigint> next(numer.size() + 1, 0);
      for (std::size_t d = 0; d < numer.size(); ++d) {
        next[d] = add_mod(next[d], mul_mod(numer[d], neg_uj, q), q);
        next[d + 1] = add_mod(next[d + 1], numer[d], q);
      }
      numer = std::move(next);
      denom = mul_mod(denom, sub_mod(reduced[i], reduced[j], q), q);
    }
    const Bigint scale = mul_mod(shares[i].v, mod_inv(denom, q).value, q);
    for (std::size_t d = 0; d < numer.size(); ++d) {
      poly.coefficients[d] = add_mod(poly.coefficients[d], mul_mod(numer[d], scale, q), q);
    }
  }

  for (std::size_t i = 0; i < shares.size(); ++i) {
    if (eval_poly(poly, reduced[i], q) != mod_floor(shares[i].v, q)) {
      throw InconsistentShares("share '" + shares[i].member_id +
                               "' does not lie on the degree-" + std::to_string(t - 1) +
                               " fit");
    }
  }
  return poly;
}

ModifiedShare modified_share(const Share& share, const std::vector<Bigint>& active_points,
                             const SystemParams& params) {
  const Bigint own = mod_floor(share.u, params.q);
  std::size_t index = active_points.size();
  for (std::size_t i = 0; i < active_points.size(); ++i) {
    if (mod_floor(active_points[i], params.q) == own) {
      index = i;
      break;
    }
  }
  if (index == active_points.size()) {
    throw Error("modified_share: share point " + share.u.get_str(10) +
                " is not in the active subset");
  }
  const Bigint coeff = lagrange_coeff_at_zero(index, active_points, params.q).value;
  return ModifiedShare{share.member_id, mul_mod(share.v, coeff, params.q)};
}

void save_share_file(const Share& share, const std::string& path) {
  auto out = textio::open_output(path);
  out << "id=" << share.member_id << "\n";
  out << "u=" << share.u << "\n";
  out << "v=" << share.v << "\n";
}

Share load_share_file(const std::string& path) {
  auto in = textio::open_input(path);
  Share share;
  bool have_id = false, have_u = false, have_v = false;
  for (const auto& line : textio::read_lines(in)) {
    auto [key, value] = textio::split_key_value(line);
    if (key == "id") {
      share.member_id = value;
      have_id = true;
    } else if (key == "u") {
      share.u = from_decimal(value);
      have_u = true;
    } else if (key == "v") {
      share.v = from_decimal(value);
      have_v = true;
    } else {
      throw ParseError("share: unknown key '" + key + "'");
    }
  }
  if (!have_id || !have_u || !have_v) {
    throw ParseError("share: id=, u=, v= are all required");
  }
  return share;
}

void save_group_record_file(const GroupRecord& record, const std::string& path) {
  auto out = textio::open_output(path);
  out << "y_G=" << record.y_G << "\n";
  out << "t=" << record.t << "\n";
  out << "n=" << record.n << "\n";
  for (const auto& m : record.members) {
    out << "member=" << m.id << "," << m.u << "\n";
  }
}

GroupRecord load_group_record_file(const std::string& path) {
  auto in = textio::open_input(path);
  GroupRecord record;
  bool have_y = false;
  for (const auto& line : textio::read_lines(in)) {
    auto [key, value] = textio::split_key_value(line);
    if (key == "y_G") {
      record.y_G = from_decimal(value);
      have_y = true;
    } else if (key == "t") {
      record.t = std::stoul(value);
    } else if (key == "n") {
      record.n = std::stoul(value);
    } else if (key == "member") {
      auto parts = textio::split(value, ',');
      if (parts.size() != 2) {
        throw ParseError("group record: member needs id,u: '" + value + "'");
      }
      record.members.push_back(MemberRef{parts[0], from_decimal(parts[1])});
    } else {
      throw ParseError("group record: unknown key '" + key + "'");
    }
  }
  if (!have_y) {
    throw ParseError("group record: y_G= is required");
  }
  return record;
}

}  // namespace dtsig
