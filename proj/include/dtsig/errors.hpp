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

#include <stdexcept>
#include <string>
#include <utility>

namespace dtsig {

// Root of every typed error raised by the library. Verification predicates
// never throw on a mismatch; they return false. Errors are for inputs that
// violate an operation's domain.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// gcd(a, m) != 1 while inverting a mod m. Also what a composite subgroup
// order q looks like from inside Lagrange interpolation.
struct NotInvertible : Error {
  using Error::Error;
};

// mod_exp with a negative exponent and a non-invertible base.
struct NegativeExponentNonInvertible : Error {
  using Error::Error;
};

// Two evaluation points collide mod q.
struct DuplicatePoint : Error {
  using Error::Error;
};

// An evaluation point is 0 mod q; f(0) is the secret, so such a point is
// never a valid share location.
struct ZeroPoint : Error {
  using Error::Error;
};

struct ThresholdExceedsGroup : Error {
  using Error::Error;
};

// More than t shares given and they do not lie on one degree-(t-1)
// polynomial: at least one share is corrupted.
struct InconsistentShares : Error {
  using Error::Error;
};

// q failed the primality test where a prime field is mandatory.
struct CompositeModulus : Error {
  using Error::Error;
};

struct GenerationTimeout : Error {
  using Error::Error;
};

// A scripted hash oracle was queried outside its table.
struct UnscriptedQuery : Error {
  using Error::Error;
};

// A scripted randomness tape ran out of pinned draws.
struct TapeExhausted : Error {
  using Error::Error;
};

struct DuplicateMember : Error {
  using Error::Error;
};

struct CountMismatch : Error {
  using Error::Error;
};

// A signer was asked to reuse round-1 nonces for a ceremony it already
// served.
struct NonceReuse : Error {
  using Error::Error;
};

// A protocol move arrived out of sequence.
struct ProtocolOrderViolation : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

// A module error that surfaced while running a ceremony, annotated with the
// offending party and phase.
struct CeremonyError : Error {
  std::string party;
  std::string phase;

  CeremonyError(std::string party_name, std::string phase_name, const std::string& message)
      : Error("[" + party_name + "/" + phase_name + "] " + message),
        party(std::move(party_name)),
        phase(std::move(phase_name)) {}
};

}  // namespace dtsig
