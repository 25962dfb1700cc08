// Copyright 2026 The checkers-lambda Authors.
// SPDX-License-Identifier: Apache-2.0

// Tuplers and selectors, context construction that pulls a Böhm-tree
// difference to the root, and verification of separating contexts by
// running them.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "checkers/bohm.hpp"
#include "checkers/reduction.hpp"
#include "checkers/syntax.hpp"

namespace checkers {

// λx1..xn.λx.x x1..xn
Term tupler(std::size_t n);
// λx1..xn.xi; throws std::invalid_argument unless 1 <= i <= n.
Term selector(std::size_t n, std::size_t i);
// λx.x t1..tn with x fresh.
Term tuple(const std::vector<Term>& ts);

struct SeparationResult {
  Context context;  // ordinary; run lifted white around black terms
  std::size_t K = 0;
  Outcome left, right;
  // Interaction counts the construction predicts; set by the Böhm-out.
  std::optional<std::uint64_t> expected_left, expected_right;
};

enum class SeparationStatus {
  Ok,
  NotApplicable,
  FuelExceeded,
  VerificationFailed,
  Unsupported,
};

std::string_view to_string(SeparationStatus s);

struct Separation {
  SeparationStatus status = SeparationStatus::NotApplicable;
  std::optional<SeparationResult> result;
  std::string diagnostic;

  bool ok() const { return status == SeparationStatus::Ok; }
};

// Runs lift(White, C)[lift(Black, t)] and the same for u.
std::pair<Outcome, Outcome> verify_separation(const Context& c, const Term& t,
                                              const Term& u,
                                              std::uint64_t fuel);
std::pair<Trace, Trace> separation_transcript(const Context& c, const Term& t,
                                              const Term& u,
                                              std::uint64_t fuel);

// Largest spine arity met along the path on either side, plus the binder gap
// at the last node, plus one. Absent if a node on the path does not
// head-normalize within fuel.
std::optional<std::size_t> choose_K(const Term& t, const Term& u,
                                    const Path& path, std::uint64_t fuel);

// Separates terms whose trees differ only by η at the witness node, so that
// both sides converge with different interaction counts. K defaults to
// choose_K.
Separation interaction_bohm_out(const Term& t, const Term& u,
                                const DiffWitness& witness, std::uint64_t fuel,
                                std::optional<std::size_t> K = std::nullopt);

// Separates by termination: one side head-normalizes, the other does not.
// Handles divergence asymmetries and head mismatches reachable with one
// tupler layer; other cases come back Unsupported.
Separation classic_separate(const Term& t, const Term& u,
                            const DiffWitness& witness, std::uint64_t fuel);

// find_difference followed by whichever construction fits the witness.
Separation separate(const Term& t, const Term& u, const BohmOptions& opts);

}  // namespace checkers
