// Copyright 2026 The checkers-lambda Authors.
// SPDX-License-Identifier: Apache-2.0

// Seeded term generation, bounded probes of the interaction preorders, a
// confluence check, and named property suites.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "checkers/bohm.hpp"
#include "checkers/reduction.hpp"
#include "checkers/syntax.hpp"

namespace checkers {

enum class PlayerMix { AllBlack, AllWhite, Mixed };

struct GenConfig {
  std::uint64_t seed = 1;
  std::size_t max_size = 12;
  bool closed = false;
  PlayerMix mix = PlayerMix::Mixed;
};

// Same config, same stream. Sizes (node counts) are uniform in
// [1, max_size], or [2, max_size] for closed terms; open terms draw free
// variables from a, b, c.
class TermGen {
 public:
  explicit TermGen(const GenConfig& cfg);

  Term next_term();
  CTerm next_cterm();
  // Tags an ordinary term according to the configured mix.
  CTerm tag(const Term& t);
  std::mt19937_64& rng() { return rng_; }

 private:
  Term build(std::size_t size, std::vector<std::string>& scope);
  std::size_t below(std::size_t n) { return n ? rng_() % n : 0; }

  GenConfig cfg_;
  std::mt19937_64 rng_;
};

// A term whose Böhm tree is the approximant, with Ω at ⊥ and cut leaves.
Term approx_to_term(const BohmApprox& a);

// Joinability of one-step reduct pairs, by complete developments: for the
// redexes R1, R2 of ct, contracting R1 and then developing the residuals of
// R2 must meet the symmetric route.
struct ConfluenceReport {
  std::size_t pairs = 0;
  std::size_t failures = 0;
  std::size_t fuel_exceeded = 0;
  std::string first_failure;
};

ConfluenceReport check_local_confluence(const CTerm& ct, std::uint64_t fuel);

enum class ProbeMode { InterPreorder, InterImprovement };

std::string_view to_string(ProbeMode m);

struct ProbeReport {
  ProbeMode relation;
  std::size_t contexts_tried = 0;
  // Contexts where the left side converged but the right side ran out of
  // fuel without a detected loop: neither confirm nor refute.
  std::size_t inconclusive = 0;
  // Set on a counterexample: the ordinary context (run lifted white around
  // black terms) and the two outcomes.
  std::optional<Context> context;
  std::optional<Outcome> left, right;
  // "enumerated" or "constructed" (from the separation module).
  std::string source;

  bool counterexample() const { return context.has_value(); }
};

// Searches for a context C with C<t> converging in k interaction steps while
// C<u> diverges or converges in k' steps, k' != k (preorder) or k' > k
// (improvement). Contexts are enumerated by size up to budget, then the
// separation module's context is tried. A report without counterexample
// is a bounded claim only.
ProbeReport probe_preorder(const Term& t, const Term& u, std::size_t budget,
                           std::uint64_t fuel, ProbeMode mode);

// Re-runs a counterexample; true when it still refutes the relation.
bool replay_probe(const ProbeReport& r, const Term& t, const Term& u,
                  std::uint64_t fuel);

// All white-liftable ordinary contexts of size <= budget in enumeration
// order, where variables and binders count 1 and applications are free: by size, then constructor order, with fresh free variables before
// reused ones. Names in capture may be bound by the context; the fresh free
// variables avoid them.
std::vector<Context> enumerate_contexts(std::size_t budget,
                                        const std::set<std::string>& capture,
                                        std::size_t limit);

struct CaseFailure {
  std::uint64_t seed;
  std::string detail;
};

struct SuiteReport {
  std::string name;
  std::size_t cases = 0;    // cases that exercised the property
  std::size_t skipped = 0;  // e.g. terms without hnf within fuel
  std::vector<CaseFailure> failures;

  bool passed() const { return failures.empty(); }
};

std::vector<std::string> suite_names();

// Case i uses seed cfg.seed + i, so each failure replays alone through
// run_suite with that seed and count 1. Throws std::invalid_argument on an
// unknown name.
SuiteReport run_suite(std::string_view name, const GenConfig& cfg,
                      std::size_t count, std::uint64_t fuel);

}  // namespace checkers
