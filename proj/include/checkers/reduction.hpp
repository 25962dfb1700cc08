// Copyright 2026 The checkers-lambda Authors.
// SPDX-License-Identifier: Apache-2.0

// Root beta steps, head reduction with interaction counting, and stepping at
// arbitrary positions.

#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "checkers/syntax.hpp"

namespace checkers {

enum class StepKind { Silent, Interaction };

std::string_view to_string(StepKind k);

// Kind of a redex whose abstraction has player lam and application player app.
constexpr StepKind step_kind(Player lam, Player app) {
  return lam == app ? StepKind::Silent : StepKind::Interaction;
}

struct Step {
  CTerm term;
  StepKind kind;
};

// A redex position: 0 enters an abstraction body or a function, 1 an argument.
using Position = std::vector<std::uint8_t>;

struct PositionedStep {
  CTerm term;
  StepKind kind;
  Position position;
};

std::optional<Step> root_step(const CTerm& ct);

bool is_hnf(const CTerm& ct);
bool is_hnf(const Term& t);

struct HeadSplit {
  CContext context;
  CTerm redex;
};

std::optional<HeadSplit> head_decompose(const CTerm& ct);
std::optional<Step> head_step(const CTerm& ct);
// Position of the head redex, if any.
std::optional<Position> head_position(const CTerm& ct);

inline constexpr std::uint64_t kDefaultFuel = 10000;

// kDefaultFuel unless the CHECKERS_FUEL environment variable holds a number.
std::uint64_t default_fuel();

enum class Status { Normal, FuelExhausted };

template <class T>
struct BasicOutcome {
  Status status;
  T term;               // the hnf, or the state reached when fuel ran out
  std::uint64_t k = 0;  // interaction steps
  std::uint64_t n = 0;  // all head steps
  // Set only with loop detection: the state repeated, so evaluation would
  // never reach an hnf.
  bool cycle = false;

  bool normal() const { return status == Status::Normal; }
};

using Outcome = BasicOutcome<CTerm>;
using OrdinaryOutcome = BasicOutcome<Term>;

struct EvalOptions {
  std::uint64_t fuel = kDefaultFuel;
  bool detect_loops = false;
};

Outcome evaluate_head(const CTerm& ct, std::uint64_t fuel);
Outcome evaluate_head(const CTerm& ct, const EvalOptions& opts);

struct Trace {
  Outcome outcome;
  // steps[i].term is the term after step i + 1.
  std::vector<Step> steps;
};

Trace evaluate_head_trace(const CTerm& ct, std::uint64_t fuel);

std::optional<Term> head_step_ordinary(const Term& t);
OrdinaryOutcome evaluate_head_ordinary(const Term& t, std::uint64_t fuel);
OrdinaryOutcome evaluate_head_ordinary(const Term& t, const EvalOptions& opts);

// Every one-step beta reduct, in pre-order of redex position.
std::vector<PositionedStep> any_beta_steps(const CTerm& ct);
std::optional<Step> step_at(const CTerm& ct, const Position& pos);

}  // namespace checkers
